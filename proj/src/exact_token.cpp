// Copyright 2026 The specexp Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "specexp/exact_token.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "specexp/zeta.hpp"

namespace specexp {

namespace {

void add_into(ExactToken::Terms& t, const TokenMonomial& m, const mpq_class& c) {
    if (c == 0) return;
    auto [it, fresh] = t.emplace(m, c);
    if (fresh) return;
    it->second += c;
    if (it->second == 0) t.erase(it);
}

TokenMonomial mul(const TokenMonomial& a, const TokenMonomial& b, int sign) {
    TokenMonomial r = a;
    r.piPow += sign * b.piPow;
    for (auto [n, e] : b.zetaPow) {
        int& x = r.zetaPow[n];
        x += sign * e;
        if (x == 0) r.zetaPow.erase(n);
    }
    return r;
}

std::string power(const std::string& base, int e) {
    return e == 1 ? base : base + "^" + std::to_string(e);
}

}  // namespace

ExactToken::ExactToken(const mpq_class& q) {
    if (q != 0) terms_.emplace(TokenMonomial{}, q);
}

ExactToken ExactToken::pi_power(int k) {
    ExactToken t;
    t.terms_.emplace(TokenMonomial{k, {}}, mpq_class(1));
    return t;
}

ExactToken ExactToken::zeta_odd(int n) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("zeta_odd: n must be odd and >= 3");
    ExactToken t;
    t.terms_.emplace(TokenMonomial{0, {{n, 1}}}, mpq_class(1));
    return t;
}

bool ExactToken::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == TokenMonomial{});
}

mpq_class ExactToken::rational() const {
    if (!is_rational()) throw std::domain_error("ExactToken: not rational: " + to_string());
    return terms_.empty() ? mpq_class(0) : terms_.begin()->second;
}

ExactToken ExactToken::operator+(const ExactToken& o) const {
    ExactToken r = *this;
    for (const auto& [m, c] : o.terms_) add_into(r.terms_, m, c);
    return r;
}

ExactToken ExactToken::operator-() const {
    ExactToken r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

ExactToken ExactToken::operator-(const ExactToken& o) const { return *this + (-o); }

ExactToken ExactToken::operator*(const ExactToken& o) const {
    ExactToken r;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) add_into(r.terms_, mul(m1, m2, 1), c1 * c2);
    return r;
}

ExactToken ExactToken::operator/(const ExactToken& o) const {
    if (o.terms_.size() != 1) throw std::domain_error("ExactToken: divisor must be a single monomial");
    const auto& [dm, dc] = *o.terms_.begin();
    ExactToken r;
    for (const auto& [m, c] : terms_) add_into(r.terms_, mul(m, dm, -1), c / dc);
    return r;
}

double ExactToken::to_double() const {
    double s = 0.0;
    for (const auto& [m, c] : terms_) {
        double v = c.get_d() * std::pow(std::numbers::pi, m.piPow);
        for (auto [n, e] : m.zetaPow) v *= std::pow(riemann_zeta(cplx(n, 0)).real(), e);
        s += v;
    }
    return s;
}

std::string ExactToken::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        mpz_class num = abs(c.get_num()), den = c.get_den();
        std::vector<std::string> top, bottom;
        if (num != 1) top.push_back(num.get_str());
        if (den != 1) bottom.push_back(den.get_str());
        for (auto [n, e] : m.zetaPow)
            (e > 0 ? top : bottom).push_back(power("zeta(" + std::to_string(n) + ")", std::abs(e)));
        if (m.piPow) (m.piPow > 0 ? top : bottom).push_back(power("pi", std::abs(m.piPow)));
        std::string t;
        for (std::size_t i = 0; i < top.size(); ++i) t += (i ? "*" : "") + top[i];
        if (t.empty()) t = "1";
        if (!bottom.empty()) {
            std::string b;
            for (std::size_t i = 0; i < bottom.size(); ++i) b += (i ? "*" : "") + bottom[i];
            t += bottom.size() > 1 ? "/(" + b + ")" : "/" + b;
        }
        if (first) out += c < 0 ? "-" + t : t;
        else out += (c < 0 ? " - " : " + ") + t;
        first = false;
    }
    return out;
}

}  // namespace specexp
