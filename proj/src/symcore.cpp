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

#include "specexp/symcore.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>
#include <vector>

#include "specexp/bell.hpp"

namespace specexp {

// ---------------------------------------------------------------------------
// ExactScalar

ExactScalar::ExactScalar(const mpq_class& r0, const mpq_class& r1) : r0_(r0), r1_(r1) {
    r0_.canonicalize();
    r1_.canonicalize();
}

ExactScalar ExactScalar::ratio(long p, long q) {
    if (q == 0) throw std::domain_error("ExactScalar: zero denominator");
    mpq_class r(p, q);
    return ExactScalar(r);
}

double ExactScalar::to_double() const {
    return r0_.get_d() + r1_.get_d() * std::sqrt(2.0);
}

ExactScalar ExactScalar::inverse() const {
    // (a + b r)^{-1} = (a - b r) / (a^2 - 2 b^2); the norm vanishes only at 0
    mpq_class n = r0_ * r0_ - 2 * r1_ * r1_;
    if (sgn(n) == 0) throw std::domain_error("ExactScalar: division by zero");
    return ExactScalar(r0_ / n, -r1_ / n);
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
    r0_ += o.r0_;
    r1_ += o.r1_;
    return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
    r0_ -= o.r0_;
    r1_ -= o.r1_;
    return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
    if (sgn(r1_) == 0 && sgn(o.r1_) == 0) {
        r0_ *= o.r0_;
        return *this;
    }
    mpq_class a = r0_ * o.r0_ + 2 * r1_ * o.r1_;
    mpq_class b = r0_ * o.r1_ + r1_ * o.r0_;
    r0_ = a;
    r1_ = b;
    return *this;
}

std::string ExactScalar::to_string() const {
    if (sgn(r1_) == 0) return r0_.get_str();
    std::string s1 = r1_.get_str() + "*sqrt(2)";
    if (sgn(r0_) == 0) return s1;
    return "(" + r0_.get_str() + (sgn(r1_) > 0 ? " + " : " - ") + mpq_class(abs(r1_)).get_str() +
           "*sqrt(2))";
}

// ---------------------------------------------------------------------------
// Monomials

namespace {

void merge_into(std::map<int, int>& dst, const std::map<int, int>& src) {
    for (auto [i, e] : src) {
        int v = (dst[i] += e);
        if (v == 0) dst.erase(i);
    }
}

}  // namespace

DerivMonomial DerivMonomial::dA(int order, int e) {
    if (order < 1) throw std::invalid_argument("dA: order must be >= 1");
    DerivMonomial m;
    if (e) m.aExp[order] = e;
    return m;
}

DerivMonomial DerivMonomial::dB(int order, int e) {
    if (order < 1) throw std::invalid_argument("dB: order must be >= 1");
    DerivMonomial m;
    if (e) m.bExp[order] = e;
    return m;
}

int DerivMonomial::weight() const {
    int w = 0;
    for (auto [i, e] : aExp) w += i * e;
    for (auto [i, e] : bExp) w += i * e;
    return w;
}

DerivMonomial DerivMonomial::operator*(const DerivMonomial& o) const {
    DerivMonomial r = *this;
    r.bHalf += o.bHalf;
    merge_into(r.aExp, o.aExp);
    merge_into(r.bExp, o.bExp);
    return r;
}

AMonomial AMonomial::operator*(const AMonomial& o) const {
    AMonomial r = *this;
    r.aPow += o.aPow;
    merge_into(r.derivExp, o.derivExp);
    return r;
}

// ---------------------------------------------------------------------------
// SymPoly

SymPoly::SymPoly(const ExactScalar& c) {
    add_term(DerivMonomial{}, c);
}

SymPoly::SymPoly(const DerivMonomial& m, const ExactScalar& c) {
    add_term(m, c);
}

void SymPoly::add_term(const DerivMonomial& m, const ExactScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SymPoly& SymPoly::operator+=(const SymPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

SymPoly operator*(const SymPoly& a, const SymPoly& b) {
    SymPoly r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

SymPoly SymPoly::scale(const ExactScalar& c) const {
    SymPoly r;
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
}

SymPoly SymPoly::canonical() const {
    SymPoly r;
    for (const auto& [m, c] : terms_) r.add_term(m, c);
    return r;
}

SymPoly add(const SymPoly& p, const SymPoly& q) { return p + q; }
SymPoly mul(const SymPoly& p, const SymPoly& q) { return p * q; }
SymPoly scale(const SymPoly& p, const ExactScalar& c) { return p.scale(c); }

SymPoly differentiate(const SymPoly& p) {
    SymPoly r;
    for (const auto& [m, c] : p.terms()) {
        if (m.bHalf != 0) {
            DerivMonomial d = m;
            d.bHalf -= 2;
            d.bExp[1] += 1;
            r.add_term(d, c * ExactScalar::ratio(m.bHalf, 2));
        }
        for (auto [i, e] : m.aExp) {
            DerivMonomial d = m;
            if (--d.aExp[i] == 0) d.aExp.erase(i);
            d.aExp[i + 1] += 1;
            r.add_term(d, c * ExactScalar(e));
        }
        for (auto [i, e] : m.bExp) {
            DerivMonomial d = m;
            if (--d.bExp[i] == 0) d.bExp.erase(i);
            d.bExp[i + 1] += 1;
            r.add_term(d, c * ExactScalar(e));
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// AFormPoly

AFormPoly::AFormPoly(const mpq_class& c) { add_term(AMonomial{}, c); }

AFormPoly::AFormPoly(const AMonomial& m, const mpq_class& c) { add_term(m, c); }

void AFormPoly::add_term(const AMonomial& m, const mpq_class& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

AFormPoly& AFormPoly::operator+=(const AFormPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

AFormPoly& AFormPoly::operator-=(const AFormPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

AFormPoly operator*(const AFormPoly& a, const AFormPoly& b) {
    AFormPoly r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

AFormPoly AFormPoly::scale(const mpq_class& c) const {
    AFormPoly r;
    if (sgn(c) == 0) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
}

AFormPoly AFormPoly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("AFormPoly::pow: negative exponent");
    AFormPoly r(mpq_class(1)), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

AFormPoly differentiate(const AFormPoly& p) {
    AFormPoly r;
    for (const auto& [m, c] : p.terms()) {
        if (m.aPow != 0) {
            AMonomial d = m;
            d.aPow -= 1;
            d.derivExp[1] += 1;
            r.add_term(d, c * m.aPow);
        }
        for (auto [i, e] : m.derivExp) {
            AMonomial d = m;
            if (--d.derivExp[i] == 0) d.derivExp.erase(i);
            d.derivExp[i + 1] += 1;
            r.add_term(d, c * e);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Substitution A = 1/a

namespace {

// d^k/dt^k a^{-s} for s = 1 (A) or s = 2 (B) via Faa di Bruno with
// f(y) = y^{-s}: f^{(m)}(a) = (-1)^m s(s+1)...(s+m-1) a^{-s-m}.
AFormPoly inverse_power_derivative(int s, int k) {
    std::vector<AFormPoly> f, g;
    mpq_class rising = 1;
    for (int m = 1; m <= k; ++m) {
        rising *= s + m - 1;
        f.push_back(AFormPoly::a(-s - m).scale(m % 2 ? mpq_class(-rising) : rising));
        g.push_back(AFormPoly::deriv(m));
    }
    return faa_di_bruno(k, f, g);
}

class AFormTable {
  public:
    const AFormPoly& get(int s, int k) {
        auto& v = s == 1 ? a_ : b_;
        while (static_cast<int>(v.size()) < k) v.push_back(inverse_power_derivative(s, v.size() + 1));
        return v[k - 1];
    }

  private:
    std::vector<AFormPoly> a_, b_;
};

}  // namespace

AFormPoly to_a_form(const SymPoly& p) {
    AFormTable table;
    AFormPoly r;
    for (const auto& [m, c] : p.terms()) {
        if (!c.is_rational())
            throw std::domain_error("to_a_form: coefficient has a sqrt(2) component");
        AFormPoly t = AFormPoly::a(-m.bHalf).scale(c.rat0());
        for (auto [i, e] : m.aExp) t = t * table.get(1, i).pow(e);
        for (auto [i, e] : m.bExp) t = t * table.get(2, i).pow(e);
        r += t;
    }
    return r;
}

double eval_numeric(const AFormPoly& p, const DerivCallback& derivs) {
    double a0 = derivs(0);
    double acc = 0.0;
    for (const auto& [m, c] : p.terms()) {
        if (m.aPow < 0 && a0 == 0.0) throw std::domain_error("eval_numeric: a(t) = 0");
        double v = c.get_d() * std::pow(a0, m.aPow);
        for (auto [i, e] : m.derivExp) v *= std::pow(derivs(i), e);
        acc += v;
    }
    return acc;
}

double eval_numeric(const SymPoly& p, const DerivCallback& derivs) {
    // A = 1/a and B = 1/a^2 are undefined at a zero of a, whatever the a-form
    if (derivs(0) == 0.0) throw std::domain_error("eval_numeric: a(t) = 0");
    return eval_numeric(to_a_form(p), derivs);
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string prime_name(char base, int order) {
    if (order <= 3) return std::string(1, base) + std::string(order, '\'');
    return std::string(1, base) + "(" + std::to_string(order) + ")";
}

std::string latex_deriv(char base, int order) {
    if (order <= 3) return std::string(1, base) + std::string(order, '\'') + "(t)";
    return std::string(1, base) + "^{(" + std::to_string(order) + ")}(t)";
}

std::string half_exponent(int h) {
    if (h % 2 == 0) return std::to_string(h / 2);
    return std::to_string(h) + "/2";
}

std::vector<std::string> text_factors(const DerivMonomial& m) {
    std::vector<std::string> f;
    for (auto [i, e] : m.aExp) f.push_back(prime_name('A', i) + (e > 1 ? "^" + std::to_string(e) : ""));
    for (auto [i, e] : m.bExp) f.push_back(prime_name('B', i) + (e > 1 ? "^" + std::to_string(e) : ""));
    if (m.bHalf == 2) f.push_back("B");
    else if (m.bHalf != 0) f.push_back("B^(" + half_exponent(m.bHalf) + ")");
    return f;
}

std::vector<std::string> text_factors(const AMonomial& m) {
    std::vector<std::string> f;
    if (m.aPow == 1) f.push_back("a");
    else if (m.aPow > 1) f.push_back("a^" + std::to_string(m.aPow));
    else if (m.aPow < 0) f.push_back("a^(" + std::to_string(m.aPow) + ")");
    for (auto [i, e] : m.derivExp) f.push_back(prime_name('a', i) + (e > 1 ? "^" + std::to_string(e) : ""));
    return f;
}

// Joins "coeff * f1 * f2" terms with explicit signs.
template <class Poly, class CoeffText>
std::string render_text(const Poly& p, CoeffText coeff) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        auto [negative, ctext, isOne] = coeff(c);
        auto f = text_factors(m);
        std::string body;
        if (f.empty()) body = ctext;
        else {
            if (!isOne) body = ctext + " * ";
            for (std::size_t i = 0; i < f.size(); ++i) body += (i ? " * " : "") + f[i];
        }
        if (first) out = (negative ? "-" : "") + body;
        else out += (negative ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

struct CoeffParts {
    bool negative;
    std::string text;
    bool isOne;
};

CoeffParts rational_parts(const mpq_class& q) {
    mpq_class a = abs(q);
    return {sgn(q) < 0, a.get_str(), a == 1};
}

CoeffParts scalar_parts(const ExactScalar& c) {
    if (c.is_rational()) return rational_parts(c.rat0());
    if (sgn(c.rat0()) == 0) {
        mpq_class a = abs(c.rat1());
        return {sgn(c.rat1()) < 0, (a == 1 ? std::string() : a.get_str() + "*") + "sqrt(2)", false};
    }
    return {false, c.to_string(), false};
}

std::string latex_coeff(const mpq_class& a, bool isConst) {
    if (a == 1 && !isConst) return "";
    if (a.get_den() == 1) return a.get_num().get_str();
    return "\\frac{" + a.get_num().get_str() + "}{" + a.get_den().get_str() + "}";
}

template <class Poly, class Body>
std::string render_latex(const Poly& p, Body body) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        auto [negative, b] = body(m, c);
        if (first) out = (negative ? "-" : "") + b;
        else out += (negative ? " - " : " + ") + b;
        first = false;
    }
    return out;
}

std::string latex_power(const std::string& base, const std::string& e) {
    return base + "^{" + e + "}";
}

nlohmann::json big_int(const mpz_class& z) {
    if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
    return z.get_str();
}

mpz_class parse_int(const nlohmann::json& j) {
    if (j.is_string()) return mpz_class(j.get<std::string>());
    if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<std::int64_t>()));
    throw std::invalid_argument("expected an integer or integer string");
}

mpq_class parse_rat(const nlohmann::json& p, const nlohmann::json& q) {
    mpq_class r(parse_int(p), parse_int(q));
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator");
    r.canonicalize();
    return r;
}

nlohmann::json exp_list(const std::map<int, int>& m) {
    auto a = nlohmann::json::array();
    for (auto [i, e] : m) a.push_back({i, e});
    return a;
}

std::map<int, int> parse_exp_list(const nlohmann::json& j) {
    std::map<int, int> m;
    for (const auto& pr : j) {
        int i = pr.at(0).get<int>(), e = pr.at(1).get<int>();
        if (i < 1 || e < 0) throw std::invalid_argument("bad derivative exponent entry");
        if (e) m[i] += e;
    }
    return m;
}

}  // namespace

std::string to_text(const SymPoly& p) {
    return render_text(p, [](const ExactScalar& c) {
        auto s = scalar_parts(c);
        return std::tuple{s.negative, s.text, s.isOne};
    });
}

std::string to_text(const AFormPoly& p) {
    return render_text(p, [](const mpq_class& c) {
        auto s = rational_parts(c);
        return std::tuple{s.negative, s.text, s.isOne};
    });
}

std::string to_latex(const SymPoly& p) {
    return render_latex(p, [](const DerivMonomial& m, const ExactScalar& c) {
        std::vector<std::string> f;
        for (auto [i, e] : m.aExp) f.push_back(e > 1 ? latex_power(latex_deriv('A', i), std::to_string(e)) : latex_deriv('A', i));
        for (auto [i, e] : m.bExp) f.push_back(e > 1 ? latex_power(latex_deriv('B', i), std::to_string(e)) : latex_deriv('B', i));
        if (m.bHalf == 2) f.push_back("B(t)");
        else if (m.bHalf != 0) f.push_back(latex_power("B(t)", half_exponent(m.bHalf)));
        bool negative;
        std::string cs;
        if (c.is_rational()) {
            negative = sgn(c.rat0()) < 0;
            cs = latex_coeff(abs(c.rat0()), f.empty());
        } else {
            negative = false;
            cs = "\\left(" + latex_coeff(c.rat0(), true) + " + " + latex_coeff(c.rat1(), true) + "\\sqrt{2}\\right)";
        }
        std::string b = cs;
        for (auto& s : f) b += (b.empty() ? "" : " ") + s;
        return std::pair{negative, b};
    });
}

std::string to_latex(const AFormPoly& p) {
    return render_latex(p, [](const AMonomial& m, const mpq_class& c) {
        std::vector<std::string> f;
        if (m.aPow == 1) f.push_back("a(t)");
        else if (m.aPow != 0) f.push_back(latex_power("a(t)", std::to_string(m.aPow)));
        for (auto [i, e] : m.derivExp) f.push_back(e > 1 ? latex_power(latex_deriv('a', i), std::to_string(e)) : latex_deriv('a', i));
        std::string b = latex_coeff(abs(c), f.empty());
        for (auto& s : f) b += (b.empty() ? "" : " ") + s;
        return std::pair{sgn(c) < 0, b};
    });
}

nlohmann::json to_json(const SymPoly& p) {
    auto terms = nlohmann::json::array();
    for (const auto& [m, c] : p.terms()) {
        nlohmann::json coeff = {{"p", big_int(c.rat0().get_num())}, {"q", big_int(c.rat0().get_den())},
                                {"p2", big_int(c.rat1().get_num())}, {"q2", big_int(c.rat1().get_den())}};
        terms.push_back({{"coeff", coeff}, {"bHalf", m.bHalf}, {"a", exp_list(m.aExp)}, {"b", exp_list(m.bExp)}});
    }
    return {{"terms", terms}};
}

nlohmann::json to_json(const AFormPoly& p) {
    auto terms = nlohmann::json::array();
    for (const auto& [m, c] : p.terms()) {
        nlohmann::json coeff = {{"p", big_int(c.get_num())}, {"q", big_int(c.get_den())}};
        terms.push_back({{"coeff", coeff}, {"aPow", m.aPow}, {"d", exp_list(m.derivExp)}});
    }
    return {{"terms", terms}};
}

SymPoly sympoly_from_json(const nlohmann::json& j) {
    SymPoly p;
    for (const auto& t : j.at("terms")) {
        const auto& c = t.at("coeff");
        mpq_class r0 = parse_rat(c.at("p"), c.at("q"));
        mpq_class r1 = c.contains("p2") ? parse_rat(c.at("p2"), c.at("q2")) : mpq_class(0);
        DerivMonomial m{t.at("bHalf").get<int>(), parse_exp_list(t.at("a")), parse_exp_list(t.at("b"))};
        p.add_term(m, ExactScalar(r0, r1));
    }
    return p;
}

AFormPoly aform_from_json(const nlohmann::json& j) {
    AFormPoly p;
    for (const auto& t : j.at("terms")) {
        const auto& c = t.at("coeff");
        AMonomial m{t.at("aPow").get<int>(), parse_exp_list(t.at("d"))};
        p.add_term(m, parse_rat(c.at("p"), c.at("q")));
    }
    return p;
}

}  // namespace specexp
