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

// Partial Bell polynomials B_{n,k}(x_1, ..., x_{n-k+1}) and the Faa di Bruno
// formula over any commutative ring carrier.

#pragma once

#include <concepts>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace specexp {

template <class T>
concept CommutativeRing = requires(T a, const T& b) {
    { a + b } -> std::convertible_to<T>;
    { a * b } -> std::convertible_to<T>;
};

// zero/one/embedding of the integers.  The default covers every carrier
// that is constructible from mpq_class.
template <class T>
struct ring_traits {
    static T zero() { return T(mpq_class(0)); }
    static T one() { return T(mpq_class(1)); }
    static T from_integer(const mpz_class& z) { return T(mpq_class(z)); }
};

template <>
struct ring_traits<double> {
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double from_integer(const mpz_class& z) { return z.get_d(); }
};

// One lambda of the sum: lambda[i-1] copies of the part i, with the
// integer coefficient n! / prod(lambda_i! (i!)^lambda_i).
struct BellTerm {
    std::vector<int> lambda;
    mpz_class coeff;
};

namespace detail {

inline void bell_descend(int part, int remN, int remK, std::vector<int>& lam,
                         std::vector<std::vector<int>>& out) {
    if (remN == 0 && remK == 0) {
        out.push_back(lam);
        return;
    }
    if (part == 0 || remK == 0 || remN == 0) return;
    // parts are chosen largest first; remaining parts are all <= part
    for (int c = std::min(remK, remN / part); c >= 0; --c) {
        int n2 = remN - c * part, k2 = remK - c;
        // each remaining part is >= 1 and <= part - 1
        if (n2 < k2 || (part > 1 && n2 > k2 * (part - 1))) continue;
        if (part == 1 && (n2 != 0 || k2 != 0)) continue;
        lam[part - 1] = c;
        bell_descend(part - 1, n2, k2, lam, out);
        lam[part - 1] = 0;
    }
}

inline mpz_class factorial(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

}  // namespace detail

// Memoised lambda enumeration for B_{n,k}.  Safe under concurrent use.
inline std::shared_ptr<const std::vector<BellTerm>> bell_terms(int n, int k) {
    if (n < 0 || k < 0) throw std::invalid_argument("bell_terms: negative index");
    static std::shared_mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const std::vector<BellTerm>>> memo;
    {
        std::shared_lock lock(mu);
        auto it = memo.find({n, k});
        if (it != memo.end()) return it->second;
    }
    auto terms = std::make_shared<std::vector<BellTerm>>();
    if (n == 0 && k == 0) {
        terms->push_back({{}, 1});
    } else if (k > 0 && n >= k) {
        int width = n - k + 1;
        std::vector<int> lam(width, 0);
        std::vector<std::vector<int>> lams;
        detail::bell_descend(width, n, k, lam, lams);
        mpz_class nf = detail::factorial(n);
        for (auto& l : lams) {
            mpz_class den = 1;
            for (int i = 0; i < width; ++i) {
                if (l[i] == 0) continue;
                mpz_class fi = detail::factorial(i + 1), p;
                mpz_pow_ui(p.get_mpz_t(), fi.get_mpz_t(), l[i]);
                den *= detail::factorial(l[i]) * p;
            }
            terms->push_back({std::move(l), nf / den});
        }
    }
    std::unique_lock lock(mu);
    auto [it, inserted] = memo.emplace(std::make_pair(n, k), std::move(terms));
    return it->second;
}

// B_{n,k}(xs[0], xs[1], ...) with xs[i] standing for x_{i+1}.
template <CommutativeRing T>
T bell_polynomial(int n, int k, const std::vector<T>& xs) {
    using R = ring_traits<T>;
    auto terms = bell_terms(n, k);
    if (terms->empty()) return R::zero();
    int width = n - k + 1;
    if (n > 0 && static_cast<int>(xs.size()) < width)
        throw std::invalid_argument("bell_polynomial: too few arguments");
    std::vector<std::vector<T>> pw(std::max(width, 0));
    auto power = [&](int i, int e) -> const T& {
        auto& v = pw[i];
        if (v.empty()) v.push_back(R::one());
        while (static_cast<int>(v.size()) <= e) v.push_back(v.back() * xs[i]);
        return v[e];
    };
    T acc = R::zero();
    for (const auto& t : *terms) {
        T term = R::from_integer(t.coeff);
        for (int i = 0; i < static_cast<int>(t.lambda.size()); ++i)
            if (t.lambda[i]) term = term * power(i, t.lambda[i]);
        acc = acc + term;
    }
    return acc;
}

// d^n/dt^n f(g(t)) = sum_m f^{(m)}(g) B_{n,m}(g', ..., g^{(n-m+1)}).
// fDerivs[m-1] = f^{(m)}(g(t)), gDerivs[i-1] = g^{(i)}(t).
template <CommutativeRing T>
T faa_di_bruno(int n, const std::vector<T>& fDerivs, const std::vector<T>& gDerivs) {
    if (n < 1) throw std::invalid_argument("faa_di_bruno: n must be >= 1");
    if (static_cast<int>(fDerivs.size()) < n || static_cast<int>(gDerivs.size()) < n)
        throw std::invalid_argument("faa_di_bruno: need n derivatives");
    T acc = ring_traits<T>::zero();
    for (int m = 1; m <= n; ++m) acc = acc + fDerivs[m - 1] * bell_polynomial(n, m, gDerivs);
    return acc;
}

}  // namespace specexp
