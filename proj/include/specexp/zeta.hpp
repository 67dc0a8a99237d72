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

// Riemann zeta, complex log-gamma, fractal string zeta functions and the
// Dirac zeta function of the round 4-sphere.

#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "specexp/exact_token.hpp"

namespace specexp {

using cplx = std::complex<double>;

// Thrown when an evaluation point is a pole (or a zero of a denominator).
struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

mpq_class bernoulli(int n);  // B_1 = -1/2

cplx log_gamma(cplx z);  // principal branch, continuous off the negative real axis
cplx complex_gamma(cplx z);

cplx riemann_zeta(cplx s);
cplx riemann_zeta_derivative(cplx s);
// Rational at n <= 0, rational * pi^n at even n > 0, a named token at odd n >= 3.
ExactToken zeta_exact(int n);

// Hardy's Z(t), real for real t.
double hardy_z(double t);
// First 25 ordinates gamma_k, loaded from the data directory and checked by
// a sign change of Z around each value on first use.
const std::vector<double>& zeta_zero_ordinates();
// SPECEXP_DATA_DIR from the environment, else the build-time data path.
std::string data_directory();

struct PoleTerm {
    cplx sigma;
    cplx residue;
};

struct Radius {
    double value = 1.0;
    std::optional<mpq_class> exact;
    long multiplicity = 1;
};

enum class StringVariant { Ford, Truncated, Analytic };

struct FractalString {
    StringVariant variant = StringVariant::Truncated;
    std::vector<Radius> radii;
    std::function<cplx(cplx)> evaluator;  // Analytic only
    std::vector<PoleTerm> poles;          // Analytic only

    static FractalString ford();
    static FractalString truncated(std::vector<Radius> radii);
    static FractalString analytic(std::function<cplx(cplx)> eval, std::vector<PoleTerm> poles);
    // Radii 1/(2 n^2) with multiplicity phi(n), n <= N.
    static FractalString ford_prefix(long N, bool exact = false);

    // {variant, radii: [[r, mult]...], poles: [[re, im, resRe, resIm]...]};
    // r is a number or a rational string such as "1/2".
    static FractalString from_json_text(const std::string& text);
    static FractalString load(const std::string& path);

    bool exact_radii() const;
};

cplx ford_zeta(cplx s);
// 2^{-n} zeta(2n-1)/zeta(2n) for n = 0 and n >= 2.
ExactToken ford_zeta_exact(int n);

cplx string_zeta(const FractalString& L, cplx s);
// Exact value at an integer point for a truncated string with rational radii,
// or for Ford where ford_zeta_exact applies.
std::optional<ExactToken> string_zeta_exact(const FractalString& L, int s);

struct Strip {
    double reMin = -std::numeric_limits<double>::infinity();
    double reMax = std::numeric_limits<double>::infinity();
    double imMin = -std::numeric_limits<double>::infinity();
    double imMax = std::numeric_limits<double>::infinity();
    bool contains(cplx s) const;
};

// Ford: s = 1, s = -k (k >= 1, at most maxTrivial of them) and rho/2 for
// the tabulated zeros and their conjugates.  Sorted by (Re, Im).
std::vector<PoleTerm> string_poles(const FractalString& L, const Strip& strip, int maxTrivial = 40);

// (4/3) r^s (zeta(s-3) - zeta(s-1))
cplx dirac_zeta_s4(cplx s, double r = 1.0);
// r = 1, any integer s other than the poles 2 and 4
ExactToken dirac_zeta_s4_exact(int s);

std::vector<long> euler_phi_table(long N);

}  // namespace specexp
