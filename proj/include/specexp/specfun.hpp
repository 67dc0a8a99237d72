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

// Dawson and Kummer functions, and numerical checks of the closed forms for
// bridge Gaussians over ordered simplices and for the x-Mellin transforms of
// (x^2 - 1/4) exp(-U x^2 -+ V x).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specexp/zeta.hpp"

namespace specexp {

// F(x) = exp(-x^2) int_0^x exp(y^2) dy
double dawson(double x);

// Confluent hypergeometric 1F1(a; b; x).  Throws PoleError when b is a
// non-positive integer.  Sums in extended precision when the series cancels.
cplx kummer_1f1(cplx a, cplx b, cplx x);

struct QuadratureSpec {
    int dimension = 0;
    double tolerance = 1e-9;  // pass threshold
    int maxSubdivisions = 15;
    std::uint64_t seed = 0;           // random shift of the n = 4 lattice rule
    std::int64_t qmcPoints = 10'000'000;

    void validate() const;
};

struct Verification {
    cplx lhs;
    cplx rhs;
    double error = 0.0;  // |lhs - rhs|, relative to max(1, |rhs|)
    bool pass = false;
};

// Integral over 0 <= v_1 <= ... <= v_n <= 1 of exp(-1/2 sum c_jm u_j u_m)
// with c_jm = v_min(j,m) (1 - v_max(j,m)).
double bridge_simplex_gaussian(const std::vector<double>& u, const QuadratureSpec& q);
// Dawson combination; n = 1, 2 coded directly, n = 3, 4 from the term lists
// in the data directory.
double dawson_simplex_closed_form(const std::vector<double>& u);
Verification verify_dawson_simplex(int n, const std::vector<double>& u, const QuadratureSpec& q);

// int_R (x^2 - 1/4) exp(-x^2 U - x V) dx against its Gaussian closed form.
Verification verify_gaussian_multiplicity(double U, double V, const QuadratureSpec& q);

// H_b(z) = U^{-z/2} Gamma(z/2) 1F1(z/2; b; V^2/4U); H(z) is b = 1/2.
cplx kummer_h(cplx z, double U, double V, double b = 0.5);
// Mellin transform at z of (x^2 - 1/4) exp(-x^2 U - s x V), s = +1 or -1.
cplx mellin_gaussian(cplx z, double U, double V, int s);
// Sum of both signs: -1/4 U^{-1-z/2} Gamma(z/2) (U 1F1(z/2;1/2;w) - 2z 1F1(1+z/2;1/2;w)).
cplx mellin_gaussian_pair(cplx z, double U, double V);
// -1/4 a^z H(z) + a^{z+2} H(z+2): the pair after U -> U/a^2, V -> V/a.
cplx mellin_gaussian_pair_scaled(cplx z, double U, double V, double a);

Verification verify_mellin_z1(double U, double V, double tol = 1e-9);

struct MellinPmReport {
    Verification minus;    // exp(-x V)
    Verification plus;     // exp(+x V)
    Verification pair;     // quadrature sum vs the Kummer combination
    Verification scaling;  // scaled combination vs direct substitution
    bool pass = false;
};
MellinPmReport verify_mellin_pm(cplx z, double U, double V, const QuadratureSpec& q, double a = 0.5);

}  // namespace specexp
