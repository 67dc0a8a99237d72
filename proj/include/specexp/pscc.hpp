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

// Expansions for packings of rescaled round-scaling metrics: heat trace and
// spectral action as bulk terms weighted by the string zeta function plus
// one term per string pole, the rescaling of the U, V symbols, and the
// Mellin-product combination of a singular expansion with a string.
//
// Unit 4-sphere convention: eigenvalues +-k of multiplicity (2/3)(k^3 - k),
// so Tr exp(-tau^2 D^2) = sum_k (4/3)(k^3 - k) exp(-tau^2 k^2) and the Dirac
// zeta function is (4/3)(zeta(s-3) - zeta(s-1)).

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "specexp/exact_token.hpp"
#include "specexp/expansion.hpp"
#include "specexp/zeta.hpp"

namespace specexp {

// x^a cos(b ln x + phase) * amplitude, for a merged conjugate pair.
struct LogPeriodic {
    double amplitude = 0.0;
    double a = 0.0;
    double b = 0.0;
    double phase = 0.0;
};

enum class TermKind { Bulk, Pole };

struct ExpansionTerm {
    TermKind kind = TermKind::Bulk;
    int M = 0;          // bulk index
    cplx sigma = 0.0;   // pole location
    cplx exponent = 0.0;
    cplx coeff = 0.0;
    std::optional<ExactToken> exact;
    // Test-function factor of coeff that exact leaves out, e.g. "f_4".
    std::string moment;
    // Set when this term stands for itself plus its complex conjugate.
    std::optional<LogPeriodic> logPeriodic;

    // coeff * x^exponent, doubled to its real part for a merged pair
    cplx evaluate(double x) const;
};

double evaluate_expansion(const std::vector<ExpansionTerm>& terms, double x);

// Keeps the upper member of each conjugate pair with its log-periodic form.
std::vector<ExpansionTerm> merge_conjugate_pairs(const std::vector<ExpansionTerm>& terms);

// ---------------------------------------------------------------------------
// Test functions

struct TestFunctionMoments {
    std::string name;
    double f0 = 1.0;
    std::function<cplx(cplx)> mellin;           // f_alpha = int_0^inf f(x) x^{alpha-1} dx
    std::function<double(int)> evenDerivative;  // j -> f^{(2j)}(0)

    static TestFunctionMoments heat();     // exp(-x^2)
    static TestFunctionMoments quartic();  // exp(-x^4)

    // Weight turning the heat coefficient of tau^{2M-4} into the coefficient
    // of Lambda^{4-2M}: 2 f_4, 2 f_2, f(0), then (-1)^j j!/(2j)! f^{(2j)}(0).
    double bulk_weight(int M) const;
    // 2 f_sigma / Gamma(sigma/2), the weight of a heat pole term tau^{-sigma}
    cplx pole_weight(cplx sigma) const;
};

// ---------------------------------------------------------------------------
// Geometry

// Round 4-sphere of radius r with a(t) = r sin(t/r) on [0, pi r]: the
// integral of a2M(M) over t.  Exact; throws std::logic_error if the
// reduction to odd powers of sin fails.
mpq_class sphere_heat_coefficient(int M, const mpq_class& r = 1);
// sum_k (4/3)(k^3 - k) exp(-tau^2 k^2 / r^2)
double sphere_heat_trace(double tau, double r = 1.0);
// Gamma(s/2)/2 * zeta_D(s): Mellin transform of the unit sphere heat trace.
cplx sphere_heat_mellin(cplx s);

struct RWGeometry {
    ScaleFactor a;
    double t = 0.0;
    // Full heat trace tau -> Tr exp(-tau^2 D^2) and its small-tau
    // coefficients; needed only for pole terms.
    std::function<double(double)> heatTrace;
    std::vector<HeatCoefficient> traceCoefficients;
    double cut = 0.1;  // the remainder below the cut is dropped
};

struct Geometry {
    enum class Kind { S4, RW } kind = Kind::S4;
    RWGeometry rw;

    static Geometry s4() { return {}; }
    static Geometry robertson_walker(RWGeometry g) { return {Kind::RW, std::move(g)}; }
};

// Regularized Mellin transform of the supplied heat trace at s: the small-tau
// coefficients are subtracted on (cut, 1] and restored as their poles.
cplx rw_heat_mellin(cplx s, const RWGeometry& g);

// ---------------------------------------------------------------------------
// Expansions

// String poles with Re sigma >= 4 - 2 maxM; throws PoleError when one of them
// lies within 1e-9 of a bulk point 4 - 2M, M <= maxM.
std::vector<PoleTerm> expansion_poles(const FractalString& L, int maxM);

// Powers of tau: bulk tau^{2M-4} zeta_L(4-2M) c_M, poles ftilde(sigma) Res tau^{-sigma}.
std::vector<ExpansionTerm> round_heat_expansion(const FractalString& L, int maxM, const Geometry& g);

// Powers of Lambda with conjugate pole pairs merged.
std::vector<ExpansionTerm> spectral_action(const FractalString& L, const TestFunctionMoments& f, int maxM,
                                           const Geometry& g);

// The four leading packing terms in the form f(0) zeta_D(0) zeta_L(0) +
// f_2 Lambda^2 zeta_L(2)/2 + f_4 Lambda^4 zeta_L(4)/2 + sum_sigma
// f_sigma Lambda^sigma zeta_D(sigma)/2 Res_sigma, over poles with Re sigma >= 0.
// exact holds the coefficient without the test function moment.
std::vector<ExpansionTerm> packing_leading_terms(const FractalString& L, const TestFunctionMoments& f);

struct ReconciliationRow {
    std::string label;
    ExactToken pipeline;
    ExactToken printed;
    ExactToken ratio;  // pipeline / printed
    bool mustMatch = false;
    bool matches = false;
};

struct ReconciliationReport {
    std::vector<ReconciliationRow> rows;
    bool pass = false;  // every mustMatch row matches

    std::string to_text() const;
    nlohmann::json to_json() const;
};

// Ford packing of unit 4-spheres against the printed constants 11/140,
// 1/pi^2, 45 zeta(3)/(4 pi^4) and 4725 zeta(7)/(16 pi^8).
ReconciliationReport reconcile_ford_packing();

// ---------------------------------------------------------------------------
// Rescaling

std::pair<double, double> rescale_uv(double U, double V, double a);
std::pair<mpq_class, mpq_class> rescale_uv(const mpq_class& U, const mpq_class& V, const mpq_class& a);
// B -> B/a^2 and A -> A/a together with all their derivatives.
SymPoly rescale_symbols(const SymPoly& p, const mpq_class& a);
// C^{(r,m)}_M as a polynomial, r = rTwice/2.
SymPoly crm_polynomial(int rTwice, int m, int M);

struct NonRoundTerm {
    int power = 0;     // power of tau
    SymPoly zeta3;     // multiplies zeta_L(3)
    SymPoly zeta1;     // multiplies zeta_L(1)
    cplx weight3 = 0.0;
    cplx weight1 = 0.0;
    std::optional<SymPoly> combined;  // zeta3 w3 + zeta1 w1 for rational weights
};

// 1/4 (zeta_L(3) C^{(-5/2,2)}_M - zeta_L(1) C^{(-1/2,0)}_M) tau^{M-2}
//   + 1/2 zeta_L(3) C^{(-3/2,0)}_M tau^{M-4},  M <= maxOrder, grouped by power.
std::vector<NonRoundTerm> nonround_zeta_coefficients(const FractalString& L, int maxOrder);

// ---------------------------------------------------------------------------
// Singular expansions

struct MellinSpec {
    std::function<cplx(cplx)> eval;
    std::vector<PoleTerm> poles;
    std::vector<std::optional<mpq_class>> exactResidues;  // parallel to poles, may be shorter

    // Gamma(z), the transform of exp(-tau): poles -k, residues (-1)^k/k!, k < count.
    static MellinSpec gamma(int count);
};

// g(tau) = sum_n mult_n f(r_n tau), so M(g)(z) = zeta_L(-z) M(f)(z).  Poles of
// M(f) give bulk terms, poles of zeta_L(-z) with |Re z| <= reach give pole
// terms; a shared pole throws PoleError.
std::vector<ExpansionTerm> singular_expansion_combine(const FractalString& R, const MellinSpec& f,
                                                      double reach = 50.0);

// ---------------------------------------------------------------------------
// Output

nlohmann::json to_json(const ExpansionTerm& t);
nlohmann::json to_json(const std::vector<ExpansionTerm>& terms);
std::string to_table(const std::vector<ExpansionTerm>& terms);
std::string to_csv(const std::vector<ExpansionTerm>& terms);  // exponent,re,im,kind

}  // namespace specexp
