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

// Laurent coefficients C^{(r,m)}_M of exp(V^2/4U) U^r V^m in tau and the heat
// coefficients a_{2M}(t) of a Robertson-Walker metric, as exact polynomials in
// the derivatives of A = 1/a and B = A^2.
//
// Half-integer exponents r are passed doubled: rTwice = 2r.

#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "specexp/bridge.hpp"
#include "specexp/symcore.hpp"

namespace specexp {

// u_n = B^{(n)} 2^{n/2} x_n and v_n = A^{(n+1)} 2^{n/2} x_n.
struct UVSeriesTerm {
    int n = 0;
    SymPoly uSym, vSym;
    int sqrt2Power = 0;
    int xLetter = 0;
};
UVSeriesTerm uv_series_term(int n);

struct MomentTerm {
    ExactScalar scalar;
    SymPoly sym;
    MomentSpec xMultiset;
};

// Polynomial in the derivative symbols and the path functionals x_i(alpha);
// the carrier for the Bell-polynomial route.
class XPoly {
  public:
    using Key = std::pair<DerivMonomial, MomentSpec>;
    using Terms = std::map<Key, ExactScalar>;

    XPoly() = default;
    XPoly(const mpq_class& c);
    XPoly(const DerivMonomial& m, const MomentSpec& x, const ExactScalar& c);

    const Terms& terms() const { return terms_; }
    void add_term(const Key& k, const ExactScalar& c);
    XPoly& operator+=(const XPoly& o);
    friend XPoly operator+(XPoly a, const XPoly& b) { return a += b; }
    friend XPoly operator*(const XPoly& a, const XPoly& b);
    XPoly scale(const ExactScalar& c) const;

  private:
    Terms terms_;
};

// Generalised binomial binom(x, k) for rational x.
mpq_class binomial(const mpq_class& x, int k);

// Like terms (equal monomial and multiset) are merged; order is canonical.
std::vector<MomentTerm> crm_direct(int rTwice, int m, int M);
std::vector<MomentTerm> crm_bell(int rTwice, int m, int order);

// Replaces each multiset by its exact bridge moment.  Throws
// std::logic_error when a sqrt(2) component survives.
SymPoly integrate_bridge(const std::vector<MomentTerm>& terms);

// Memoised, thread-safe.
SymPoly a2M(int M);

enum class ScaleFamily { Inflation, Radiation, Matter, Empty, Sphere, User };

struct ScaleFactor {
    ScaleFamily family = ScaleFamily::Sphere;
    double H = 1.0;
    // (order, t) -> a^{(order)}(t); used for ScaleFamily::User
    std::function<double(int, double)> user;

    double derivative(int order, double t) const;
    static ScaleFamily parse_family(const std::string& name);
};

struct HeatCoefficient {
    int power = 0;  // 2M - 4
    double value = 0.0;
};

std::vector<HeatCoefficient> heat_trace_series(int maxM, const ScaleFactor& a, double t);

}  // namespace specexp
