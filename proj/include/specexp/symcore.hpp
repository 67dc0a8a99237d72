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

// Exact scalars in Q(sqrt 2) and polynomials in the derivatives of
// A = 1/a and B = A^2, plus the equivalent form over a, a', a'', ...

#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>

#include <gmpxx.h>
#include <json.hpp>

namespace specexp {

class ExactScalar {
  public:
    ExactScalar() = default;
    ExactScalar(long v) : r0_(v) {}
    ExactScalar(const mpq_class& r0, const mpq_class& r1 = 0);
    static ExactScalar sqrt2() { return ExactScalar(0, 1); }
    static ExactScalar ratio(long p, long q);

    const mpq_class& rat0() const { return r0_; }
    const mpq_class& rat1() const { return r1_; }
    bool is_zero() const { return sgn(r0_) == 0 && sgn(r1_) == 0; }
    bool is_rational() const { return sgn(r1_) == 0; }
    double to_double() const;
    ExactScalar inverse() const;

    ExactScalar& operator+=(const ExactScalar& o);
    ExactScalar& operator-=(const ExactScalar& o);
    ExactScalar& operator*=(const ExactScalar& o);
    ExactScalar& operator/=(const ExactScalar& o) { return *this *= o.inverse(); }

    friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
    friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
    friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
    friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
    ExactScalar operator-() const { return ExactScalar(-r0_, -r1_); }
    friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
        return a.r0_ == b.r0_ && a.r1_ == b.r1_;
    }

    std::string to_string() const;

  private:
    mpq_class r0_{0}, r1_{0};
};

// B^{bHalf/2} * prod A^{(i)}^{aExp[i]} * prod B^{(i)}^{bExp[i]}, i >= 1.
struct DerivMonomial {
    int bHalf = 0;
    std::map<int, int> aExp;
    std::map<int, int> bExp;

    static DerivMonomial B(int half) { return {half, {}, {}}; }
    static DerivMonomial dA(int order, int e = 1);
    static DerivMonomial dB(int order, int e = 1);

    int weight() const;
    bool is_constant() const { return bHalf == 0 && aExp.empty() && bExp.empty(); }
    DerivMonomial operator*(const DerivMonomial& o) const;

    friend bool operator<(const DerivMonomial& x, const DerivMonomial& y) {
        if (x.bHalf != y.bHalf) return x.bHalf < y.bHalf;
        if (x.aExp != y.aExp) return x.aExp < y.aExp;
        return x.bExp < y.bExp;
    }
    friend bool operator==(const DerivMonomial&, const DerivMonomial&) = default;
};

class SymPoly {
  public:
    using Terms = std::map<DerivMonomial, ExactScalar>;

    SymPoly() = default;
    SymPoly(const ExactScalar& c);
    SymPoly(const DerivMonomial& m, const ExactScalar& c = ExactScalar(1));

    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const DerivMonomial& m, const ExactScalar& c);
    SymPoly& operator+=(const SymPoly& o);
    SymPoly& operator-=(const SymPoly& o);
    SymPoly& operator*=(const SymPoly& o) { return *this = *this * o; }
    friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
    friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
    friend SymPoly operator*(const SymPoly& a, const SymPoly& b);
    SymPoly operator-() const { return scale(ExactScalar(-1)); }
    SymPoly scale(const ExactScalar& c) const;
    friend bool operator==(const SymPoly&, const SymPoly&) = default;

    // Rebuilds the map dropping zero coefficients; a no-op on values built
    // through the public interface.
    SymPoly canonical() const;

  private:
    Terms terms_;
};

SymPoly add(const SymPoly& p, const SymPoly& q);
SymPoly mul(const SymPoly& p, const SymPoly& q);
SymPoly scale(const SymPoly& p, const ExactScalar& c);
SymPoly differentiate(const SymPoly& p);

// a^{aPow} * prod a^{(i)}^{derivExp[i]}, i >= 1.
struct AMonomial {
    int aPow = 0;
    std::map<int, int> derivExp;

    AMonomial operator*(const AMonomial& o) const;
    friend bool operator<(const AMonomial& x, const AMonomial& y) {
        if (x.aPow != y.aPow) return x.aPow < y.aPow;
        return x.derivExp < y.derivExp;
    }
    friend bool operator==(const AMonomial&, const AMonomial&) = default;
};

class AFormPoly {
  public:
    using Terms = std::map<AMonomial, mpq_class>;

    AFormPoly() = default;
    AFormPoly(const mpq_class& c);
    AFormPoly(const AMonomial& m, const mpq_class& c = 1);
    static AFormPoly a(int power) { return AFormPoly(AMonomial{power, {}}); }
    static AFormPoly deriv(int order) { return AFormPoly(AMonomial{0, {{order, 1}}}); }

    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const AMonomial& m, const mpq_class& c);
    AFormPoly& operator+=(const AFormPoly& o);
    AFormPoly& operator-=(const AFormPoly& o);
    friend AFormPoly operator+(AFormPoly a, const AFormPoly& b) { return a += b; }
    friend AFormPoly operator-(AFormPoly a, const AFormPoly& b) { return a -= b; }
    friend AFormPoly operator*(const AFormPoly& a, const AFormPoly& b);
    AFormPoly scale(const mpq_class& c) const;
    AFormPoly pow(int e) const;
    friend bool operator==(const AFormPoly&, const AFormPoly&) = default;

  private:
    Terms terms_;
};

AFormPoly differentiate(const AFormPoly& p);

// Substitutes A = 1/a, B = 1/a^2. Throws if a coefficient carries sqrt(2).
AFormPoly to_a_form(const SymPoly& p);

// Callback returns a^{(i)}(t) for i >= 0.
using DerivCallback = std::function<double(int)>;

double eval_numeric(const AFormPoly& p, const DerivCallback& derivs);
double eval_numeric(const SymPoly& p, const DerivCallback& derivs);

// Rendering.  Text: "1/2 * B^(-3/2) - 1/4 * A'^2"; derivatives of order >= 4
// print as A(4), a(4).
std::string to_text(const SymPoly& p);
std::string to_text(const AFormPoly& p);
std::string to_latex(const SymPoly& p);
std::string to_latex(const AFormPoly& p);

nlohmann::json to_json(const SymPoly& p);
nlohmann::json to_json(const AFormPoly& p);
SymPoly sympoly_from_json(const nlohmann::json& j);
AFormPoly aform_from_json(const nlohmann::json& j);

}  // namespace specexp
