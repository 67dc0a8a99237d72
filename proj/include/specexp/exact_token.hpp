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

// Exact constants built from rationals, powers of pi and odd zeta values:
// finite sums of q * pi^k * prod zeta(n)^e with n odd >= 3.

#pragma once

#include <compare>
#include <map>
#include <string>

#include <gmpxx.h>

namespace specexp {

struct TokenMonomial {
    int piPow = 0;
    std::map<int, int> zetaPow;  // odd n >= 3 -> exponent (may be negative)

    auto operator<=>(const TokenMonomial&) const = default;
    bool operator==(const TokenMonomial&) const = default;
};

class ExactToken {
  public:
    using Terms = std::map<TokenMonomial, mpq_class>;

    ExactToken() = default;
    ExactToken(long v) : ExactToken(mpq_class(v)) {}
    ExactToken(const mpq_class& q);

    static ExactToken pi_power(int k);
    static ExactToken zeta_odd(int n);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    mpq_class rational() const;  // throws std::domain_error unless rational

    ExactToken operator+(const ExactToken& o) const;
    ExactToken operator-(const ExactToken& o) const;
    ExactToken operator-() const;
    ExactToken operator*(const ExactToken& o) const;
    // Only single-monomial divisors are supported.
    ExactToken operator/(const ExactToken& o) const;
    bool operator==(const ExactToken& o) const { return terms_ == o.terms_; }

    double to_double() const;
    // e.g. "4725*zeta(7)/(16*pi^8)", "11/540", "1/(2*pi^2)"
    std::string to_string() const;

  private:
    Terms terms_;
};

}  // namespace specexp
