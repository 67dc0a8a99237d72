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

// Brownian bridge functionals on [0,1].  All integrals over the ordered
// simplex 0 <= v_1 <= ... <= v_n <= 1 are exact rationals; the path measure
// is the bridge with covariance E[alpha(s) alpha(t)] = s (1 - t), s <= t.

#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace specexp {

using Word = std::vector<int>;
using ShuffleSum = std::map<Word, mpq_class>;
// letter i -> multiplicity of x_i(alpha) = int_0^1 alpha(v)^i dv
using MomentSpec = std::map<int, int>;

// Sparse polynomial in v_1..v_n, keyed by exponent vectors of length n.
struct VPoly {
    int n = 0;
    std::map<std::vector<int>, mpq_class> terms;

    void add_term(const std::vector<int>& e, const mpq_class& c);
    VPoly operator*(const VPoly& o) const;
    VPoly& operator+=(const VPoly& o);
    VPoly operator+(const VPoly& o) const {
        VPoly r = *this;
        return r += o;
    }
    friend bool operator==(const VPoly&, const VPoly&) = default;

    static VPoly constant(int n, const mpq_class& c);
    static VPoly variable(int n, int i);  // v_i, 1-based
};

mpq_class simplex_monomial_integral(const std::vector<int>& k);
mpq_class simplex_integrate(const VPoly& p, int n);

// Perfect pairings of {1..2n} with i < j inside each pair, listed with the
// pairs sorted by their first element.
std::vector<std::vector<std::pair<int, int>>> pairings(int n);
VPoly pairing_integral(int n);

VPoly monomial_bridge_polynomial(const std::vector<int>& I);
mpq_class monomial_simplex_integral(const std::vector<int>& I);

ShuffleSum shuffle(const Word& w1, const Word& w2);
ShuffleSum shuffle_multi(const std::vector<Word>& words);

// Memoised; thread-safe.
mpq_class word_integral(const Word& w);
mpq_class word_integral(const ShuffleSum& s);

mpq_class moment_product(const MomentSpec& spec);
mpq_class x1_even_moment(int n);

struct McResult {
    double estimate = 0.0;
    double stdError = 0.0;
};

// Paths are generated in fixed blocks, each seeded from (seed, block), so the
// result does not depend on the number of worker threads.  The worker count
// is SPECEXP_THREADS when set, else the hardware concurrency.
McResult mc_estimate(const MomentSpec& spec, std::int64_t nPaths, int nGrid, std::uint64_t seed);
// Same sampled paths shared by every spec.
std::vector<McResult> mc_estimate_many(const std::vector<MomentSpec>& specs, std::int64_t nPaths,
                                       int nGrid, std::uint64_t seed);

unsigned worker_count();

}  // namespace specexp
