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

#include "specexp/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace specexp {

namespace {

mpz_class fact(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

mpz_class binom(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// VPoly

void VPoly::add_term(const std::vector<int>& e, const mpq_class& c) {
    if (sgn(c) == 0) return;
    if (static_cast<int>(e.size()) != n) throw std::invalid_argument("VPoly: exponent length mismatch");
    auto [it, inserted] = terms.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms.erase(it);
    }
}

VPoly VPoly::operator*(const VPoly& o) const {
    if (n != o.n) throw std::invalid_argument("VPoly: dimension mismatch");
    VPoly r{n, {}};
    std::vector<int> e(n);
    for (const auto& [ea, ca] : terms)
        for (const auto& [eb, cb] : o.terms) {
            for (int i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

VPoly& VPoly::operator+=(const VPoly& o) {
    if (n != o.n) throw std::invalid_argument("VPoly: dimension mismatch");
    for (const auto& [e, c] : o.terms) add_term(e, c);
    return *this;
}

VPoly VPoly::constant(int n, const mpq_class& c) {
    VPoly r{n, {}};
    r.add_term(std::vector<int>(n, 0), c);
    return r;
}

VPoly VPoly::variable(int n, int i) {
    if (i < 1 || i > n) throw std::out_of_range("VPoly::variable: index out of range");
    VPoly r{n, {}};
    std::vector<int> e(n, 0);
    e[i - 1] = 1;
    r.add_term(e, 1);
    return r;
}

// ---------------------------------------------------------------------------
// Simplex integrals

mpq_class simplex_monomial_integral(const std::vector<int>& k) {
    mpz_class den = 1;
    long partial = 0;
    for (std::size_t p = 0; p < k.size(); ++p) {
        if (k[p] < 0) throw std::invalid_argument("simplex_monomial_integral: negative exponent");
        partial += k[p] + 1;
        den *= partial;
    }
    return mpq_class(mpz_class(1), den);
}

mpq_class simplex_integrate(const VPoly& p, int n) {
    mpq_class acc = 0;
    for (const auto& [e, c] : p.terms) {
        std::vector<int> k(n, 0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (static_cast<int>(i) >= n)
                throw std::out_of_range("simplex_integrate: variable index exceeds dimension");
            k[i] = e[i];
        }
        acc += c * simplex_monomial_integral(k);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Pairings

std::vector<std::vector<std::pair<int, int>>> pairings(int n) {
    if (n < 0) throw std::invalid_argument("pairings: negative n");
    std::vector<std::vector<std::pair<int, int>>> out;
    std::vector<bool> used(2 * n + 1, false);
    std::vector<std::pair<int, int>> cur;
    std::function<void()> rec = [&]() {
        int i = 1;
        while (i <= 2 * n && used[i]) ++i;
        if (i > 2 * n) {
            out.push_back(cur);
            return;
        }
        used[i] = true;
        for (int j = i + 1; j <= 2 * n; ++j) {
            if (used[j]) continue;
            used[j] = true;
            cur.emplace_back(i, j);
            rec();
            cur.pop_back();
            used[j] = false;
        }
        used[i] = false;
    };
    rec();
    return out;
}

VPoly pairing_integral(int n) {
    if (n < 1) throw std::invalid_argument("pairing_integral: n must be >= 1");
    int dim = 2 * n;
    VPoly acc{dim, {}};
    for (const auto& pr : pairings(n)) {
        VPoly t = VPoly::constant(dim, 1);
        for (auto [i, j] : pr) {
            VPoly f = VPoly::variable(dim, i) * (VPoly::constant(dim, 1) + [&] {
                VPoly m = VPoly::variable(dim, j);
                for (auto& [e, c] : m.terms) c = -c;
                return m;
            }());
            t = t * f;
        }
        acc += t;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Gaussian moments of the bridge at ordered points

namespace {

// One admissible symmetric matrix k_{j,m}, collapsed to j <= m.  Point p
// appears as the smaller endpoint left[p] times and as the larger endpoint
// right[p] times, so its factor is v_p^left (1 - v_p)^right.
struct PairingClass {
    mpq_class coeff;
    std::vector<int> left, right;
};

std::vector<PairingClass> pairing_classes(const std::vector<int>& I) {
    int n = static_cast<int>(I.size());
    std::vector<PairingClass> out;
    long total = 0;
    for (int v : I) {
        if (v < 0) throw std::invalid_argument("negative bridge exponent");
        total += v;
    }
    if (total % 2) return out;
    mpz_class pref = 1;
    for (int v : I) pref *= fact(v);

    std::vector<int> rem(I);
    std::vector<int> left(n, 0), right(n, 0);
    mpz_class den = 1;

    // Fill row j: diagonal first, then k_{j,m} for m = j+1..n-1.
    std::function<void(int, int)> row_tail;
    std::function<void(int)> row = [&](int j) {
        if (j == n) {
            out.push_back({mpq_class(pref, den), left, right});
            out.back().coeff.canonicalize();
            return;
        }
        for (int d = rem[j] / 2; d >= 0; --d) {
            // c_{jj}^d / 2^d / d!
            mpz_class save = den;
            den *= fact(d) * (mpz_class(1) << d);
            rem[j] -= 2 * d;
            left[j] += d;
            right[j] += d;
            row_tail(j, j + 1);
            left[j] -= d;
            right[j] -= d;
            rem[j] += 2 * d;
            den = save;
        }
    };
    row_tail = [&](int j, int m) {
        if (rem[j] == 0) {
            row(j + 1);
            return;
        }
        if (m >= n) return;
        for (int k = std::min(rem[j], rem[m]); k >= 0; --k) {
            mpz_class save = den;
            den *= fact(k);
            rem[j] -= k;
            rem[m] -= k;
            left[j] += k;
            right[m] += k;
            row_tail(j, m + 1);
            right[m] -= k;
            left[j] -= k;
            rem[m] += k;
            rem[j] += k;
            den = save;
        }
    };
    row(0);
    return out;
}

}  // namespace

VPoly monomial_bridge_polynomial(const std::vector<int>& I) {
    int n = static_cast<int>(I.size());
    VPoly acc{n, {}};
    for (const auto& pc : pairing_classes(I)) {
        VPoly t = VPoly::constant(n, pc.coeff);
        for (int p = 0; p < n; ++p) {
            // v^L (1 - v)^R = sum_r (-1)^r C(R, r) v^{L + r}
            VPoly f{n, {}};
            for (int r = 0; r <= pc.right[p]; ++r) {
                std::vector<int> e(n, 0);
                e[p] = pc.left[p] + r;
                mpq_class c(binom(pc.right[p], r));
                f.add_term(e, r % 2 ? mpq_class(-c) : c);
            }
            t = t * f;
        }
        acc += t;
    }
    return acc;
}

mpq_class monomial_simplex_integral(const std::vector<int>& I) {
    int n = static_cast<int>(I.size());
    mpq_class acc = 0;
    for (const auto& pc : pairing_classes(I)) {
        // Sum over r_p of prod_p (-1)^{r_p} C(R_p, r_p) / (p + sum_{l<=p}(L_l + r_l)).
        mpq_class sum = 0;
        std::function<void(int, long, mpq_class)> rec = [&](int p, long partial, mpq_class w) {
            if (p == n) {
                sum += w;
                return;
            }
            for (int r = 0; r <= pc.right[p]; ++r) {
                long np = partial + pc.left[p] + r + 1;
                mpq_class c(binom(pc.right[p], r), mpz_class(np));
                c.canonicalize();
                rec(p + 1, np, r % 2 ? mpq_class(-w * c) : mpq_class(w * c));
            }
        };
        rec(0, 0, mpq_class(1));
        acc += pc.coeff * sum;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Shuffles and words

ShuffleSum shuffle(const Word& w1, const Word& w2) {
    ShuffleSum out;
    Word cur;
    cur.reserve(w1.size() + w2.size());
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t j) {
        if (i == w1.size() && j == w2.size()) {
            out[cur] += 1;
            return;
        }
        if (i < w1.size()) {
            cur.push_back(w1[i]);
            rec(i + 1, j);
            cur.pop_back();
        }
        if (j < w2.size()) {
            cur.push_back(w2[j]);
            rec(i, j + 1);
            cur.pop_back();
        }
    };
    rec(0, 0);
    return out;
}

ShuffleSum shuffle_multi(const std::vector<Word>& words) {
    ShuffleSum acc{{Word{}, mpq_class(1)}};
    for (const auto& w : words) {
        ShuffleSum next;
        for (const auto& [u, c] : acc)
            for (const auto& [v, d] : shuffle(u, w)) next[v] += c * d;
        acc = std::move(next);
    }
    return acc;
}

mpq_class word_integral(const Word& w) {
    static std::shared_mutex mu;
    static std::map<Word, mpq_class> memo;
    {
        std::shared_lock lock(mu);
        auto it = memo.find(w);
        if (it != memo.end()) return it->second;
    }
    mpq_class v = monomial_simplex_integral(w);
    std::unique_lock lock(mu);
    memo.emplace(w, v);
    return v;
}

mpq_class word_integral(const ShuffleSum& s) {
    mpq_class acc = 0;
    for (const auto& [w, c] : s) acc += c * word_integral(w);
    return acc;
}

mpq_class moment_product(const MomentSpec& spec) {
    long total = 0;
    mpz_class pref = 1;
    std::vector<Word> words;
    for (auto [i, m] : spec) {
        if (i < 1 || m < 0) throw std::invalid_argument("moment_product: bad letter or multiplicity");
        if (m == 0) continue;
        total += static_cast<long>(i) * m;
        pref *= fact(m);
        words.emplace_back(m, i);
    }
    if (total % 2) return 0;
    return mpq_class(pref) * word_integral(shuffle_multi(words));
}

mpq_class x1_even_moment(int n) {
    if (n < 0) throw std::invalid_argument("x1_even_moment: negative n");
    if (n == 0) return 1;
    // Each pairing (i_1 < j_1), ..., listed once; expand prod v_i (1 - v_j)
    // over subsets J of the right endpoints and integrate the resulting
    // square-free monomials in closed form.
    mpq_class acc = 0;
    for (const auto& pr : pairings(n)) {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<int> idx;
            int k = 0;
            for (int t = 0; t < n; ++t) {
                idx.push_back(pr[t].first);
                if (mask >> t & 1) {
                    idx.push_back(pr[t].second);
                    ++k;
                }
            }
            std::sort(idx.begin(), idx.end());
            mpz_class num = 1;
            for (std::size_t t = 0; t < idx.size(); ++t) num *= idx[t] + static_cast<long>(t);
            mpq_class term(num, fact(3 * n + k));
            term.canonicalize();
            if (k % 2) acc -= term;
            else acc += term;
        }
    }
    return mpq_class(fact(2 * n)) * acc;
}

// ---------------------------------------------------------------------------
// Monte Carlo

unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SPECEXP_THREADS")) {
        char* end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1) hw = static_cast<unsigned>(std::min(cap, 256L));
    }
    return hw;
}

std::vector<McResult> mc_estimate_many(const std::vector<MomentSpec>& specs, std::int64_t nPaths,
                                       int nGrid, std::uint64_t seed) {
    if (nPaths < 1000) throw std::invalid_argument("mc_estimate: nPaths must be >= 1000");
    if (nGrid < 64) throw std::invalid_argument("mc_estimate: nGrid must be >= 64");
    int maxLetter = 1;
    for (const auto& s : specs)
        for (auto [i, m] : s) {
            if (i < 1 || m < 0) throw std::invalid_argument("mc_estimate: bad MomentSpec");
            maxLetter = std::max(maxLetter, i);
        }

    constexpr std::int64_t kBlock = 1000;
    const std::int64_t nBlocks = (nPaths + kBlock - 1) / kBlock;
    const std::size_t ns = specs.size();
    std::vector<double> sums(nBlocks * ns, 0.0), sq(nBlocks * ns, 0.0);

    auto run_block = [&](std::int64_t b) {
        std::seed_seq sseq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                           static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
        std::mt19937_64 rng(sseq);
        std::normal_distribution<double> normal(0.0, 1.0);
        const double h = 1.0 / nGrid, sh = std::sqrt(h);
        std::vector<double> w(nGrid + 1), x(maxLetter + 1);
        std::int64_t count = std::min(kBlock, nPaths - b * kBlock);
        for (std::int64_t path = 0; path < count; ++path) {
            w[0] = 0.0;
            for (int j = 1; j <= nGrid; ++j) w[j] = w[j - 1] + sh * normal(rng);
            std::fill(x.begin(), x.end(), 0.0);
            // trapezoid rule; alpha vanishes at both endpoints
            for (int j = 1; j < nGrid; ++j) {
                double a = w[j] - j * h * w[nGrid], p = a;
                for (int k = 1; k <= maxLetter; ++k, p *= a) x[k] += p;
            }
            for (int k = 1; k <= maxLetter; ++k) x[k] *= h;
            for (std::size_t s = 0; s < ns; ++s) {
                double f = 1.0;
                for (auto [i, m] : specs[s]) f *= std::pow(x[i], m);
                sums[b * ns + s] += f;
                sq[b * ns + s] += f * f;
            }
        }
    };

    unsigned nw = std::min<std::int64_t>(worker_count(), nBlocks);
    if (nw <= 1) {
        for (std::int64_t b = 0; b < nBlocks; ++b) run_block(b);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nw; ++t)
            pool.emplace_back([&, t] {
                for (std::int64_t b = t; b < nBlocks; b += nw) run_block(b);
            });
        for (auto& th : pool) th.join();
    }

    std::vector<McResult> out(ns);
    for (std::size_t s = 0; s < ns; ++s) {
        double S = 0.0, Q = 0.0;
        for (std::int64_t b = 0; b < nBlocks; ++b) {
            S += sums[b * ns + s];
            Q += sq[b * ns + s];
        }
        double mean = S / nPaths;
        double var = std::max(0.0, (Q / nPaths - mean * mean) * nPaths / (nPaths - 1.0));
        out[s] = {mean, std::sqrt(var / nPaths)};
    }
    return out;
}

McResult mc_estimate(const MomentSpec& spec, std::int64_t nPaths, int nGrid, std::uint64_t seed) {
    return mc_estimate_many({spec}, nPaths, nGrid, seed)[0];
}

}  // namespace specexp
