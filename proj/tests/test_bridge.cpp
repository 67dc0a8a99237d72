#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <random>

#include "specexp/bridge.hpp"

using namespace specexp;

namespace {

// Exact iterated integration over 0 <= v_1 <= ... <= v_n <= 1: integrate
// v_1 from 0 to v_2, then v_2 from 0 to v_3, and so on.
mpq_class iterated_integral(const VPoly& p) {
    // state: polynomial in (v_j, ..., v_n) as map from exponent vectors
    std::map<std::vector<int>, mpq_class> cur(p.terms.begin(), p.terms.end());
    for (int j = 0; j < p.n; ++j) {
        std::map<std::vector<int>, mpq_class> next;
        for (const auto& [e, c] : cur) {
            std::vector<int> f = e;
            int k = f[j];
            f[j] = 0;
            mpq_class cc = c / (k + 1);
            if (j + 1 < p.n) f[j + 1] += k + 1;
            next[f] += cc;
        }
        cur = std::move(next);
    }
    mpq_class acc = 0;
    for (const auto& [e, c] : cur) acc += c;
    return acc;
}

// Wick's formula over slots: each point v_p repeated i_p times.
VPoly wick_polynomial(const std::vector<int>& I) {
    int n = static_cast<int>(I.size());
    std::vector<int> slot;
    for (int p = 0; p < n; ++p)
        for (int r = 0; r < I[p]; ++r) slot.push_back(p);
    VPoly acc{n, {}};
    if (slot.size() % 2) return acc;
    std::vector<bool> used(slot.size(), false);
    std::function<void(VPoly)> rec = [&](VPoly cur) {
        std::size_t i = 0;
        while (i < slot.size() && used[i]) ++i;
        if (i == slot.size()) {
            acc += cur;
            return;
        }
        used[i] = true;
        for (std::size_t j = i + 1; j < slot.size(); ++j) {
            if (used[j]) continue;
            used[j] = true;
            int lo = std::min(slot[i], slot[j]), hi = std::max(slot[i], slot[j]);
            VPoly one = VPoly::constant(n, 1), vh = VPoly::variable(n, hi + 1);
            for (auto& [e, c] : vh.terms) c = -c;
            rec(cur * VPoly::variable(n, lo + 1) * (one + vh));
            used[j] = false;
        }
        used[i] = false;
    };
    rec(VPoly::constant(n, 1));
    return acc;
}

std::vector<Word> words_up_to(int maxTotal) {
    std::vector<Word> out;
    Word cur;
    std::function<void(int)> rec = [&](int rem) {
        if (!cur.empty()) out.push_back(cur);
        for (int l = 1; l <= rem; ++l) {
            cur.push_back(l);
            rec(rem - l);
            cur.pop_back();
        }
    };
    rec(maxTotal);
    return out;
}

double eval_vpoly(const VPoly& p, const std::vector<double>& v) {
    double s = 0.0;
    for (const auto& [e, c] : p.terms) {
        double t = c.get_d();
        for (int i = 0; i < p.n; ++i) t *= std::pow(v[i], e[i]);
        s += t;
    }
    return s;
}

}  // namespace

TEST_CASE("simplex monomial integrals") {
    CHECK(simplex_monomial_integral({0, 0}) == mpq_class(1, 2));
    CHECK(simplex_monomial_integral({1, 1}) == mpq_class(1, 8));
    CHECK(simplex_monomial_integral({1, 0, 1}) == mpq_class(1, 30));
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> d(0, 4);
    for (int it = 0; it < 30; ++it) {
        std::vector<int> k(1 + it % 4);
        for (auto& x : k) x = d(rng);
        std::vector<int> e = k;
        VPoly p{static_cast<int>(k.size()), {}};
        p.add_term(e, 1);
        CHECK(simplex_monomial_integral(k) == iterated_integral(p));
    }
}

TEST_CASE("square-free monomials match the closed product formula") {
    for (int n = 1; n <= 5; ++n)
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<int> k(n, 0), js;
            for (int j = 0; j < n; ++j)
                if (mask >> j & 1) {
                    k[j] = 1;
                    js.push_back(j + 1);
                }
            mpz_class num = 1, den;
            for (std::size_t t = 0; t < js.size(); ++t) num *= js[t] + static_cast<long>(t);
            mpz_fac_ui(den.get_mpz_t(), n + js.size());
            mpq_class want(num, den);
            want.canonicalize();
            CHECK(simplex_monomial_integral(k) == want);
        }
}

TEST_CASE("simplex_integrate") {
    VPoly p = VPoly::variable(2, 1) * (VPoly::constant(2, 1) + [] {
        VPoly m = VPoly::variable(2, 2);
        for (auto& [e, c] : m.terms) c = -c;
        return m;
    }());
    CHECK(simplex_integrate(p, 2) == mpq_class(1, 24));
    CHECK(simplex_integrate(VPoly::constant(4, 1), 4) == mpq_class(1, 24));
    CHECK(simplex_integrate(VPoly::variable(1, 1), 1) == mpq_class(1, 2));
    CHECK_THROWS_AS(simplex_integrate(VPoly::variable(3, 3), 2), std::out_of_range);
}

TEST_CASE("pairings") {
    CHECK(pairings(1).size() == 1);
    CHECK(pairings(2).size() == 3);
    CHECK(pairings(3).size() == 15);
    CHECK(pairings(4).size() == 105);
    VPoly one = VPoly::constant(2, 1);
    VPoly p1 = VPoly::variable(2, 1) * (one + [] {
        VPoly m = VPoly::variable(2, 2);
        for (auto& [e, c] : m.terms) c = -c;
        return m;
    }());
    CHECK(pairing_integral(1) == p1);
    auto c = [](int i, int j) {
        VPoly m = VPoly::variable(4, j);
        for (auto& [e, cc] : m.terms) cc = -cc;
        return VPoly::variable(4, i) * (VPoly::constant(4, 1) + m);
    };
    CHECK(pairing_integral(2) == c(1, 2) * c(3, 4) + c(1, 3) * c(2, 4) + c(1, 4) * c(2, 3));
}

TEST_CASE("bridge polynomial of a monomial") {
    VPoly var = VPoly::variable(1, 1);
    VPoly expect = var * (VPoly::constant(1, 1) + [&] {
        VPoly m = var;
        for (auto& [e, c] : m.terms) c = -c;
        return m;
    }());
    CHECK(monomial_bridge_polynomial({2}) == expect);
    CHECK(monomial_bridge_polynomial({1, 1}) == pairing_integral(1));
    CHECK(monomial_bridge_polynomial({1}).terms.empty());
    for (int n = 1; n <= 4; ++n) CHECK(monomial_bridge_polynomial(std::vector<int>(2 * n, 1)) == pairing_integral(n));
}

TEST_CASE("monomial simplex integrals") {
    CHECK(monomial_simplex_integral({2}) == mpq_class(1, 6));
    CHECK(monomial_simplex_integral({1, 1}) == mpq_class(1, 24));
    CHECK(monomial_simplex_integral({1, 1, 1}) == 0);
    CHECK(monomial_simplex_integral({}) == 1);
}

TEST_CASE("route equivalence on every word of total <= 8") {
    for (const auto& w : words_up_to(8)) {
        VPoly p = monomial_bridge_polynomial(w);
        mpq_class direct = monomial_simplex_integral(w);
        CHECK(simplex_integrate(p, static_cast<int>(w.size())) == direct);
        CHECK(iterated_integral(p) == direct);
        CHECK(p == wick_polynomial(w));
    }
}

TEST_CASE("shuffles") {
    ShuffleSum s = shuffle({1}, {2});
    CHECK(s.size() == 2);
    CHECK(s[{1, 2}] == 1);
    CHECK(s[{2, 1}] == 1);
    ShuffleSum t = shuffle({1, 1}, {1});
    CHECK(t.size() == 1);
    CHECK(t[{1, 1, 1}] == 3);
    for (int p = 0; p <= 4; ++p)
        for (int q = 0; q <= 4; ++q) {
            Word a(p, 1), b(q, 2);
            mpq_class mass = 0;
            for (const auto& [w, c] : shuffle(a, b)) mass += c;
            mpz_class bin;
            mpz_bin_uiui(bin.get_mpz_t(), p + q, p);
            CHECK(mass == bin);
        }
    ShuffleSum m = shuffle_multi({{1}, {2}, {3}});
    CHECK(m.size() == 6);
}

TEST_CASE("word integrals") {
    CHECK(word_integral(Word{1, 1}) == mpq_class(1, 24));
    CHECK(word_integral(Word{2}) == mpq_class(1, 6));
    // (3,1) against nested Gauss-Legendre quadrature of its polynomial
    VPoly p = monomial_bridge_polynomial({3, 1});
    const double x[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640};
    const double w[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665, 0.2369268850561891};
    double quad = 0.0;
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) {
            double v2 = 0.5 * (x[a] + 1), v1 = v2 * 0.5 * (x[b] + 1);
            quad += 0.25 * w[a] * w[b] * v2 * eval_vpoly(p, {v1, v2});
        }
    CHECK(std::abs(quad - word_integral(Word{3, 1}).get_d()) < 1e-10);
    CHECK(word_integral(ShuffleSum{{{1, 1}, mpq_class(2)}, {{2}, mpq_class(-1)}}) == mpq_class(-1, 12));
}

TEST_CASE("moments of x_k(alpha)") {
    CHECK(moment_product({{1, 2}}) == mpq_class(1, 12));
    CHECK(moment_product({{2, 1}}) == mpq_class(1, 6));
    CHECK(moment_product({{1, 1}}) == 0);
    CHECK(moment_product({}) == 1);
    // x_1 is centred Gaussian with variance 1/12
    mpq_class dbl = 1;
    for (int n = 1; n <= 4; ++n) {
        dbl *= 2 * n - 1;
        mpq_class want = dbl;
        for (int j = 0; j < n; ++j) want /= 12;
        CHECK(moment_product({{1, 2 * n}}) == want);
    }
    MomentSpec a, b;
    a[3] = 1; a[1] = 3; a[2] = 1;
    b[2] = 1; b[1] = 3; b[3] = 1;
    CHECK(moment_product(a) == moment_product(b));
}

TEST_CASE("even moments of x_1 by the pairing-subset formula") {
    CHECK(x1_even_moment(0) == 1);
    CHECK(x1_even_moment(1) == mpq_class(1, 12));
    for (int n = 1; n <= 3; ++n) CHECK(x1_even_moment(n) == moment_product({{1, 2 * n}}));
}

TEST_CASE("Monte Carlo oracle") {
    std::vector<MomentSpec> specs = {{{1, 2}}, {{2, 1}}, {{1, 1}}};
    auto res = mc_estimate_many(specs, 20000, 256, 42);
    for (std::size_t i = 0; i < specs.size(); ++i) {
        double exact = moment_product(specs[i]).get_d();
        CHECK(std::abs(res[i].estimate - exact) <= 4 * res[i].stdError);
    }
    auto again = mc_estimate({{1, 2}}, 3000, 64, 9);
    setenv("SPECEXP_THREADS", "1", 1);
    auto single = mc_estimate({{1, 2}}, 3000, 64, 9);
    setenv("SPECEXP_THREADS", "3", 1);
    auto three = mc_estimate({{1, 2}}, 3000, 64, 9);
    unsetenv("SPECEXP_THREADS");
    CHECK(again.estimate == single.estimate);
    CHECK(single.estimate == three.estimate);
    CHECK_THROWS_AS(mc_estimate({{1, 2}}, 10, 64, 1), std::invalid_argument);
    CHECK_THROWS_AS(mc_estimate({{1, 2}}, 1000, 8, 1), std::invalid_argument);
}
