#include <doctest.h>

#include <functional>
#include <random>
#include <vector>

#include "specexp/bell.hpp"
#include "specexp/symcore.hpp"

using namespace specexp;

namespace {

mpq_class canon(long p, long q) {
    mpq_class r(p, q);
    r.canonicalize();
    return r;
}

// Brute force over all weak compositions lambda with sum i lambda_i = n,
// sum lambda_i = k; independent of the memoised descent.
mpq_class bell_brute(int n, int k, const std::vector<mpq_class>& x) {
    if (n == 0 && k == 0) return 1;
    if (k == 0 || n < k) return 0;
    int w = n - k + 1;
    mpq_class acc = 0;
    std::vector<int> lam(w, 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == w) {
            int s = 0, c = 0;
            for (int j = 0; j < w; ++j) {
                s += (j + 1) * lam[j];
                c += lam[j];
            }
            if (s != n || c != k) return;
            mpz_class nf, den = 1;
            mpz_fac_ui(nf.get_mpz_t(), n);
            mpq_class term(nf);
            for (int j = 0; j < w; ++j) {
                mpz_class lf, jf;
                mpz_fac_ui(lf.get_mpz_t(), lam[j]);
                mpz_fac_ui(jf.get_mpz_t(), j + 1);
                term /= lf;
                for (int e = 0; e < lam[j]; ++e) term *= x[j] / mpq_class(jf);
            }
            acc += term;
            return;
        }
        for (int v = 0; (i + 1) * v <= n; ++v) {
            lam[i] = v;
            rec(i + 1);
        }
        lam[i] = 0;
    };
    rec(0);
    return acc;
}

// Number of set partitions of {1..n} by direct recursive enumeration.
long set_partitions(int n) {
    std::function<long(int, int)> rec = [&](int i, int blocks) -> long {
        if (i == n) return 1;
        long s = 0;
        for (int b = 0; b <= blocks; ++b) s += rec(i + 1, b == blocks ? blocks + 1 : blocks);
        return s;
    };
    return rec(0, 0);
}

}  // namespace

TEST_CASE("conventions and small values") {
    std::vector<mpq_class> x = {mpq_class(2), mpq_class(3), mpq_class(5), mpq_class(7)};
    CHECK(bell_polynomial(0, 0, x) == 1);
    CHECK(bell_polynomial(3, 0, x) == 0);
    CHECK(bell_polynomial(2, 3, x) == 0);
    CHECK(bell_polynomial(3, 2, x) == 3 * x[0] * x[1]);
    CHECK(bell_terms(3, 2)->size() == 1);
}

TEST_CASE("memoised enumeration matches brute force") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> d(-5, 5);
    std::vector<mpq_class> x;
    for (int i = 0; i < 12; ++i) x.push_back(canon(d(rng), 1 + (i % 3)));
    for (int n = 0; n <= 9; ++n)
        for (int k = 0; k <= n + 1; ++k) CHECK(bell_polynomial(n, k, x) == bell_brute(n, k, x));
}

TEST_CASE("row sums are Bell numbers") {
    std::vector<mpq_class> ones(12, mpq_class(1));
    for (int n = 0; n <= 10; ++n) {
        mpq_class s = 0;
        for (int k = 0; k <= n; ++k) s += bell_polynomial(n, k, ones);
        CHECK(s == set_partitions(n));
    }
}

TEST_CASE("homogeneity") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> d(-6, 6);
    for (int trial = 0; trial < 10; ++trial) {
        long num = d(rng);
        mpq_class c = canon(num == 0 ? 3 : num, 1 + trial % 4);
        std::vector<mpq_class> x, cx;
        mpq_class cp = 1;
        for (int i = 0; i < 10; ++i) {
            x.push_back(canon(d(rng), 1 + i % 5));
            cp *= c;
            cx.push_back(cp * x.back());
        }
        for (int n = 1; n <= 8; ++n) {
            mpq_class cn = 1;
            for (int i = 0; i < n; ++i) cn *= c;
            for (int k = 1; k <= n; ++k) CHECK(bell_polynomial(n, k, cx) == cn * bell_polynomial(n, k, x));
        }
    }
}

TEST_CASE("Faa di Bruno") {
    // n = 1 is the chain rule
    std::vector<double> f = {2.5}, g = {-1.5};
    CHECK(faa_di_bruno(1, f, g) == doctest::Approx(-3.75));
    // exp(g(t)) with g = id at t: every derivative is exp(t)
    double e = std::exp(0.3);
    std::vector<double> fe(3, e), gid = {1.0, 0.0, 0.0};
    CHECK(faa_di_bruno(3, fe, gid) == doctest::Approx(e).epsilon(1e-15));
    // 1/y at y = a(t): second derivative -a''/a^2 + 2 a'^2/a^3
    std::vector<AFormPoly> fa = {AFormPoly::a(-2).scale(-1), AFormPoly::a(-3).scale(2)};
    std::vector<AFormPoly> ga = {AFormPoly::deriv(1), AFormPoly::deriv(2)};
    AFormPoly want = AFormPoly(AMonomial{-2, {{2, 1}}}, -1) + AFormPoly(AMonomial{-3, {{1, 2}}}, 2);
    CHECK(faa_di_bruno(2, fa, ga) == want);
}

TEST_CASE("generic carriers agree") {
    std::vector<SymPoly> xs;
    std::vector<double> xd;
    for (int i = 1; i <= 6; ++i) {
        xs.emplace_back(ExactScalar(mpq_class(i, 2)));
        xd.push_back(i / 2.0);
    }
    for (int n = 1; n <= 6; ++n)
        for (int k = 1; k <= n; ++k) {
            SymPoly s = bell_polynomial(n, k, xs);
            double v = s.is_zero() ? 0.0 : s.terms().begin()->second.to_double();
            CHECK(v == doctest::Approx(bell_polynomial(n, k, xd)).epsilon(1e-14));
        }
}
