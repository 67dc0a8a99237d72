#include <doctest.h>

#include <chrono>
#include <cmath>

#include "specexp/expansion.hpp"
#include "test_util.hpp"

using namespace specexp;

namespace {

SymPoly golden_ab(int M) { return sympoly_from_json(testutil::load_json("golden/a" + std::to_string(2 * M) + "_ab.json")); }

SymPoly total(const std::vector<MomentTerm>& ts) {
    SymPoly s;
    for (const auto& t : ts) s += t.sym.scale(t.scalar);
    return s;
}

int letter_sum(const MomentSpec& x) {
    int s = 0;
    for (auto [i, m] : x) s += i * m;
    return s;
}

}  // namespace

TEST_CASE("u and v series symbols") {
    auto t0 = uv_series_term(0);
    CHECK(t0.uSym == SymPoly(DerivMonomial::B(2)));
    CHECK(t0.vSym == SymPoly(DerivMonomial::dA(1)));
    auto t3 = uv_series_term(3);
    CHECK(t3.uSym == SymPoly(DerivMonomial::dB(3)));
    CHECK(t3.vSym == SymPoly(DerivMonomial::dA(4)));
    CHECK(t3.sqrt2Power == 3);
}

TEST_CASE("generalised binomial") {
    CHECK(binomial(mpq_class(-3, 2), 2) == mpq_class(15, 8));
    CHECK(binomial(mpq_class(5), 7) == 0);
    CHECK(binomial(mpq_class(1, 2), 0) == 1);
}

TEST_CASE("direct Laurent coefficients") {
    auto c0 = crm_direct(-3, 0, 0);
    REQUIRE(c0.size() == 1);
    CHECK(c0[0].scalar == ExactScalar(1));
    CHECK(c0[0].sym == SymPoly(DerivMonomial::B(-3)));
    CHECK(c0[0].xMultiset.empty());
    for (int M : {1, 3, 5})
        for (const auto& t : crm_direct(-1, 0, M)) CHECK(letter_sum(t.xMultiset) % 2 == 1);
    // enumeration bounds: letter sum N = M - 2n, parts bounded by M
    for (const auto& t : crm_direct(-1, 0, 2)) {
        int parts = 0;
        for (auto [i, m] : t.xMultiset) parts += m;
        CHECK(parts <= 2);
        CHECK(letter_sum(t.xMultiset) % 2 == 0);
    }
    // order 2, r = -1/2, m = 0, counted by hand: (n=1) B^{-3/2} A'^2 / 4 * (-1/2 choose 0)(2 choose 0);
    // (n=0) k=1 l=2, k=2 l=(1,1), k=1,... with 2^{N/2}
    SymPoly s = total(crm_direct(-1, 0, 2));
    DerivMonomial lead = DerivMonomial::B(-3) * DerivMonomial::dA(1, 2);
    CHECK(s.terms().at(lead) == ExactScalar::ratio(1, 4));
}

TEST_CASE("Bell route, trivial orders") {
    auto t = crm_bell(-5, 2, 0);
    REQUIRE(t.size() == 1);
    CHECK(t[0].sym == SymPoly(DerivMonomial::B(-5) * DerivMonomial::dA(1, 2)));
    auto u = crm_bell(-1, 0, 0);
    REQUIRE(u.size() == 1);
    CHECK(u[0].sym == SymPoly(DerivMonomial::B(-1)));
}

TEST_CASE("both routes agree before and after bridge integration") {
    const int pairs[3][2] = {{-3, 0}, {-5, 2}, {-1, 0}};
    for (auto& rm : pairs)
        for (int order = 0; order <= 6; ++order) {
            auto d = crm_direct(rm[0], rm[1], order);
            auto b = crm_bell(rm[0], rm[1], order);
            REQUIRE(d.size() == b.size());
            for (std::size_t i = 0; i < d.size(); ++i) {
                CHECK(d[i].scalar == b[i].scalar);
                CHECK(d[i].sym == b[i].sym);
                CHECK(d[i].xMultiset == b[i].xMultiset);
            }
            CHECK(integrate_bridge(d) == integrate_bridge(b));
        }
}

TEST_CASE("odd orders vanish after integration") {
    for (int order : {1, 3, 5, 7}) {
        CHECK(integrate_bridge(crm_direct(-3, 0, order)).is_zero());
        CHECK(integrate_bridge(crm_direct(-5, 2, order)).is_zero());
        CHECK(!total(crm_direct(-3, 0, order)).is_zero());
    }
}

TEST_CASE("integrate_bridge on single terms") {
    SymPoly s(DerivMonomial::dA(2));
    CHECK(integrate_bridge({{ExactScalar(3), s, {{1, 1}}}}).is_zero());
    CHECK(integrate_bridge({{ExactScalar(3), s, {{1, 2}}}}) == s.scale(ExactScalar::ratio(1, 4)));
    CHECK(integrate_bridge({{ExactScalar(3), s, {}}}) == s.scale(ExactScalar(3)));
    CHECK_THROWS_AS(integrate_bridge({{ExactScalar::sqrt2(), s, {}}}), std::logic_error);
}

TEST_CASE("heat coefficients match the published expressions") {
    for (int M = 0; M <= 4; ++M) {
        auto t0 = std::chrono::steady_clock::now();
        SymPoly a = a2M(M);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        INFO("M = " << M << " (" << secs << " s)");
        CHECK(a == golden_ab(M));
        for (const auto& [m, c] : a.terms()) CHECK(c.is_rational());
    }
}

TEST_CASE("scale-factor form of the first coefficients") {
    for (int M = 0; M <= 2; ++M) {
        auto g = aform_from_json(testutil::load_json("golden/a" + std::to_string(2 * M) + "_a.json"));
        CHECK(to_a_form(a2M(M)) == g);
    }
}

TEST_CASE("grading of every monomial") {
    for (int M = 1; M <= 4; ++M) {
        SymPoly ab = a2M(M);
        AFormPoly af = to_a_form(ab);
        for (const auto& [m, c] : ab.terms()) {
            CHECK(m.weight() % 2 == 0);
            CHECK((m.weight() == 2 * M - 2 || m.weight() == 2 * M));
        }
        for (const auto& [m, c] : af.terms()) {
            int k0 = m.aPow + 2 * M - 3, count = k0, weighted = 0;
            CHECK(k0 >= 0);
            for (auto [i, e] : m.derivExp) {
                count += e;
                weighted += i * e;
            }
            CHECK(count == weighted);
            CHECK((weighted == 2 * M - 2 || weighted == 2 * M));
        }
    }
}

TEST_CASE("pointwise values for model universes") {
    ScaleFactor empty{ScaleFamily::Empty, 2.0, {}};
    auto e = heat_trace_series(4, empty, 2.0);
    CHECK(e[1].value == doctest::Approx(3.0).epsilon(1e-13));  // (H^3 t - H t)/4
    for (int M = 2; M <= 4; ++M) CHECK(std::abs(e[M].value) < 1e-12);
    CHECK(e[0].power == -4);

    ScaleFactor matter{ScaleFamily::Matter, 1.0, {}};
    auto m = heat_trace_series(1, matter, 1.0);
    CHECK(m[1].value == doctest::Approx(0.125 - std::pow(1.5, 2.0 / 3.0) / 4).epsilon(1e-13));

    // inflation: a_0 = e^{3Ht}/2, a_4 = (11 H^4 e^{3Ht} - 5 H^2 e^{Ht}) / 120
    const double H = 0.7, t = 0.4;
    ScaleFactor infl{ScaleFamily::Inflation, H, {}};
    auto f = heat_trace_series(2, infl, t);
    CHECK(f[0].value == doctest::Approx(std::exp(3 * H * t) / 2).epsilon(1e-14));
    CHECK(f[1].value == doctest::Approx((2 * H * H * std::exp(3 * H * t) - std::exp(H * t)) / 4).epsilon(1e-13));
    CHECK(f[2].value ==
          doctest::Approx((11 * std::pow(H, 4) * std::exp(3 * H * t) - 5 * H * H * std::exp(H * t)) / 120).epsilon(1e-12));

    ScaleFactor sphere{ScaleFamily::Sphere, 1.0, {}};
    for (double tt : {0.3, 1.5708, 2.9})
        for (const auto& h : heat_trace_series(3, sphere, tt)) CHECK(std::isfinite(h.value));
    CHECK_THROWS_AS(heat_trace_series(2, sphere, 0.0), std::domain_error);

    ScaleFactor rad{ScaleFamily::Radiation, 2.0, {}};
    for (const auto& h : heat_trace_series(3, rad, 0.8)) CHECK(std::isfinite(h.value));
    CHECK_THROWS_AS(heat_trace_series(1, rad, -1.0), std::domain_error);

    // a = t^2: (a^2 a'' + a a'^2 - a)/4 = (6 t^4 - t^2)/4
    ScaleFactor user{ScaleFamily::User, 1.0, [](int i, double tt) {
                         return i == 0 ? tt * tt : (i == 1 ? 2 * tt : (i == 2 ? 2.0 : 0.0));
                     }};
    CHECK(heat_trace_series(1, user, 2.0)[1].value == doctest::Approx(23.0).epsilon(1e-14));
}
