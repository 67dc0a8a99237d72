#include <doctest.h>

#include <cmath>
#include <random>

#include "specexp/symcore.hpp"
#include "test_util.hpp"

using namespace specexp;

namespace {

SymPoly B(int half) { return SymPoly(DerivMonomial::B(half)); }
SymPoly dA(int i, int e = 1) { return SymPoly(DerivMonomial::dA(i, e)); }
SymPoly dB(int i, int e = 1) { return SymPoly(DerivMonomial::dB(i, e)); }
ExactScalar q(long p, long d) { return ExactScalar::ratio(p, d); }
AFormPoly am(long p, long d, int aPow, std::map<int, int> der = {}) {
    return AFormPoly(AMonomial{aPow, std::move(der)}, mpq_class(p, d));
}

}  // namespace

TEST_CASE("exact scalar arithmetic in Q(sqrt 2)") {
    ExactScalar r = ExactScalar::sqrt2();
    CHECK(r * r == ExactScalar(2));
    ExactScalar x(mpq_class(3, 4), mpq_class(-5, 6));
    CHECK(x * x.inverse() == ExactScalar(1));
    CHECK((x - x).is_zero());
    CHECK(ExactScalar(mpq_class(2, 4)).rat0() == mpq_class(1, 2));
    CHECK(std::abs(x.to_double() - (0.75 - 5.0 / 6.0 * std::sqrt(2.0))) < 1e-15);
    CHECK_THROWS_AS(ExactScalar(0).inverse(), std::domain_error);
}

TEST_CASE("ring operations and canonical form") {
    SymPoly p = B(-3).scale(q(1, 2)) + dA(1, 2);
    CHECK(SymPoly() + p == p);
    SymPoly rootB1 = dB(1).scale(ExactScalar::sqrt2());
    CHECK(rootB1 * rootB1 == dB(1, 2).scale(ExactScalar(2)));
    CHECK(B(-3) * B(1) == B(-2));
    CHECK((p - p).is_zero());
    CHECK(p.canonical() == p);
    CHECK(p.canonical().canonical() == p.canonical());
}

TEST_CASE("ring laws on random polynomials") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 25; ++it) {
        SymPoly a = testutil::random_sympoly(rng), b = testutil::random_sympoly(rng),
                c = testutil::random_sympoly(rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("differentiation") {
    CHECK(differentiate(B(1)) == (B(-1) * dB(1)).scale(q(1, 2)));
    CHECK(differentiate(dA(1, 2)) == (dA(1) * dA(2)).scale(ExactScalar(2)));
    CHECK(differentiate(B(-3)) == (B(-5) * dB(1)).scale(q(-3, 2)));
    CHECK(differentiate(SymPoly(ExactScalar(7))).is_zero());
}

TEST_CASE("substitution A = 1/a") {
    CHECK(to_a_form(B(-3).scale(q(1, 2))) == am(1, 2, 3));
    CHECK(to_a_form(dA(1)) == am(-1, 1, -2, {{1, 1}}));
    CHECK(to_a_form(dA(2)) == am(-1, 1, -2, {{2, 1}}) + am(2, 1, -3, {{1, 2}}));
    CHECK(to_a_form(B(2)) == am(1, 1, -2));
    CHECK(to_a_form(dB(1)) == am(-2, 1, -3, {{1, 1}}));
    CHECK_THROWS_AS(to_a_form(dA(1).scale(ExactScalar::sqrt2())), std::domain_error);
}

TEST_CASE("differentiation commutes with substitution") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 30; ++it) {
        SymPoly p = testutil::random_sympoly(rng, 4, false);
        CHECK(to_a_form(differentiate(p)) == differentiate(to_a_form(p)));
    }
}

TEST_CASE("numeric evaluation") {
    SymPoly a0 = B(-3).scale(q(1, 2));
    auto infl = [](int i) { return 1.0; };  // e^{Ht} at H = 1, t = 0
    CHECK(eval_numeric(a0, infl) == doctest::Approx(0.5).epsilon(1e-15));
    SymPoly a2 = (dA(1, 2) * B(-5)).scale(q(3, 8)) - (dB(2) * B(-5)).scale(q(1, 8)) +
                 (dB(1, 2) * B(-7)).scale(q(5, 32)) - B(-1).scale(q(1, 4));
    auto empty = [](int i) { return i == 0 ? 6.0 : (i == 1 ? 3.0 : 0.0); };  // a = 3t at t = 2
    CHECK(eval_numeric(a2, empty) == doctest::Approx(12.0).epsilon(1e-14));
    auto flat = [](int i) { return i == 0 ? 1.0 : 0.0; };
    CHECK(eval_numeric(a2, flat) == doctest::Approx(-0.25).epsilon(1e-15));
    auto zero = [](int) { return 0.0; };
    CHECK_THROWS_AS(eval_numeric(a2, zero), std::domain_error);
}

TEST_CASE("rendering") {
    CHECK(to_text(B(-3).scale(q(1, 2))) == "1/2 * B^(-3/2)");
    CHECK(to_text(dA(1, 2) - dB(4)) == "-B(4) + A'^2");
    CHECK(to_text(am(1, 2, 3)) == "1/2 * a^3");
    CHECK(to_latex((dA(1, 2) * B(-5)).scale(q(3, 8))) == "\\frac{3}{8} A'(t)^{2} B(t)^{-5/2}");
    CHECK(to_text(SymPoly()) == "0");
}

TEST_CASE("JSON round trip is exact") {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 20; ++it) {
        SymPoly p = testutil::random_sympoly(rng, 6);
        CHECK(sympoly_from_json(to_json(p)) == p);
        auto text = to_json(p).dump();
        CHECK(to_json(sympoly_from_json(nlohmann::json::parse(text))).dump() == text);
    }
    mpz_class big("123456789012345678901234567890");
    SymPoly huge(DerivMonomial::B(1), ExactScalar(mpq_class(big, 7)));
    CHECK(sympoly_from_json(to_json(huge)) == huge);
    AFormPoly f = am(-3, 7, 2, {{1, 2}}) + am(1, 5, -1);
    CHECK(aform_from_json(to_json(f)) == f);
}
