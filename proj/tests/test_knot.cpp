#include <doctest.h>

#include <cmath>
#include <complex>

#include "elocus/errors.hpp"
#include "elocus/knot.hpp"
#include "test_support.hpp"

using namespace elocus;

namespace {

constexpr Generator A = Generator::A;
constexpr Generator B = Generator::B;

// Torus knot T(p, q) Alexander polynomial (t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1)),
// multiplied by t^{-(p-1)(q-1)/2} to make it symmetric.
Complex torus_alexander(int p, int q, Complex t) {
    const Complex f = (std::pow(t, p * q) - 1.0) * (t - 1.0) / ((std::pow(t, p) - 1.0) * (std::pow(t, q) - 1.0));
    return f * std::pow(t, -(p - 1) * (q - 1) / 2.0);
}

}  // namespace

TEST_CASE("knot parameters") {
    CHECK_THROWS_AS(TwistedTorusKnot(0, 1), DomainError);
    CHECK_THROWS_AS(TwistedTorusKnot(1, 0), DomainError);
    CHECK(TwistedTorusKnot(1, 1).homological_exponent() == 19);
    CHECK(TwistedTorusKnot(2, 1).homological_exponent() == 28);
    CHECK(TwistedTorusKnot(1, 2).homological_exponent() == 23);
}

TEST_CASE("words reduce on construction") {
    GroupWord w{{A, 2}, {A, -2}, {B, 1}};
    CHECK(w == GroupWord{{B, 1}});
    GroupWord x{{A, 1}, {B, 2}};
    CHECK((x * x.inverse()).empty());
    CHECK(x.to_string() == "ab^2");
    CHECK(x.inverse().to_string() == "b^-2a^-1");
    CHECK(GroupWord{}.to_string() == "1");
    CHECK(x.power(3).letters().size() == 6);
    CHECK(x.power(-1) == x.inverse());
}

TEST_CASE("relator words") {
    SUBCASE("k=1, m=1") {
        const Relation r = relator({1, 1});
        CHECK(r.lhs == GroupWord{{A, 2}, {B, -1}, {A, 2}});
        CHECK(r.rhs == GroupWord{{B, 2}, {A, 1}, {B, 2}});
    }
    SUBCASE("k=2, m=1") {
        const Relation r = relator({2, 1});
        CHECK(r.lhs == GroupWord{{A, 2}, {B, -2}, {A, 2}});
        CHECK(r.rhs == GroupWord{{B, 3}, {A, 1}, {B, 3}});
    }
    SUBCASE("k=1, m=2") {
        const Relation r = relator({1, 2});
        CHECK(r.lhs == GroupWord{{A, 2}, {B, -1}, {A, 1}, {B, -1}, {A, 2}});
        CHECK(r.rhs == GroupWord{{B, 2}, {A, 1}, {B, -1}, {A, 1}, {B, 2}});
    }
}

TEST_CASE("peripheral words") {
    const PeripheralSystem p11 = peripheral({1, 1});
    CHECK(p11.meridian == GroupWord{{A, -1}, {B, 2}});
    CHECK(p11.sigma == GroupWord{{A, 1}, {B, -1}, {A, 2}, {B, -1}, {A, 2}});
    CHECK(p11.homological_exponent == 19);
    const PeripheralSystem p21 = peripheral({2, 1});
    CHECK(p21.meridian == GroupWord{{A, -1}, {B, 3}});
    CHECK(p21.homological_exponent == 28);
    CHECK(peripheral({1, 2}).homological_exponent == 23);
}

TEST_CASE("abelianization kills the relator and the longitude") {
    for (int k = 1; k <= 4; ++k) {
        for (int m = 1; m <= 3; ++m) {
            const TwistedTorusKnot knot(k, m);
            const Relation r = relator(knot);
            CHECK(r.lhs.exponent_sum(3 * k + 2, 3) == r.rhs.exponent_sum(3 * k + 2, 3));
            const PeripheralSystem p = peripheral(knot);
            CHECK(p.meridian.exponent_sum(3 * k + 2, 3) == 1);
            // lambda = mu^{-c} sigma is null-homologous.
            CHECK(p.sigma.exponent_sum(3 * k + 2, 3) == p.homological_exponent);
        }
    }
}

TEST_CASE("evaluate_word") {
    const Mat2C a = elocus::testing::random_sl2();
    const Mat2C b = elocus::testing::random_sl2();
    CHECK(distance(evaluate_word(GroupWord{}, a, b), Mat2C::identity()) == 0.0);
    CHECK(distance(evaluate_word(GroupWord{{A, -1}, {B, 2}}, Mat2C::identity(), Mat2C::identity()),
                   Mat2C::identity()) < 1e-15);
    const Mat2C direct = a.adjugate() * b * b;
    CHECK(distance(evaluate_word(GroupWord{{A, -1}, {B, 2}}, a, b), direct) < 1e-10 * direct.frobenius_norm());
    CHECK_THROWS_AS(evaluate_word(GroupWord{{A, 1}}, Mat2C{2.0, 0.0, 0.0, 1.0}, b), InvariantViolation);
}

TEST_CASE("Laurent polynomial arithmetic") {
    const LaurentPoly x = LaurentPoly::monomial(1);
    const LaurentPoly one = LaurentPoly::monomial(0);
    const LaurentPoly p = (x - one) * (x + one);
    CHECK(p.coefficient(2) == 1);
    CHECK(p.coefficient(0) == -1);
    CHECK(p.divided_exactly_by(x - one) == x + one);
    CHECK_THROWS_AS(p.divided_exactly_by(x + x + one), InvariantViolation);
    CHECK(p.shifted(-1).min_degree() == -1);
    CHECK(p.at_one() == 0);
}

TEST_CASE("Alexander polynomial of the (-2,3,7) pretzel knot") {
    const LaurentPoly d = alexander({1, 1});
    CHECK(d.to_string() == "x^-5 - x^-4 + x^-2 - x^-1 + 1 - x + x^2 - x^4 + x^5");
    const std::map<int, LaurentPoly::Coeff> expected{{-5, 1}, {-4, -1}, {-2, 1}, {-1, -1}, {0, 1},
                                                     {1, -1}, {2, 1},   {4, -1},  {5, 1}};
    CHECK(d.terms() == expected);
}

TEST_CASE("Alexander polynomials are symmetric with value 1 at 1") {
    for (int k = 1; k <= 4; ++k) {
        for (int m = 1; m <= 2; ++m) {
            const LaurentPoly d = alexander({k, m});
            CHECK(d.is_symmetric());
            CHECK(d.at_one() == 1);
        }
        // Degree span is twice the genus 3k+2 when m = 1.
        const LaurentPoly d = alexander({k, 1});
        CHECK(d.max_degree() - d.min_degree() == 2 * (3 * k + 2));
    }
}

TEST_CASE("Fox calculus reproduces torus knot polynomials") {
    // Without the twist the relation collapses to a^3 = b^{3k+2}, the (3, 3k+2) torus knot.
    for (int k = 1; k <= 4; ++k) {
        const int q = 3 * k + 2;
        Relation rel{GroupWord{{A, 3}}, GroupWord{{B, q}}};
        const LaurentPoly d = alexander_from_relation(rel, q, 3);
        CHECK(d.max_degree() - d.min_degree() == 2 * q - 2);
        for (double th : {0.31, 1.1, 2.3}) {
            const Complex t = std::polar(1.0, th);
            CHECK(std::abs(d.evaluate(t) - torus_alexander(3, q, t)) < 1e-9);
        }
        CHECK(std::abs(d.evaluate(1.7) - torus_alexander(3, q, 1.7)) < 1e-8 * std::abs(d.evaluate(1.7)));
    }
}

TEST_CASE("Alexander polynomial rejects a relator that survives abelianization") {
    Relation rel{GroupWord{{A, 2}}, GroupWord{{B, 1}}};
    CHECK_THROWS_AS(alexander_from_relation(rel, 1, 1), DomainError);
}
