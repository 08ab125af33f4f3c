#include <doctest.h>

#include <cmath>
#include <numbers>

#include "elocus/core_algebra.hpp"
#include "elocus/errors.hpp"
#include "test_support.hpp"

using namespace elocus;
using elocus::testing::random_sl2;
using elocus::testing::random_su11;
using elocus::testing::uniform;

namespace {

Mat2C naive_power(const Mat2C& x, int k) {
    Mat2C out = Mat2C::identity();
    const Mat2C base = k >= 0 ? x : x.adjugate();
    for (int i = 0; i < std::abs(k); ++i) out = out * base;
    return out;
}

}  // namespace

TEST_CASE("omega values") {
    CHECK(omega(0, 1.7) == 0.0);
    CHECK(omega(1, -3.2) == 1.0);
    CHECK(omega(3, 2.0) == doctest::Approx(3.0));
    CHECK(omega(-2, 0.5) == doctest::Approx(-0.5));
    CHECK(omega(2, 0.3) == doctest::Approx(0.3));
}

TEST_CASE("omega recurrence on a grid") {
    for (int k = -10; k <= 10; ++k) {
        for (int i = 0; i <= 60; ++i) {
            const double x = -3.0 + 0.1 * i;
            const double lhs = omega(k + 1, x) - x * omega(k, x) + omega(k - 1, x);
            const double scale = std::max(1.0, std::abs(x * omega(k, x)));
            CHECK(std::abs(lhs) < 1e-12 * scale);
        }
    }
}

TEST_CASE("omega matches the Chebyshev form inside [-2, 2]") {
    // omega_k(2cos a) = sin(k a) / sin a
    for (int k = -6; k <= 6; ++k) {
        const double a = 0.37 + 0.1 * k;
        CHECK(omega(k, 2.0 * std::cos(a)) == doctest::Approx(std::sin(k * a) / std::sin(a)).epsilon(1e-12));
    }
}

TEST_CASE("matrix_power examples") {
    CHECK(distance(matrix_power(Mat2C::identity(), 5), Mat2C::identity()) < 1e-15);

    const Mat2C x = random_sl2();
    const Mat2C expected = x.trace() * Mat2C::identity() - x;
    CHECK(distance(matrix_power(x, -1), expected) < 1e-12);

    const double th = 0.83;
    CHECK(distance(matrix_power(Mat2C::rotation(th), 3), Mat2C::rotation(3 * th)) < 1e-12);
}

TEST_CASE("matrix_power agrees with repeated multiplication") {
    for (int trial = 0; trial < 20; ++trial) {
        const Mat2C x = random_sl2();
        for (int k = -8; k <= 8; ++k) {
            const Mat2C ref = naive_power(x, k);
            CHECK(distance(matrix_power(x, k), ref) < 1e-9 * std::max(1.0, ref.frobenius_norm()));
        }
    }
}

TEST_CASE("matrix_power rejects non-unimodular input") {
    const Mat2C x{2.0, 0.0, 0.0, 1.0};
    CHECK_THROWS_AS(matrix_power(x, 2), InvariantViolation);
}

TEST_CASE("trace identities on random SL2(C) pairs") {
    for (int trial = 0; trial < 50; ++trial) {
        const Mat2C x = random_sl2();
        const Mat2C y = random_sl2();
        const Mat2C xyx = x * y * x;
        const Mat2C rhs = (x * y).trace() * x - y.adjugate();
        CHECK(distance(xyx, rhs) < 1e-9 * std::max(1.0, xyx.frobenius_norm()));
        CHECK(std::abs((x * y).trace() - (y * x).trace()) < 1e-12 * std::max(1.0, (x * y).frobenius_norm()));
        CHECK(std::abs(x.adjugate().trace() - x.trace()) < 1e-12);
    }
}

TEST_CASE("classify") {
    CHECK(classify(Mat2C::identity(), 1e-9) == ElementClass::Identity);
    CHECK(classify(-1.0 * Mat2C::identity(), 1e-9) == ElementClass::Identity);
    CHECK(classify(Mat2C::rotation(1.0), 1e-9) == ElementClass::Elliptic);
    CHECK(classify(Mat2C{1.0, 1.0, 0.0, 1.0}, 1e-9) == ElementClass::Parabolic);
    CHECK(classify(Mat2C{-1.0, 1.0, 0.0, -1.0}, 1e-9) == ElementClass::Parabolic);
    CHECK(classify(Mat2C{2.0, 0.0, 0.0, 0.5}, 1e-9) == ElementClass::Hyperbolic);
    // trace 2.5
    CHECK(classify(Mat2C{2.0, 1.0, -0.0, 0.5}, 1e-9) == ElementClass::Hyperbolic);
}

TEST_CASE("irreducibility by the rank-4 criterion") {
    CHECK_FALSE(pair_is_irreducible(Mat2C::identity(), Mat2C::identity()));
    // Common eigenvector e1.
    const Mat2C u1{2.0, 3.0, 0.0, 0.5};
    const Mat2C u2{Complex(0.0, 1.0), 1.0, 0.0, Complex(0.0, -1.0)};
    CHECK_FALSE(pair_is_irreducible(u1, u2));
    CHECK(pair_is_irreducible(Mat2C::rotation(0.4), Mat2C{1.0, 1.0, 1.0, 2.0}));
}

TEST_CASE("SU(1,1) and SU(2) membership") {
    const Mat2C g = random_su11();
    CHECK(preserves_su11_form(g, 1e-10));
    CHECK(is_unitary(Mat2C::rotation(0.3), 1e-12));
    CHECK_FALSE(is_unitary(Mat2C{2.0, 0.0, 0.0, 0.5}, 1e-6));
}

TEST_CASE("translation number oracle on rotations") {
    CHECK(std::abs(translation_number_oracle(Mat2C::rotation(0.7), 0.0, 2000) - 0.7 / std::numbers::pi) < 1e-3);
    for (int i = 0; i < 20; ++i) {
        const double phi = uniform(0.01, std::numbers::pi - 0.01);
        const double est = translation_number_oracle(Mat2C::rotation(phi), phi / std::numbers::pi, 2000);
        CHECK(std::abs(est - phi / std::numbers::pi) < 1e-3);
    }
}

TEST_CASE("translation number oracle is a conjugacy invariant in SU(1,1)") {
    for (int i = 0; i < 5; ++i) {
        const double phi = uniform(0.2, 2.9);
        const Mat2C g = random_su11();
        const Mat2C x = g * Mat2C::rotation(phi) * g.adjugate();
        const double est = translation_number_oracle(x, phi / std::numbers::pi, 4000);
        CHECK(std::abs(est - phi / std::numbers::pi) < 1e-3);
    }
}

TEST_CASE("translation number oracle: identity and parabolic") {
    CHECK(translation_number_oracle(Mat2C::identity(), 2.3, 200) == doctest::Approx(2.0));
    CHECK(translation_number_oracle(Mat2C::identity(), -0.8, 200) == doctest::Approx(-1.0));
    const double u = 0.6;
    const Mat2C p{Complex(1.0, u), u, u, Complex(1.0, -u)};
    REQUIRE(std::abs(p.trace() - 2.0) < 1e-15);
    CHECK(std::abs(translation_number_oracle(p, 0.0, 4000)) < 1e-3);
}

TEST_CASE("translation number oracle errors") {
    CHECK_THROWS_AS(translation_number_oracle(Mat2C{1.0, 1.0, 0.0, 1.0}, 0.0, 1000), DomainError);
    CHECK_THROWS_AS(translation_number_oracle(Mat2C::rotation(0.4), 0.0, 50), DomainError);
}
