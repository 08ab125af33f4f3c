#include <doctest.h>

#include <cmath>

#include "elocus/character_variety.hpp"
#include "elocus/errors.hpp"
#include "elocus/knot.hpp"
#include "elocus/representation.hpp"
#include "test_support.hpp"

using namespace elocus;
using elocus::testing::uniform;

namespace {

const TwistedTorusKnot kK1{1, 1};

bool in_form(const RepPoint& rp, double tol) {
    if (rp.side == Side::SU11) return preserves_su11_form(rp.a, tol) && preserves_su11_form(rp.b, tol);
    return is_unitary(rp.a, tol) && is_unitary(rp.b, tol);
}

void check_traces(const RepPoint& rp, const TraceTriple& tt) {
    CHECK(std::abs(rp.a.trace() - tt.t) < 1e-9 * std::max(1.0, std::abs(tt.t)));
    CHECK(std::abs(rp.b.trace() - tt.s) < 1e-9 * std::max(1.0, std::abs(tt.s)));
    CHECK(std::abs((rp.a * rp.b).trace() - tt.r) < 1e-9 * std::max(1.0, std::abs(tt.r)));
}

}  // namespace

TEST_CASE("realize at t = 0.9 gives an SU(1,1) representation") {
    const TraceTriple tt = irreducible_constraints_k1(0.9);
    const RepPoint rp = realize(tt, kK1);
    CHECK(rp.side == Side::SU11);
    CHECK(rp.r_squared > 0.0);
    CHECK(rp.form == NormalForm::ADiagonal);
    CHECK(in_form(rp, 1e-10));
    check_traces(rp, tt);
    const RelationCheck rc = verify_relation(rp, kK1);
    CHECK(rc.residual < 1e-8);
    CHECK(rc.irreducible);
}

TEST_CASE("an SU(2) point on the k = 1 curve") {
    // Scan for a t whose realization is unitary.
    bool found = false;
    for (int i = 1; i < 400 && !found; ++i) {
        const double t = -1.99 + 3.98 * i / 400.0;
        if (std::abs(t) < 0.05 || std::abs(std::abs(t) - 1.0) < 0.05) continue;
        const TraceTriple tt = irreducible_constraints_k1(t);
        const auto w = wall_function(tt);
        if (!w || *w >= -1e-3) continue;
        const RepPoint rp = realize_best(tt, kK1);
        CHECK(rp.side == Side::SU2);
        CHECK(in_form(rp, 1e-9));
        check_traces(rp, tt);
        CHECK(verify_relation(rp, kK1).residual < 1e-8);
        found = true;
    }
    CHECK(found);
}

TEST_CASE("realize rejects degenerate and off-variety input") {
    CHECK_THROWS_AS(realize({0.9, 0.0, 0.3}, kK1), DomainError);
    CHECK_THROWS_AS(realize({2.5, 1.0, 0.3}, kK1), DomainError);
    CHECK_THROWS_AS(realize({2.0, 1.0, 0.3}, kK1), DomainError);
    CHECK_THROWS_AS(realize_b_diagonal({0.0, 0.5, 0.3}, kK1), DomainError);
    TraceTriple off = irreducible_constraints_k1(0.9);
    off.r += 0.01;
    CHECK_THROWS_AS(realize(off, kK1), InvariantViolation);
}

TEST_CASE("reducibility of trivial and perturbed pairs") {
    CHECK_FALSE(verify_relation(Mat2C::identity(), Mat2C::identity(), kK1).irreducible);
    CHECK(verify_relation(Mat2C::identity(), Mat2C::identity(), kK1).residual < 1e-15);

    const RepPoint rp = realize(irreducible_constraints_k1(0.85), kK1);
    const Mat2C b = rp.b * Mat2C{1.0, 1e-3, 0.0, 1.0};
    CHECK(verify_relation(rp.a, b, kK1).residual > 1e-5);
}

TEST_CASE("peripheral images match the closed-form traces") {
    for (int i = 0; i < 50; ++i) {
        double t = 0.0;
        do {
            t = uniform(-1.95, 1.95);
        } while (std::abs(t) < 0.1 || std::abs(std::abs(t) - 1.0) < 0.1);
        const TraceTriple tt = irreducible_constraints_k1(t);
        if (!wall_function(tt)) continue;
        const RepPoint rp = realize_best(tt, kK1);
        const auto [mu, sigma] = peripheral_images(rp, kK1);
        const double m = meridian_trace_k1(t);
        const double l = sigma_trace_k1(t);
        CHECK(std::abs(mu.trace() - m) < 1e-8 * std::max(1.0, std::abs(m)));
        CHECK(std::abs(sigma.trace() - l) < 1e-7 * std::max(1.0, std::abs(l)));
        CHECK(commutator_norm(mu, sigma) < 1e-8 * std::max(1.0, sigma.frobenius_norm() * mu.frobenius_norm()));
    }
}

TEST_CASE("both normal forms realize the same character") {
    const TwistedTorusKnot knot(2, 1);
    int used = 0;
    for (int i = 0; i < 200 && used < 20; ++i) {
        const double s = uniform(-1.9, 1.9);
        if (std::abs(s) < 0.1) continue;
        TraceTriple tt;
        try {
            tt = irreducible_branch(2, s, 1);
        } catch (const DomainError&) {
            continue;
        }
        if (std::abs(tt.t) >= 1.9 || std::abs(tt.t) < 0.1) continue;
        const RepPoint ra = realize(tt, knot);
        const RepPoint rb = realize_b_diagonal(tt, knot);
        CHECK(rb.form == NormalForm::BDiagonal);
        CHECK(ra.side == rb.side);
        check_traces(ra, tt);
        check_traces(rb, tt);
        CHECK(in_form(ra, 1e-8));
        CHECK(in_form(rb, 1e-8));
        CHECK(verify_relation(rb, knot).residual < 1e-8);
        ++used;
    }
    CHECK(used >= 10);
}

TEST_CASE("wall function sign gives the side") {
    for (int i = 0; i < 100; ++i) {
        double t = 0.0;
        do {
            t = uniform(-1.95, 1.95);
        } while (std::abs(t) < 0.1 || std::abs(std::abs(t) - 1.0) < 0.1);
        const TraceTriple tt = irreducible_constraints_k1(t);
        const auto w = wall_function(tt);
        if (!w || std::abs(*w) < 1e-6) continue;
        CHECK(realize_best(tt, kK1).side == (*w > 0.0 ? Side::SU11 : Side::SU2));
    }
}
