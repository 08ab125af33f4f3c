#pragma once

// Explicit SU(1,1) / SU(2) matrices realizing an irreducible character.

#include <optional>
#include <utility>

#include "elocus/character_variety.hpp"
#include "elocus/core_algebra.hpp"
#include "elocus/knot.hpp"

namespace elocus {

// Which generator is diagonal. A-diagonal is the working normal form; B-diagonal is used
// where A is not elliptic (|t| >= 2) or is badly conditioned, with the roles of (t, alpha)
// and (s, beta) exchanged.
enum class NormalForm { ADiagonal, BDiagonal };

struct RepPoint {
    TraceTriple traces;
    double alpha{0.0};
    double beta{0.0};
    double r_squared{0.0};
    Side side{Side::Boundary};
    NormalForm form{NormalForm::ADiagonal};
    Mat2C a;
    Mat2C b;
};

// Previous angles, used to choose the arccos/arctan representatives by continuity.
struct AngleHint {
    double alpha{0.0};
    double beta{0.0};
};

inline constexpr double kWallTol = 1e-10;
inline constexpr double kRelatorTol = 1e-8;
inline constexpr double kTraceMatchTol = 1e-9;

// A = diag(e^{i alpha}, e^{-i alpha}), B = [[sqrt(1+R^2) e^{i beta}, R], [R, conj]] with
// cos alpha = t/2, tan beta = (t/2 - r/s) / sin alpha, R^2 = (s / 2cos beta)^2 - 1.
// R^2 < 0 gives the SU(2) form with off-diagonal i sqrt(-R^2).
// Throws DomainError for s = 0 or |t| >= 2, InvariantViolation when tt is off the
// character variety or the realized pair misses the traces or the relation.
RepPoint realize(const TraceTriple& tt, const TwistedTorusKnot& knot,
                 std::optional<AngleHint> hint = std::nullopt,
                 double relator_tol = kRelatorTol);

// Same construction with B diagonal: cos beta = s/2, tan alpha = (s/2 - r/t) / sin beta,
// R^2 = (t / 2cos alpha)^2 - 1. Throws DomainError for t = 0 or |s| >= 2.
RepPoint realize_b_diagonal(const TraceTriple& tt, const TwistedTorusKnot& knot,
                            std::optional<AngleHint> hint = std::nullopt,
                            double relator_tol = kRelatorTol);

// Picks the better-conditioned normal form (smaller off-diagonal entries) among those that
// apply; A-diagonal when it applies and is not worse conditioned.
RepPoint realize_best(const TraceTriple& tt, const TwistedTorusKnot& knot,
                      std::optional<AngleHint> hint = std::nullopt,
                      double relator_tol = kRelatorTol);

// R^2 of the preferred normal form without building matrices; its sign gives the side.
std::optional<double> wall_function(const TraceTriple& tt);

struct RelationCheck {
    double residual{0.0};  // Frobenius norm of rho(lhs) - rho(rhs)
    bool irreducible{false};
    double independence_margin{0.0};
};

RelationCheck verify_relation(const RepPoint& rp, const TwistedTorusKnot& knot);
RelationCheck verify_relation(const Mat2C& a, const Mat2C& b, const TwistedTorusKnot& knot);

inline constexpr double kCommutatorTol = 1e-8;

// (rho(mu), rho(sigma)); throws InvariantViolation when they fail to commute.
std::pair<Mat2C, Mat2C> peripheral_images(const RepPoint& rp, const TwistedTorusKnot& knot,
                                          double commutator_tol = kCommutatorTol);

// Frobenius norm of XY - YX.
double commutator_norm(const Mat2C& x, const Mat2C& y);

}  // namespace elocus
