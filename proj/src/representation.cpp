#include "elocus/representation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "elocus/errors.hpp"

namespace elocus {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_two_pi(double a) {
    a = std::fmod(a, kTwoPi);
    return a < 0.0 ? a + kTwoPi : a;
}

double circular_gap(double a, double b) {
    const double d = std::abs(wrap_two_pi(a) - wrap_two_pi(b));
    return std::min(d, kTwoPi - d);
}

// Shared construction. `diag_trace` belongs to the diagonal generator, `other_trace` to the
// generator carrying the off-diagonal entries R.
struct Angles {
    double diag_angle;
    double other_angle;
    double r_squared;
};

Angles solve_angles(double diag_trace, double other_trace, double r,
                    std::optional<double> diag_hint) {
    const double a0 = std::acos(diag_trace / 2.0);
    double diag_angle = a0;
    if (diag_hint && circular_gap(kTwoPi - a0, *diag_hint) < circular_gap(a0, *diag_hint)) {
        diag_angle = kTwoPi - a0;
    }
    const double sin_d = std::sin(diag_angle);
    const double tan_o = (diag_trace / 2.0 - r / other_trace) / sin_d;
    // other_trace = 2 sqrt(1 + R^2) cos(other_angle) fixes the sign of the cosine.
    const double cos_o = std::copysign(1.0 / std::sqrt(1.0 + tan_o * tan_o), other_trace);
    const double other_angle = wrap_two_pi(std::atan2(tan_o * cos_o, cos_o));
    const double r_squared = other_trace * other_trace * (1.0 + tan_o * tan_o) / 4.0 - 1.0;
    return {diag_angle, other_angle, r_squared};
}

Side side_of(double r_squared) {
    if (std::abs(r_squared) <= kWallTol) return Side::Boundary;
    return r_squared > 0.0 ? Side::SU11 : Side::SU2;
}

// [[sqrt(1+R^2) e^{i angle}, R], [R, sqrt(1+R^2) e^{-i angle}]], R imaginary when R^2 < 0.
Mat2C off_diagonal_generator(double angle, double r_squared) {
    const double d = std::sqrt(1.0 + r_squared);
    const Complex off = r_squared >= 0.0 ? Complex(std::sqrt(r_squared), 0.0)
                                         : Complex(0.0, std::sqrt(-r_squared));
    return {d * std::polar(1.0, angle), off, off, d * std::polar(1.0, -angle)};
}

void check_realization(RepPoint& rp, const TwistedTorusKnot& knot, double relator_tol) {
    const auto& tt = rp.traces;
    const double scale = std::max({1.0, std::abs(tt.t), std::abs(tt.s), std::abs(tt.r),
                                   1.0 + std::abs(rp.r_squared)});
    const double gap = std::max({std::abs(rp.a.trace() - tt.t), std::abs(rp.b.trace() - tt.s),
                                 std::abs((rp.a * rp.b).trace() - tt.r)});
    if (gap > kTraceMatchTol * scale) {
        throw InvariantViolation("realize: realized traces miss the character by " +
                                 std::to_string(gap));
    }
    if (!has_unit_determinant(rp.a) || !has_unit_determinant(rp.b)) {
        throw InvariantViolation("realize: generator determinant drifted from 1");
    }
    const double residual = verify_relation(rp.a, rp.b, knot).residual;
    if (!(residual <= relator_tol)) {
        throw InvariantViolation("realize: relator residual " + std::to_string(residual));
    }
}

void require_on_variety(const TraceTriple& tt, const TwistedTorusKnot& knot) {
    const double res = constraint_residual(tt, knot.k());
    if (!(res <= kConstraintTol)) {
        throw InvariantViolation("realize: character constraint residual " + std::to_string(res));
    }
}

bool a_form_applies(const TraceTriple& tt) { return std::abs(tt.t) < 2.0 && tt.s != 0.0; }
bool b_form_applies(const TraceTriple& tt) { return std::abs(tt.s) < 2.0 && tt.t != 0.0; }

}  // namespace

RepPoint realize(const TraceTriple& tt, const TwistedTorusKnot& knot,
                 std::optional<AngleHint> hint, double relator_tol) {
    if (tt.s == 0.0) throw DomainError("realize: s = 0");
    if (!(std::abs(tt.t) < 2.0)) throw DomainError("realize: |t| >= 2, A is not elliptic");
    require_on_variety(tt, knot);

    const Angles ang = solve_angles(tt.t, tt.s, tt.r,
                                    hint ? std::optional<double>(hint->alpha) : std::nullopt);
    RepPoint rp;
    rp.traces = tt;
    rp.alpha = ang.diag_angle;
    rp.beta = ang.other_angle;
    rp.r_squared = ang.r_squared;
    rp.side = side_of(ang.r_squared);
    rp.form = NormalForm::ADiagonal;
    rp.a = Mat2C::rotation(rp.alpha);
    rp.b = off_diagonal_generator(rp.beta, rp.r_squared);
    check_realization(rp, knot, relator_tol);
    return rp;
}

RepPoint realize_b_diagonal(const TraceTriple& tt, const TwistedTorusKnot& knot,
                            std::optional<AngleHint> hint, double relator_tol) {
    if (tt.t == 0.0) throw DomainError("realize_b_diagonal: t = 0");
    if (!(std::abs(tt.s) < 2.0)) throw DomainError("realize_b_diagonal: |s| >= 2, B is not elliptic");
    require_on_variety(tt, knot);

    const Angles ang = solve_angles(tt.s, tt.t, tt.r,
                                    hint ? std::optional<double>(hint->beta) : std::nullopt);
    RepPoint rp;
    rp.traces = tt;
    rp.beta = ang.diag_angle;
    rp.alpha = ang.other_angle;
    rp.r_squared = ang.r_squared;
    rp.side = side_of(ang.r_squared);
    rp.form = NormalForm::BDiagonal;
    rp.b = Mat2C::rotation(rp.beta);
    rp.a = off_diagonal_generator(rp.alpha, rp.r_squared);
    check_realization(rp, knot, relator_tol);
    return rp;
}

namespace {

// Off-diagonal size below which the A-diagonal form is kept even if B-diagonal is smaller.
constexpr double kPreferAUpTo = 10.0;

std::optional<NormalForm> preferred_form(const TraceTriple& tt) {
    const bool a_ok = a_form_applies(tt);
    const bool b_ok = b_form_applies(tt);
    if (!a_ok && !b_ok) return std::nullopt;
    if (!b_ok) return NormalForm::ADiagonal;
    if (!a_ok) return NormalForm::BDiagonal;
    const double ra = std::abs(solve_angles(tt.t, tt.s, tt.r, std::nullopt).r_squared);
    if (ra <= kPreferAUpTo) return NormalForm::ADiagonal;
    const double rb = std::abs(solve_angles(tt.s, tt.t, tt.r, std::nullopt).r_squared);
    return ra <= rb ? NormalForm::ADiagonal : NormalForm::BDiagonal;
}

}  // namespace

RepPoint realize_best(const TraceTriple& tt, const TwistedTorusKnot& knot,
                      std::optional<AngleHint> hint, double relator_tol) {
    const auto form = preferred_form(tt);
    if (!form) throw DomainError("realize: neither generator is elliptic");
    return *form == NormalForm::ADiagonal ? realize(tt, knot, hint, relator_tol)
                                          : realize_b_diagonal(tt, knot, hint, relator_tol);
}

std::optional<double> wall_function(const TraceTriple& tt) {
    const auto form = preferred_form(tt);
    if (!form) return std::nullopt;
    return *form == NormalForm::ADiagonal ? solve_angles(tt.t, tt.s, tt.r, std::nullopt).r_squared
                                          : solve_angles(tt.s, tt.t, tt.r, std::nullopt).r_squared;
}

RelationCheck verify_relation(const Mat2C& a, const Mat2C& b, const TwistedTorusKnot& knot) {
    const Relation rel = relator(knot);
    RelationCheck out;
    out.residual = distance(evaluate_word(rel.lhs, a, b), evaluate_word(rel.rhs, a, b));
    out.independence_margin = independence_margin(a, b);
    out.irreducible = out.independence_margin > kIrreducibilityThreshold;
    return out;
}

RelationCheck verify_relation(const RepPoint& rp, const TwistedTorusKnot& knot) {
    return verify_relation(rp.a, rp.b, knot);
}

double commutator_norm(const Mat2C& x, const Mat2C& y) { return distance(x * y, y * x); }

std::pair<Mat2C, Mat2C> peripheral_images(const RepPoint& rp, const TwistedTorusKnot& knot,
                                          double commutator_tol) {
    const PeripheralSystem ps = peripheral(knot);
    Mat2C mu = evaluate_word(ps.meridian, rp.a, rp.b);
    Mat2C sigma = evaluate_word(ps.sigma, rp.a, rp.b);
    const double c = commutator_norm(mu, sigma);
    if (!(c <= commutator_tol)) {
        throw InvariantViolation("peripheral_images: meridian and sigma fail to commute (" +
                                 std::to_string(c) + ")");
    }
    return {mu, sigma};
}

}  // namespace elocus
