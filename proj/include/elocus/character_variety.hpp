#pragma once

// Irreducible and reducible SL2 characters of the T^1_{3,3k+2} knot groups in the
// coordinates (t, s, r) = (tr A, tr B, tr AB), and the deformation seeds where the two
// families meet.

#include <array>
#include <vector>

#include "elocus/core_algebra.hpp"
#include "elocus/knot.hpp"

namespace elocus {

struct UnitCircleRoot {
    double theta{0.0};  // argument of the Alexander root, in (0, 2 pi)
    int multiplicity{1};
};

// Reducible character at z = e^{i theta_z}: a -> z^{3k+2}, b -> z^3 in the diagonal.
// Traces (2cos((3k+2)theta_z), 2cos(3 theta_z), 2cos((3k+5)theta_z)).
TraceTriple reducible_traces(const TwistedTorusKnot& knot, double theta_z);

// Reducible character attached to an Alexander root x = e^{i theta}: the meridian maps to
// diag(x^{1/2}, x^{-1/2}) with the principal square root, so theta_z = theta / 2.
TraceTriple reducible_traces_at_root(const TwistedTorusKnot& knot, double root_theta);

// k = 1: s = t/(t^2-1), r = 1 - 1/t^2.
TraceTriple irreducible_constraints_k1(double t);

// General k: the two solutions of t^2 - c(s) t - 1 = 0 with
// c(s) = -omega_{k-1}(s) + omega_k(s)^2 / omega_{k+1}(s), positive-t solution first.
std::array<TraceTriple, 2> irreducible_constraints_general(int k, double s);

// Same, returning only the solution on the requested side of t = 0.
TraceTriple irreducible_branch(int k, double s, int t_sign);

// Scaled residual of the irreducibility system at tt (0 for an exact solution).
double constraint_residual(const TraceTriple& tt, int k);

inline constexpr double kConstraintTol = 1e-8;
inline constexpr double kDegenerateMargin = 1e-9;

// Trace of rho(mu) and rho(sigma) from the character. Both check the constraints and
// cross-check the unsimplified trace expression against the closed form.
double meridian_trace(const TraceTriple& tt, int k);
double sigma_trace(const TraceTriple& tt, int k);

// The general-k closed forms, valid for every k >= 1 (at k = 1 they must agree with the
// k = 1 forms below). No constraint check.
double meridian_trace_general(const TraceTriple& tt, int k);
double sigma_trace_general(const TraceTriple& tt, int k);

// Closed forms m(t), l(t) for k = 1.
double meridian_trace_k1(double t);
double sigma_trace_k1(double t);

// tr(A^2 B^{-k}) computed from (t, s, r); equals 1/t on irreducible characters.
double trace_a2_bmk(const TraceTriple& tt, int k);

// Roots of the Alexander polynomial on the unit circle, both halves, sorted by theta.
std::vector<UnitCircleRoot> alexander_roots_unit_circle(const TwistedTorusKnot& knot);
std::vector<UnitCircleRoot> alexander_roots_unit_circle(const LaurentPoly& delta);

// Delta(e^{i theta}) for a symmetric polynomial, as the real cosine sum.
double alexander_on_circle(const LaurentPoly& delta, double theta);

enum class Side { SU11, SU2, Boundary };

// Continuation parameter of an arc: t for k = 1 (closed forms available), s otherwise.
enum class ArcParameter { T, S };

struct DeformationSeed {
    TwistedTorusKnot knot{1, 1};
    UnitCircleRoot root;
    TraceTriple seed_traces;
    double alpha0{0.0};  // (3k+2) theta / 2 mod 2 pi
    double beta0{0.0};   // 3 theta / 2 mod 2 pi
    Side side{Side::SU2};
    ArcParameter parameter{ArcParameter::T};
    int direction{0};  // +1 or -1 along the parameter toward the SU(1,1) side; 0 if none
    int t_sign{1};     // branch of the t-pair for S-parametrized arcs

    double seed_param() const {
        return parameter == ArcParameter::T ? seed_traces.t : seed_traces.s;
    }
};

inline constexpr double kSeedProbe = 1e-4;

// Character at parameter value p for the seed's parametrization and branch.
TraceTriple traces_at(const DeformationSeed& seed, double p);

// True when p is within kDegenerateMargin of a singular parameter value.
bool is_degenerate_parameter(const DeformationSeed& seed, double p);

// One seed per unit-circle root in (0, pi). Requires m = 1.
std::vector<DeformationSeed> deformation_seeds(const TwistedTorusKnot& knot);

// The seed for an arbitrary root (also roots in (pi, 2 pi), whose arcs are the dihedral
// images of those in (0, pi)).
DeformationSeed make_seed(const TwistedTorusKnot& knot, const UnitCircleRoot& root);

// Largest t in (t0, 1) with m(t) = 2, by bisection.
double parabolic_parameter_k1(double t0);

}  // namespace elocus
