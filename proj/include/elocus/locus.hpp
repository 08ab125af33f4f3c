#pragma once

// Continuation of elliptic representation paths from deformation seeds, tracked in the
// lifted angles (phi, psi) of the peripheral images, and the resulting arcs of the
// translation extension locus in (mu*, lambda*) coordinates.

#include <optional>
#include <vector>

#include "elocus/character_variety.hpp"
#include "elocus/core_algebra.hpp"
#include "elocus/representation.hpp"

namespace elocus {

struct LocusSample {
    double param{0.0};
    double phi{0.0};  // unwrapped, tr rho(mu) = 2 cos phi
    double psi{0.0};  // unwrapped, tr rho(sigma) = 2 cos psi
    double x{0.0};    // phi / pi
    double y{0.0};    // (-c phi + psi) / pi
    ElementClass side{ElementClass::Elliptic};
};

enum class TerminalKind { ParabolicEndpoint, WallHit, MaxSteps };

struct Terminal {
    TerminalKind kind{TerminalKind::MaxSteps};
    double x{0.0};
    double y{0.0};
};

struct LocusArc {
    TwistedTorusKnot knot{1, 1};
    DeformationSeed seed;
    std::vector<LocusSample> samples;
    Terminal terminal;
    // Set on arcs produced by the dihedral symmetry rather than traced directly.
    bool is_image{false};

    int homological_exponent() const { return knot.homological_exponent(); }
    // Argument of the Alexander root this arc belongs to (2 pi - theta for images).
    double root_theta() const;
};

struct TraceOptions {
    double max_dx{1e-3};          // per accepted step
    double max_dy{0.2};           // per accepted step
    double initial_step{1e-6};    // in parameter units
    double max_step{1e-2};
    double min_step{1e-14};
    long max_steps{1000000};
    double parabolic_band{kParabolicBand};
};

// Builds TraceOptions whose x-resolution gives about `samples` samples per unit of x.
TraceOptions options_for_samples(int samples);

// Lifts of arccos(trace/2): the value in {+-a + 2 pi n} nearest to `predicted`, and the
// distance from `predicted` to the runner-up.
struct LiftChoice {
    double value;
    double runner_up_gap;
};
LiftChoice nearest_lift(double trace, double predicted);

// Peripheral traces (tr rho(mu), tr rho(sigma)) on the seed's curve at parameter p.
std::pair<double, double> peripheral_traces_at(const DeformationSeed& seed, double p);

// Trace the arc from a seed on the SU(1,1) side. Throws DomainError for a seed without an
// SU(1,1) side and ConvergenceError when the step floor is hit.
LocusArc trace_arc(const DeformationSeed& seed, const TraceOptions& opts = {});

// RepPoint for a sample of a traced arc (realized in the better-conditioned normal form).
RepPoint realize_sample(const LocusArc& arc, std::size_t index,
                        double relator_tol = kRelatorTol);

struct SlopePoint {
    double param;
    double slope;
};

// Centered differences dy/dx at interior samples.
std::vector<SlopePoint> arc_slope_profile(const LocusArc& arc);

// Image of an arc under (x, y) -> (1 - x, -y): rotation about the origin followed by the
// unit horizontal translation.
LocusArc dihedral_image(const LocusArc& arc);

struct LocusDiagram {
    TwistedTorusKnot knot{1, 1};
    std::vector<LocusArc> arcs;  // traced arcs followed by their images
    double y_extent{0.0};        // 3k + 5: half-height of the plotting window
    double x_min{0.0};
    double x_max{1.0};

    std::vector<const LocusArc*> traced() const;
};

LocusDiagram dihedral_expand(const TwistedTorusKnot& knot, std::vector<LocusArc> arcs);

}  // namespace elocus
