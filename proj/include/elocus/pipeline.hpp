#pragma once

// End-to-end run: Alexander polynomial, roots, seeds, arcs, diagram, orderable range.

#include <optional>
#include <string>
#include <vector>

#include "elocus/character_variety.hpp"
#include "elocus/knot.hpp"
#include "elocus/locus.hpp"
#include "elocus/orderability.hpp"

namespace elocus {

struct PipelineOptions {
    int samples{1000};  // samples per unit of x
    double parabolic_band{kParabolicBand};
    double relator_tol{kRelatorTol};
    // Trace only the seed with this index (into the roots in (0, pi)).
    std::optional<std::size_t> seed_root;
    // Worker threads; 0 reads LOCUS_THREADS (default 1).
    unsigned threads{0};
    // Realize every n-th sample to check the relation; 0 disables the check.
    std::size_t verify_stride{10};
};

struct PipelineResult {
    TwistedTorusKnot knot{1, 1};
    LaurentPoly alexander;
    std::vector<UnitCircleRoot> roots;
    std::vector<DeformationSeed> seeds;
    LocusDiagram diagram;
    std::optional<OrderableRange> range;
    double max_relator_residual{0.0};
    double max_commutator_norm{0.0};
    std::size_t verified_points{0};
    // Seeds that contributed no arc (no SU(1,1) side).
    std::vector<double> untraced_roots;
};

// Errors are rethrown as StageError naming the stage.
PipelineResult run_pipeline(const TwistedTorusKnot& knot, const PipelineOptions& opts = {});

// Worker count from LOCUS_THREADS (at least 1).
unsigned worker_count_from_env();

// One "key: value" per line.
std::string summary_text(const PipelineResult& r);

struct ArcSlope {
    double root_theta{0.0};
    double mean_slope{0.0};
};

struct ObservationReport {
    int k{0};
    double slope_target{0.0};  // 3(3k+2) + 4
    std::vector<ArcSlope> line_slopes;
    bool slopes_within_one{false};
    bool separation_ok{false};
    double longest_arc_root_theta{0.0};
    double max_height_x{0.0};
    double max_height_y{0.0};
    bool monotonicity_ok{false};
    std::size_t untraced_roots{0};
};

struct OracleCheck {
    std::size_t points{0};
    double max_deviation{0.0};  // |phi/pi - oracle| over the checked samples
};

// Compares phi/pi with the iterated-action translation number of rho(mu) at `count`
// interior samples spread evenly over the traced arcs.
OracleCheck translation_oracle_check(const LocusDiagram& d, std::size_t count, int n_iter = 4000);

// Observations on the traced arcs of a diagram produced by run_pipeline.
ObservationReport observations_report(const PipelineResult& r);
std::string report_text(const ObservationReport& rep);

}  // namespace elocus
