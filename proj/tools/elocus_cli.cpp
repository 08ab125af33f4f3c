// elocus: translation extension loci of the twisted torus knots T^m_{3,3k+2}.
//
// Exit codes: 0 success, 1 bad arguments, 2 computation failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "elocus/character_variety.hpp"
#include "elocus/emit.hpp"
#include "elocus/errors.hpp"
#include "elocus/knot.hpp"
#include "elocus/locus.hpp"
#include "elocus/orderability.hpp"
#include "elocus/pipeline.hpp"

namespace {

using namespace elocus;

constexpr int kMaxK = 8;

struct BadArgument : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Args {
    int k{1};
    int m{1};
    int samples{1000};
    std::string out;
    std::string emit;
    std::string exceptional;
    std::optional<std::size_t> seed_root;
    std::string slope;
    bool allow_large{false};
    double parabolic_band{kParabolicBand};
    double relator_tol{kRelatorTol};
    int oracle_points{20};
};

std::string num(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

TwistedTorusKnot knot_from(const Args& a, bool locus_command) {
    if (a.k < 1 || a.m < 1) throw BadArgument("k and m must be positive");
    if (a.k > kMaxK && !a.allow_large) {
        throw BadArgument("k = " + std::to_string(a.k) + " is out of range [1, " +
                          std::to_string(kMaxK) + "] (use --allow-large)");
    }
    if (locus_command && a.m != 1) throw BadArgument("locus commands require m = 1");
    return {a.k, a.m};
}

PipelineOptions pipeline_options(const Args& a) {
    if (a.samples < 10) throw BadArgument("--samples must be at least 10");
    PipelineOptions o;
    o.samples = a.samples;
    o.parabolic_band = a.parabolic_band;
    o.relator_tol = a.relator_tol;
    o.seed_root = a.seed_root;
    return o;
}

int cmd_alexander(const Args& a) {
    const TwistedTorusKnot knot = knot_from(a, false);
    const LaurentPoly delta = alexander(knot);
    std::cout << "alexander: " << delta.to_string() << '\n';
    std::cout << "degree span: " << delta.max_degree() - delta.min_degree() << '\n';
    std::cout << "delta(1): " << delta.at_one() << '\n';
    return 0;
}

int cmd_roots(const Args& a) {
    const TwistedTorusKnot knot = knot_from(a, false);
    const auto roots = alexander_roots_unit_circle(knot);
    std::cout << "unit circle roots: " << roots.size() << '\n';
    for (std::size_t i = 0; i < roots.size(); ++i) {
        std::cout << "root " << i << ": " << num("%.12f", roots[i].theta) << " (multiplicity "
                  << roots[i].multiplicity << ")\n";
    }
    return 0;
}

int cmd_seeds(const Args& a) {
    const TwistedTorusKnot knot = knot_from(a, true);
    const auto seeds = deformation_seeds(knot);
    std::cout << "seeds: " << seeds.size() << '\n';
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const auto& s = seeds[i];
        std::cout << "seed " << i << ": theta " << num("%.10f", s.root.theta) << ", t "
                  << num("%.10f", s.seed_traces.t) << ", s " << num("%.10f", s.seed_traces.s)
                  << ", r " << num("%.10f", s.seed_traces.r) << ", side "
                  << (s.side == Side::SU11 ? "su11" : s.side == Side::SU2 ? "su2" : "boundary")
                  << ", parameter " << (s.parameter == ArcParameter::T ? "t" : "s")
                  << ", direction " << s.direction << '\n';
    }
    return 0;
}

void write_artifacts(const Args& a, const PipelineResult& r) {
    if (a.emit.empty()) return;
    const std::filesystem::path dir = a.out.empty() ? std::filesystem::path(".") : std::filesystem::path(a.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    const std::string stem = "locus_k" + std::to_string(r.knot.k()) + "_m" + std::to_string(r.knot.m());
    if (a.emit == "csv" || a.emit == "both") {
        write_text_file(dir / (stem + ".csv"), to_csv(r.diagram));
        std::cout << "csv: " << (dir / (stem + ".csv")).string() << '\n';
    }
    if (a.emit == "svg" || a.emit == "both") {
        write_text_file(dir / (stem + ".svg"), to_svg(r.diagram));
        std::cout << "svg: " << (dir / (stem + ".svg")).string() << '\n';
    }
}

int cmd_locus(const Args& a) {
    const TwistedTorusKnot knot = knot_from(a, true);
    const PipelineResult r = run_pipeline(knot, pipeline_options(a));
    std::cout << summary_text(r);
    write_artifacts(a, r);
    return 0;
}

int cmd_orderable(const Args& a) {
    const TwistedTorusKnot knot = knot_from(a, true);
    std::optional<std::vector<Rational>> exceptional;
    if (!a.exceptional.empty()) {
        ExceptionalConfig cfg;
        try {
            cfg = load_exceptional_config(a.exceptional);
        } catch (const DomainError& e) {
            throw BadArgument(e.what());
        }
        if (cfg.k != a.k || cfg.m != a.m) throw BadArgument("exceptional config is for a different knot");
        exceptional = cfg.exceptional;
    }
    std::optional<Rational> slope;
    if (!a.slope.empty()) {
        try {
            slope = Rational::parse(a.slope);
        } catch (const DomainError& e) {
            throw BadArgument(e.what());
        }
    }
    PipelineOptions opts = pipeline_options(a);
    opts.seed_root.reset();
    const PipelineResult r = run_pipeline(knot, opts);
    std::cout << "k: " << a.k << '\n';
    std::cout << "m: " << a.m << '\n';
    std::cout << "orderable slopes: " << r.range->to_string() << '\n';
    if (slope) {
        const SurgeryVerdict v = verdict(knot, *slope, r.diagram, exceptional);
        std::cout << "slope: " << v.r.to_string() << '\n';
        std::cout << "verdict: " << to_string(v.outcome) << '\n';
        if (v.witness) {
            std::cout << "witness: (" << num("%.9f", v.witness->x) << ", " << num("%.9f", v.witness->y)
                      << ") on arc " << v.witness->arc_index << '\n';
        }
        std::cout << "assumptions:";
        for (const auto& s : v.assumptions) std::cout << ' ' << s;
        std::cout << (v.assumptions.empty() ? " none\n" : "\n");
    }
    return 0;
}

int cmd_report(const Args& a) {
    const TwistedTorusKnot knot = knot_from(a, true);
    PipelineOptions opts = pipeline_options(a);
    opts.seed_root.reset();
    const PipelineResult r = run_pipeline(knot, opts);
    std::cout << report_text(observations_report(r));
    return 0;
}

int cmd_oracle_check(const Args& a) {
    const TwistedTorusKnot knot = knot_from(a, true);
    if (a.oracle_points < 1) throw BadArgument("--points must be positive");
    PipelineOptions opts = pipeline_options(a);
    const PipelineResult r = run_pipeline(knot, opts);
    const OracleCheck oc = translation_oracle_check(r.diagram, static_cast<std::size_t>(a.oracle_points));
    std::cout << "oracle points: " << oc.points << '\n';
    std::cout << "max deviation: " << num("%.3e", oc.max_deviation) << '\n';
    const bool ok = oc.max_deviation < 1e-3;
    std::cout << "oracle agreement: " << (ok ? "yes" : "no") << '\n';
    return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Translation extension loci and orderable surgeries of twisted torus knots"};
    app.require_subcommand(1);
    Args args;

    auto add_knot = [&](CLI::App* sub) {
        sub->add_option("--k", args.k, "Twist family index k (1..8)");
        sub->add_option("--m", args.m, "Number of full twists m");
        sub->add_flag("--allow-large", args.allow_large, "Allow k above 8");
    };
    auto add_trace = [&](CLI::App* sub) {
        sub->add_option("--samples", args.samples, "Samples per unit of x along each arc");
        sub->add_option("--parabolic-band", args.parabolic_band, "Termination band below |tr| = 2");
        sub->add_option("--relator-tol", args.relator_tol, "Relator residual tolerance");
    };

    auto* alex = app.add_subcommand("alexander", "Alexander polynomial by Fox calculus");
    add_knot(alex);
    auto* roots = app.add_subcommand("roots", "Roots of the Alexander polynomial on the unit circle");
    add_knot(roots);
    auto* seeds = app.add_subcommand("seeds", "Deformation seeds at the roots in (0, pi)");
    add_knot(seeds);
    auto* locus = app.add_subcommand("locus", "Trace the locus and write CSV/SVG");
    add_knot(locus);
    add_trace(locus);
    locus->add_option("--out", args.out, "Output directory");
    locus->add_option("--emit", args.emit, "Artifacts to write")->check(CLI::IsMember({"csv", "svg", "both"}));
    locus->add_option("--seed-root", args.seed_root, "Trace only this seed index");
    auto* ord = app.add_subcommand("orderable", "Orderable slope interval and per-slope verdicts");
    add_knot(ord);
    add_trace(ord);
    ord->add_option("--slope", args.slope, "Surgery slope p/q");
    ord->add_option("--exceptional", args.exceptional, "JSON file listing exceptional slopes");
    auto* rep = app.add_subcommand("report", "Observations on the traced locus");
    add_knot(rep);
    add_trace(rep);
    auto* oracle = app.add_subcommand("oracle-check", "Translation numbers against iterated actions");
    add_knot(oracle);
    add_trace(oracle);
    oracle->add_option("--points", args.oracle_points, "Number of samples to check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*alex) return cmd_alexander(args);
        if (*roots) return cmd_roots(args);
        if (*seeds) return cmd_seeds(args);
        if (*locus) return cmd_locus(args);
        if (*ord) return cmd_orderable(args);
        if (*rep) return cmd_report(args);
        if (*oracle) return cmd_oracle_check(args);
    } catch (const BadArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const StageError& e) {
        std::cerr << "error in stage " << e.stage() << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
