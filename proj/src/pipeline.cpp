#include "elocus/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "elocus/errors.hpp"
#include "elocus/representation.hpp"

namespace elocus {

namespace {

template <class F>
auto staged(const char* stage, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(stage, e.what());
    }
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

// Traces the arcs in parallel; results keep seed order.
std::vector<LocusArc> trace_all(const std::vector<DeformationSeed>& seeds, const TraceOptions& to,
                                unsigned threads) {
    std::vector<std::optional<LocusArc>> out(seeds.size());
    std::vector<std::exception_ptr> errors(seeds.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < seeds.size(); i = next++) {
            try {
                out[i] = trace_arc(seeds[i], to);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(seeds.size())));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    std::vector<LocusArc> arcs;
    arcs.reserve(out.size());
    for (auto& a : out) arcs.push_back(std::move(*a));
    return arcs;
}

}  // namespace

unsigned worker_count_from_env() {
    const char* v = std::getenv("LOCUS_THREADS");
    if (!v) return 1;
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 1) return 1;
    return static_cast<unsigned>(std::min(n, 256L));
}

PipelineResult run_pipeline(const TwistedTorusKnot& knot, const PipelineOptions& opts) {
    PipelineResult res;
    res.knot = knot;
    res.alexander = staged("alexander", [&] { return alexander(knot); });
    res.roots = staged("roots", [&] { return alexander_roots_unit_circle(res.alexander); });

    std::vector<DeformationSeed> all = staged("seeds", [&] { return deformation_seeds(knot); });
    if (opts.seed_root) {
        if (*opts.seed_root >= all.size()) {
            throw StageError("seeds", "seed root index " + std::to_string(*opts.seed_root) +
                                          " out of range (" + std::to_string(all.size()) + " seeds)");
        }
        all = {all[*opts.seed_root]};
    }
    res.seeds = all;
    std::vector<DeformationSeed> traceable;
    for (const auto& s : all) {
        if (s.side == Side::SU11) {
            traceable.push_back(s);
        } else {
            res.untraced_roots.push_back(s.root.theta);
        }
    }

    TraceOptions to = staged("trace", [&] { return options_for_samples(opts.samples); });
    to.parabolic_band = opts.parabolic_band;
    const unsigned threads = opts.threads ? opts.threads : worker_count_from_env();
    std::vector<LocusArc> arcs = staged("trace", [&] { return trace_all(traceable, to, threads); });

    if (opts.verify_stride > 0) {
        staged("verify", [&] {
            for (const LocusArc& arc : arcs) {
                for (std::size_t i = 0; i < arc.samples.size(); i += opts.verify_stride) {
                    const RepPoint rp = realize_sample(arc, i, opts.relator_tol);
                    res.max_relator_residual =
                        std::max(res.max_relator_residual, verify_relation(rp, knot).residual);
                    const auto [mu, sigma] = peripheral_images(rp, knot);
                    res.max_commutator_norm = std::max(res.max_commutator_norm, commutator_norm(mu, sigma));
                    ++res.verified_points;
                }
            }
            return 0;
        });
    }

    res.diagram = dihedral_expand(knot, std::move(arcs));
    if (!opts.seed_root) {
        res.range = staged("orderable", [&] { return orderable_range(res.diagram); });
    } else {
        try {
            res.range = orderable_range(res.diagram);
        } catch (const NoParabolicEndpoint&) {
        }
    }
    return res;
}

OracleCheck translation_oracle_check(const LocusDiagram& d, std::size_t count, int n_iter) {
    std::vector<std::pair<const LocusArc*, std::size_t>> pool;
    for (const LocusArc* a : d.traced()) {
        for (std::size_t i = 1; i + 1 < a->samples.size(); ++i) pool.emplace_back(a, i);
    }
    if (pool.empty() || count == 0) throw DomainError("translation_oracle_check: no interior samples");
    OracleCheck out;
    const std::size_t n = std::min(count, pool.size());
    for (std::size_t j = 0; j < n; ++j) {
        const auto [arc, i] = pool[(2 * j + 1) * pool.size() / (2 * n)];
        const RepPoint rp = realize_sample(*arc, i);
        const auto [mu, sigma] = peripheral_images(rp, arc->knot);
        const double x = arc->samples[i].x;
        const double est = translation_number_oracle(mu, x, n_iter);
        out.max_deviation = std::max(out.max_deviation, std::abs(est - x));
        ++out.points;
    }
    return out;
}

std::string summary_text(const PipelineResult& r) {
    std::ostringstream os;
    os << "k: " << r.knot.k() << '\n';
    os << "m: " << r.knot.m() << '\n';
    os << "homological exponent: " << r.knot.homological_exponent() << '\n';
    os << "alexander: " << r.alexander.to_string() << '\n';
    os << "unit circle roots: " << r.roots.size() << '\n';
    os << "seeds: " << r.seeds.size() << '\n';
    os << "arcs traced: " << r.diagram.traced().size() << '\n';
    os << "arcs in diagram: " << r.diagram.arcs.size() << '\n';
    if (!r.untraced_roots.empty()) {
        os << "roots without arc:";
        for (double th : r.untraced_roots) os << ' ' << fmt("%.6f", th);
        os << '\n';
    }
    os << "parabolic endpoints:";
    for (const LocusArc* a : r.diagram.traced()) {
        if (a->terminal.kind != TerminalKind::ParabolicEndpoint) continue;
        os << " (" << fmt("%.6f", a->terminal.x) << ", " << fmt("%.6f", a->terminal.y) << ')';
    }
    os << '\n';
    os << "verified points: " << r.verified_points << '\n';
    os << "max relator residual: " << fmt("%.3e", r.max_relator_residual) << '\n';
    os << "max commutator norm: " << fmt("%.3e", r.max_commutator_norm) << '\n';
    os << "orderable slopes: " << (r.range ? r.range->to_string() : std::string("unknown")) << '\n';
    return os.str();
}

ObservationReport observations_report(const PipelineResult& r) {
    ObservationReport rep;
    rep.k = r.knot.k();
    rep.slope_target = 3.0 * (3 * rep.k + 2) + 4.0;
    rep.untraced_roots = r.untraced_roots.size();
    const auto traced = r.diagram.traced();
    if (traced.empty()) throw DomainError("observations_report: no traced arcs");

    rep.slopes_within_one = true;
    rep.separation_ok = true;
    rep.monotonicity_ok = true;
    double longest = -1.0;
    rep.max_height_y = -std::numeric_limits<double>::infinity();
    for (const LocusArc* a : traced) {
        const auto profile = arc_slope_profile(*a);
        double sum = 0.0;
        for (const auto& sp : profile) sum += sp.slope;
        const double mean = sum / static_cast<double>(profile.size());
        rep.line_slopes.push_back({a->root_theta(), mean});
        if (std::abs(std::abs(mean) - rep.slope_target) > 1.0) rep.slopes_within_one = false;

        const auto& s = a->samples;
        for (std::size_t i = 1; i < s.size(); ++i) {
            if (!(s[i].y > 0.0)) rep.separation_ok = false;
        }
        const auto [lo, hi] = std::minmax_element(s.begin(), s.end(), [](const auto& p, const auto& q) {
            return p.x < q.x;
        });
        if (hi->x - lo->x > longest) {
            longest = hi->x - lo->x;
            rep.longest_arc_root_theta = a->root_theta();
        }
        if (a->terminal.kind == TerminalKind::ParabolicEndpoint && a->terminal.y > rep.max_height_y) {
            rep.max_height_x = a->terminal.x;
            rep.max_height_y = a->terminal.y;
        }
        // Joint monotonicity of phi and psi along the arc.
        const double dphi = s.back().phi - s.front().phi;
        const double dpsi = s.back().psi - s.front().psi;
        for (std::size_t i = 1; i < s.size(); ++i) {
            if ((s[i].phi - s[i - 1].phi) * dphi < 0.0 || (s[i].psi - s[i - 1].psi) * dpsi < 0.0) {
                rep.monotonicity_ok = false;
            }
        }
    }
    return rep;
}

std::string report_text(const ObservationReport& rep) {
    std::ostringstream os;
    os << "k: " << rep.k << '\n';
    os << "slope target: " << fmt("%.0f", rep.slope_target) << '\n';
    for (const ArcSlope& a : rep.line_slopes) {
        os << "mean slope at root " << fmt("%.6f", a.root_theta) << ": " << fmt("%.4f", a.mean_slope)
           << '\n';
    }
    os << "slope sign: " << (std::all_of(rep.line_slopes.begin(), rep.line_slopes.end(),
                                         [](const ArcSlope& a) { return a.mean_slope < 0.0; })
                                 ? "negative"
                                 : "mixed")
       << '\n';
    os << "slopes within one of target: " << (rep.slopes_within_one ? "yes" : "no") << '\n';
    os << "separation: " << (rep.separation_ok ? "yes" : "no") << '\n';
    os << "longest arc root theta: " << fmt("%.6f", rep.longest_arc_root_theta) << '\n';
    os << "max height point: (" << fmt("%.6f", rep.max_height_x) << ", "
       << fmt("%.6f", rep.max_height_y) << ")\n";
    os << "monotonicity: " << (rep.monotonicity_ok ? "yes" : "no") << '\n';
    os << "roots without arc: " << rep.untraced_roots << '\n';
    return os.str();
}

}  // namespace elocus
