#include "elocus/locus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>

#include "elocus/errors.hpp"

namespace elocus {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// A lift is accepted only if the prediction is much closer to it than to any other lift.
constexpr double kLiftAmbiguity = 0.25;

LocusSample make_sample(double param, double phi, double psi, int c, ElementClass side) {
    return {param, phi, psi, phi / kPi, (-c * phi + psi) / kPi, side};
}

}  // namespace

double LocusArc::root_theta() const {
    return is_image ? kTwoPi - seed.root.theta : seed.root.theta;
}

TraceOptions options_for_samples(int samples) {
    if (samples < 10) throw DomainError("samples must be at least 10");
    TraceOptions opts;
    opts.max_dx = 1.0 / samples;
    return opts;
}

LiftChoice nearest_lift(double trace, double predicted) {
    const double a = std::acos(std::clamp(trace / 2.0, -1.0, 1.0));
    double best = 0.0;
    double best_err = std::numeric_limits<double>::infinity();
    double second_err = std::numeric_limits<double>::infinity();
    for (double base : {a, -a}) {
        const double n0 = std::round((predicted - base) / kTwoPi);
        for (double n : {n0 - 1.0, n0, n0 + 1.0}) {
            const double v = base + kTwoPi * n;
            const double err = std::abs(v - predicted);
            if (err < best_err) {
                second_err = best_err;
                best_err = err;
                best = v;
            } else if (err < second_err && v != best) {
                second_err = err;
            }
        }
    }
    return {best, second_err};
}

std::pair<double, double> peripheral_traces_at(const DeformationSeed& seed, double p) {
    const TraceTriple tt = traces_at(seed, p);
    const int k = seed.knot.k();
    return {meridian_trace(tt, k), sigma_trace(tt, k)};
}

namespace {

class ArcTracer {
public:
    ArcTracer(const DeformationSeed& seed, const TraceOptions& opts)
        : seed_(seed), opts_(opts), c_(seed.knot.homological_exponent()) {}

    LocusArc run() {
        LocusArc arc;
        arc.knot = seed_.knot;
        arc.seed = seed_;

        const double p0 = seed_.seed_param();
        const double phi0 = seed_.root.theta / 2.0;
        const auto [trm0, trs0] = peripheral_traces_at(seed_, p0);
        if (std::abs(trm0 - 2.0 * std::cos(phi0)) > 1e-8 ||
            std::abs(trs0 - 2.0 * std::cos(c_ * phi0)) > 1e-6) {
            throw InvariantViolation("trace_arc: seed peripheral traces do not match the reducible character");
        }
        samples_.push_back(make_sample(p0, phi0, c_ * phi0, c_, ElementClass::Elliptic));

        const int dir = seed_.direction;
        double h = opts_.initial_step;
        for (long step = 0; step < opts_.max_steps; ++step) {
            if (h < opts_.min_step) {
                throw ConvergenceError("trace_arc: step floor reached at parameter " +
                                       std::to_string(samples_.back().param));
            }
            const LocusSample& last = samples_.back();
            const double pt = last.param + dir * h;
            if (is_degenerate_parameter(seed_, pt)) {
                h *= 0.5;
                continue;
            }
            double trm = 0.0;
            double trs = 0.0;
            TraceTriple tt;
            try {
                tt = traces_at(seed_, pt);
                std::tie(trm, trs) = peripheral_traces_at(seed_, pt);
            } catch (const DomainError&) {
                h *= 0.5;
                continue;
            }

            if (std::abs(trm) >= 2.0 - opts_.parabolic_band) {
                const double p_star = locate_parabolic(last.param, pt);
                if (auto end = endpoint_sample(p_star)) {
                    samples_.push_back(*end);
                    arc.terminal = {TerminalKind::ParabolicEndpoint, end->x, end->y};
                    arc.samples = std::move(samples_);
                    return arc;
                }
                // Jump to the endpoint too large: approach it first.
                h = 0.5 * std::abs(p_star - last.param);
                continue;
            }

            const auto r2 = wall_function(tt);
            if (!r2 || *r2 <= kWallTol) {
                if (h <= 1e-12 * std::max(1.0, std::abs(last.param))) {
                    arc.terminal = {TerminalKind::WallHit, last.x, last.y};
                    arc.samples = std::move(samples_);
                    return arc;
                }
                h *= 0.5;
                continue;
            }

            const double pred_phi = predict(pt, &LocusSample::phi);
            const double pred_psi = predict(pt, &LocusSample::psi);
            const LiftChoice lphi = nearest_lift(trm, pred_phi);
            const LiftChoice lpsi = nearest_lift(trs, pred_psi);
            const LocusSample cand = make_sample(pt, lphi.value, lpsi.value, c_, ElementClass::Elliptic);
            if (!unambiguous(lphi, pred_phi) || !unambiguous(lpsi, pred_psi) ||
                !continuous(last, cand)) {
                h *= 0.5;
                continue;
            }
            samples_.push_back(cand);
            h = std::min(2.0 * h, opts_.max_step);
        }
        const LocusSample& last = samples_.back();
        arc.terminal = {TerminalKind::MaxSteps, last.x, last.y};
        arc.samples = std::move(samples_);
        return arc;
    }

private:
    // Linear extrapolation from the last two samples (constant from the first).
    double predict(double p, double LocusSample::*field) const {
        const LocusSample& last = samples_.back();
        if (samples_.size() < 2) return last.*field;
        const LocusSample& prev = samples_[samples_.size() - 2];
        const double slope = (last.*field - prev.*field) / (last.param - prev.param);
        return last.*field + slope * (p - last.param);
    }

    static bool unambiguous(const LiftChoice& l, double predicted) {
        return std::abs(l.value - predicted) <= kLiftAmbiguity * l.runner_up_gap;
    }

    bool continuous(const LocusSample& a, const LocusSample& b) const {
        return std::abs(b.x - a.x) <= opts_.max_dx && std::abs(b.y - a.y) <= opts_.max_dy &&
               std::abs(b.phi - a.phi) < kPi / 2.0 && std::abs(b.psi - a.psi) < kPi / 2.0;
    }

    double excess(double p) const {
        return std::abs(peripheral_traces_at(seed_, p).first) - 2.0;
    }

    // Parameter where |tr rho(mu)| reaches 2, given an inside point and a trial point in or
    // beyond the parabolic band. Returns the last inside parameter of the final bracket.
    double locate_parabolic(double inside, double trial) const {
        double outside = trial;
        if (excess(trial) < 0.0) {
            // Still short of 2: look further along the parameter for the crossing.
            const double step = trial - inside;
            bool found = false;
            double lo = trial;
            for (int i = 0; i < 60 && !found; ++i) {
                const double q = trial + step * std::ldexp(1.0, i);
                if (is_degenerate_parameter(seed_, q)) break;
                try {
                    if (excess(q) >= 0.0) {
                        outside = q;
                        found = true;
                    } else {
                        lo = q;
                    }
                } catch (const DomainError&) {
                    break;
                }
            }
            if (!found) return trial;
            inside = lo;
        }
        while (true) {
            const double mid = 0.5 * (inside + outside);
            if (mid == inside || mid == outside) break;
            double e = 0.0;
            try {
                e = excess(mid);
            } catch (const DomainError&) {
                outside = mid;
                continue;
            }
            (e < 0.0 ? inside : outside) = mid;
        }
        return inside;
    }

    std::optional<LocusSample> endpoint_sample(double p_star) const {
        const auto [trm, trs] = peripheral_traces_at(seed_, p_star);
        const double phi = nearest_lift(trm, predict(p_star, &LocusSample::phi)).value;
        const double psi = nearest_lift(trs, predict(p_star, &LocusSample::psi)).value;
        const LocusSample rough = make_sample(p_star, phi, psi, c_, ElementClass::Parabolic);
        if (!continuous(samples_.back(), rough)) return std::nullopt;
        // arccos is ill-conditioned at |tr| = 2, so phi is taken at its limit and psi is
        // extrapolated there from nearby well-conditioned points.
        const double phi_star = std::round(phi / kPi) * kPi;
        const double psi_star = extrapolate_psi(p_star, phi_star, std::round(psi / kPi) * kPi);
        return make_sample(p_star, phi_star, psi_star, c_, ElementClass::Parabolic);
    }

    // Distance from the lifted angle of an element with this trace to the nearest multiple of pi.
    static double offset_from_pi_multiple(double trace) {
        return std::acos(std::min(std::abs(trace) / 2.0, 1.0));
    }

    // psi at phi = phi_star from a quadratic in phi through three points near the endpoint.
    double extrapolate_psi(double p_star, double phi_star, double psi_ref) const {
        const LocusSample& last = samples_.back();
        const double d_last = std::abs(last.phi - phi_star);
        const double sgn_phi = last.phi >= phi_star ? 1.0 : -1.0;
        const double sgn_psi = last.psi >= psi_ref ? 1.0 : -1.0;
        const double h0 = std::min(1e-3, d_last / 3.0);
        // phi - phi_star grows like the square root of the parameter distance.
        const double rate = d_last * d_last / std::abs(p_star - last.param);
        double f[3];
        double g[3];
        try {
            for (int j = 0; j < 3; ++j) {
                const double d = (j + 1) * h0;
                const double pj = p_star - seed_.direction * d * d / rate;
                const auto [trm, trs] = peripheral_traces_at(seed_, pj);
                f[j] = phi_star + sgn_phi * offset_from_pi_multiple(trm);
                g[j] = psi_ref + sgn_psi * offset_from_pi_multiple(trs);
            }
        } catch (const DomainError&) {
            return last.psi;
        }
        if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) return last.psi;
        double out = 0.0;
        for (int i = 0; i < 3; ++i) {
            double w = g[i];
            for (int j = 0; j < 3; ++j) {
                if (j != i) w *= (phi_star - f[j]) / (f[i] - f[j]);
            }
            out += w;
        }
        return out;
    }

    const DeformationSeed& seed_;
    const TraceOptions& opts_;
    int c_;
    std::vector<LocusSample> samples_;
};

}  // namespace

LocusArc trace_arc(const DeformationSeed& seed, const TraceOptions& opts) {
    if (seed.side != Side::SU11 || seed.direction == 0) {
        throw DomainError("trace_arc: seed has no SU(1,1) side");
    }
    return ArcTracer(seed, opts).run();
}

RepPoint realize_sample(const LocusArc& arc, std::size_t index, double relator_tol) {
    if (arc.is_image) throw DomainError("realize_sample: image arcs carry no representation");
    const LocusSample& s = arc.samples.at(index);
    const TraceTriple tt = traces_at(arc.seed, s.param);
    RepPoint rp = realize_best(tt, arc.knot, std::nullopt, relator_tol);
    // Complex conjugation keeps the character but reverses the circle action; pick the
    // pair whose meridian rotates by +phi, as it does at the seed.
    const Mat2C mu = evaluate_word(peripheral(arc.knot).meridian, rp.a, rp.b);
    if (std::sin(s.phi) * mu.a11.imag() < 0.0) {
        auto conj = [](const Mat2C& x) {
            return Mat2C{std::conj(x.a11), std::conj(x.a12), std::conj(x.a21), std::conj(x.a22)};
        };
        rp.a = conj(rp.a);
        rp.b = conj(rp.b);
        rp.alpha = rp.alpha == 0.0 ? 0.0 : kTwoPi - rp.alpha;
        rp.beta = rp.beta == 0.0 ? 0.0 : kTwoPi - rp.beta;
    }
    return rp;
}

std::vector<SlopePoint> arc_slope_profile(const LocusArc& arc) {
    const auto& s = arc.samples;
    if (s.size() < 3) throw DomainError("arc_slope_profile: need at least 3 samples");
    std::vector<SlopePoint> out;
    out.reserve(s.size() - 2);
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        const double dx = s[i + 1].x - s[i - 1].x;
        if (std::abs(dx) < 1e-15) {
            throw DomainError("arc_slope_profile: consecutive samples share x");
        }
        out.push_back({s[i].param, (s[i + 1].y - s[i - 1].y) / dx});
    }
    return out;
}

LocusArc dihedral_image(const LocusArc& arc) {
    LocusArc out = arc;
    out.is_image = !arc.is_image;
    const int c = arc.homological_exponent();
    for (LocusSample& s : out.samples) {
        s.phi = kPi - s.phi;
        s.psi = c * kPi - s.psi;
        s.x = 1.0 - s.x;
        s.y = -s.y;
    }
    out.terminal.x = 1.0 - arc.terminal.x;
    out.terminal.y = -arc.terminal.y;
    return out;
}

std::vector<const LocusArc*> LocusDiagram::traced() const {
    std::vector<const LocusArc*> out;
    for (const LocusArc& a : arcs) {
        if (!a.is_image) out.push_back(&a);
    }
    return out;
}

LocusDiagram dihedral_expand(const TwistedTorusKnot& knot, std::vector<LocusArc> arcs) {
    LocusDiagram d;
    d.knot = knot;
    d.y_extent = 3.0 * knot.k() + 5.0;
    const std::size_t n = arcs.size();
    d.arcs = std::move(arcs);
    d.arcs.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) d.arcs.push_back(dihedral_image(d.arcs[i]));
    return d;
}

}  // namespace elocus
