#include "elocus/character_variety.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "elocus/errors.hpp"
#include "elocus/representation.hpp"

namespace elocus {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_two_pi(double a) {
    a = std::fmod(a, kTwoPi);
    return a < 0.0 ? a + kTwoPi : a;
}

bool near(double x, double target) { return std::abs(x - target) <= kDegenerateMargin; }

void check_k(int k) {
    if (k < 1) throw DomainError("k must be >= 1");
}

struct Omegas {
    double prev;  // omega_{k-1}(s)
    double cur;   // omega_k(s)
    double next;  // omega_{k+1}(s)
};

Omegas omegas(int k, double s) { return {omega(k - 1, s), omega(k, s), omega(k + 1, s)}; }

}  // namespace

TraceTriple reducible_traces(const TwistedTorusKnot& knot, double theta_z) {
    const int p = knot.a_degree();
    return {2.0 * std::cos(p * theta_z), 2.0 * std::cos(3.0 * theta_z),
            2.0 * std::cos((p + 3) * theta_z)};
}

TraceTriple reducible_traces_at_root(const TwistedTorusKnot& knot, double root_theta) {
    return reducible_traces(knot, root_theta / 2.0);
}

TraceTriple irreducible_constraints_k1(double t) {
    if (near(t, 0.0) || near(t, 1.0) || near(t, -1.0)) {
        throw DomainError("irreducible_constraints_k1: t = " + std::to_string(t) +
                          " is singular");
    }
    const TraceTriple tt{t, t / (t * t - 1.0), 1.0 - 1.0 / (t * t)};
    if (constraint_residual(tt, 1) > 1e-10) {
        throw InvariantViolation("irreducible_constraints_k1: relation system not satisfied");
    }
    return tt;
}

std::array<TraceTriple, 2> irreducible_constraints_general(int k, double s) {
    check_k(k);
    const Omegas w = omegas(k, s);
    if (std::abs(w.next) <= 1e-10) {
        throw DomainError("irreducible_constraints_general: omega_{k+1}(s) vanishes at s = " +
                          std::to_string(s));
    }
    const double c = -w.prev + w.cur * w.cur / w.next;
    // Roots of t^2 - c t - 1; the product is -1, so take the stable one and invert.
    const double big = c >= 0.0 ? (c + std::sqrt(c * c + 4.0)) / 2.0
                                : (c - std::sqrt(c * c + 4.0)) / 2.0;
    const double small = -1.0 / big;
    const double t_pos = big > 0.0 ? big : small;
    const double t_neg = big > 0.0 ? small : big;
    auto r_of = [&](double t) { return t * w.cur / w.next - w.cur / (w.next * w.next); };
    return {TraceTriple{t_pos, s, r_of(t_pos)}, TraceTriple{t_neg, s, r_of(t_neg)}};
}

TraceTriple irreducible_branch(int k, double s, int t_sign) {
    const auto pair = irreducible_constraints_general(k, s);
    return t_sign > 0 ? pair[0] : pair[1];
}

double constraint_residual(const TraceTriple& tt, int k) {
    check_k(k);
    const double t = tt.t;
    const double s = tt.s;
    const double r = tt.r;
    if (k == 1) {
        // 1 = (t^2 s - t r - s) t,  -1 = (r s - t) s,  r s = t^2 s - t r - s
        const double q = t * t * s - t * r - s;
        const double qs = std::abs(t * t * s) + std::abs(t * r) + std::abs(s);
        const double e1 = std::abs(q * t - 1.0) / (1.0 + qs * std::abs(t));
        const double e2 = std::abs((r * s - t) * s + 1.0) / (1.0 + (std::abs(r * s) + std::abs(t)) * std::abs(s));
        const double e3 = std::abs(r * s - q) / (1.0 + std::abs(r * s) + qs);
        return std::max({e1, e2, e3});
    }
    const Omegas w = omegas(k, s);
    if (w.next == 0.0 || t == 0.0) return std::numeric_limits<double>::infinity();
    const double ratio = w.cur / w.next;
    const double e1 = std::abs(t - 1.0 / t + w.prev - w.cur * ratio) /
                      (1.0 + std::abs(t) + std::abs(1.0 / t) + std::abs(w.prev) +
                       std::abs(w.cur * ratio));
    const double e2 = std::abs(r - t * ratio + ratio / w.next) /
                      (1.0 + std::abs(r) + std::abs(t * ratio) + std::abs(ratio / w.next));
    return std::max(e1, e2);
}

namespace {

void require_on_variety(const TraceTriple& tt, int k, const char* where) {
    const double res = constraint_residual(tt, k);
    if (!(res <= kConstraintTol)) {
        throw InvariantViolation(std::string(where) + ": character constraint residual " +
                                 std::to_string(res));
    }
}

void require_agree(double x, double y, double scale, double tol, const char* where) {
    if (std::abs(x - y) > tol * std::max(1.0, scale)) {
        throw InvariantViolation(std::string(where) + ": closed form disagrees with trace expansion");
    }
}

}  // namespace

double meridian_trace_k1(double t) {
    const double d = t * t - 1.0;
    return t * t * t / (d * d) - 1.0 / t - t;
}

double sigma_trace_k1(double t) {
    return 2.0 / t - t / (t * t - 1.0) - 1.0 / (t * t * t) - t;
}

double trace_a2_bmk(const TraceTriple& tt, int k) {
    // A^2 = tA - I, B^{-k} = omega_{k+1}(s) I - omega_k(s) B
    const Omegas w = omegas(k, tt.s);
    return tt.t * (w.next * tt.t - w.cur * tt.r) - (2.0 * w.next - w.cur * tt.s);
}

double meridian_trace_general(const TraceTriple& tt, int k) {
    check_k(k);
    const double t = tt.t;
    const double s = tt.s;
    const double r = tt.r;
    const Omegas w = omegas(k, s);
    const double head = t * (s * w.next - 2.0 * w.cur);
    const double raw = head - (r * w.next - t * w.cur);
    const double closed = head + w.cur / w.next;
    require_agree(raw, closed, std::abs(head) + std::abs(r * w.next) + std::abs(t * w.cur), 1e-10,
                  "meridian_trace");
    return closed;
}

double meridian_trace(const TraceTriple& tt, int k) {
    require_on_variety(tt, k, "meridian_trace");
    if (k != 1) return meridian_trace_general(tt, k);
    const double t = tt.t;
    const double s = tt.s;
    const double r = tt.r;
    const double raw = t * s * s - s * r - t;
    const double closed = meridian_trace_k1(t);
    require_agree(raw, closed, std::abs(t * s * s) + std::abs(s * r), 1e-10, "meridian_trace");
    return closed;
}

double sigma_trace_general(const TraceTriple& tt, int k) {
    check_k(k);
    const double t = tt.t;
    const double s = tt.s;
    const double r = tt.r;
    const double inv_t_check = trace_a2_bmk(tt, k);
    require_agree(inv_t_check, 1.0 / t, std::abs(1.0 / t) + std::abs(t * t * omega(k + 1, s)),
                  1e-9, "sigma_trace: tr(A^2 B^-k) != 1/t");
    const Omegas w = omegas(k, s);
    const double inner = (w.next * t - w.cur * r) * (t * t - 2.0) - (w.cur * r - w.prev * t);
    const double closed = inner / t - t;
    // Same expression with tr(A^2 B^{-k}) taken from the traces instead of 1/t.
    const double raw = inv_t_check * inner - t;
    require_agree(raw, closed, std::abs(inner / t) + std::abs(t), 1e-9, "sigma_trace");
    return closed;
}

double sigma_trace(const TraceTriple& tt, int k) {
    require_on_variety(tt, k, "sigma_trace");
    if (k != 1) return sigma_trace_general(tt, k);
    const double t = tt.t;
    const double s = tt.s;
    const double r = tt.r;
    require_agree(trace_a2_bmk(tt, k), 1.0 / t, std::abs(1.0 / t) + std::abs(t * t * s), 1e-9,
                  "sigma_trace: tr(A^2 B^-1) != 1/t");
    const double q = t * t * s - t * r - s;
    const double raw = q * q * t - q * (s * t - r) - t;
    const double closed = sigma_trace_k1(t);
    require_agree(raw, closed, std::abs(q * q * t) + std::abs(q * (s * t - r)), 1e-10, "sigma_trace");
    return closed;
}

double alexander_on_circle(const LaurentPoly& delta, double theta) {
    double total = static_cast<double>(delta.coefficient(0));
    for (const auto& [e, c] : delta.terms()) {
        if (e > 0) total += 2.0 * static_cast<double>(c) * std::cos(e * theta);
    }
    return total;
}

std::vector<UnitCircleRoot> alexander_roots_unit_circle(const LaurentPoly& delta) {
    if (!delta.is_symmetric()) throw DomainError("alexander_roots_unit_circle: asymmetric polynomial");
    constexpr int kGrid = 10000;
    std::vector<double> upper;
    auto f = [&](double th) { return alexander_on_circle(delta, th); };
    double prev_th = 0.0;
    double prev_v = f(prev_th);
    for (int i = 1; i <= kGrid; ++i) {
        const double th = kPi * i / kGrid;
        const double v = f(th);
        if (v == 0.0 && i < kGrid) {
            upper.push_back(th);
        } else if ((prev_v < 0.0 && v > 0.0) || (prev_v > 0.0 && v < 0.0)) {
            double lo = prev_th;
            double hi = th;
            double flo = prev_v;
            // Bisect until the bracket stops shrinking in double precision.
            while (true) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                const double fm = f(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            upper.push_back(std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi);
        }
        prev_th = th;
        prev_v = v;
    }
    std::vector<UnitCircleRoot> out;
    for (double th : upper) out.push_back({th, 1});
    for (auto it = upper.rbegin(); it != upper.rend(); ++it) out.push_back({kTwoPi - *it, 1});
    return out;
}

std::vector<UnitCircleRoot> alexander_roots_unit_circle(const TwistedTorusKnot& knot) {
    return alexander_roots_unit_circle(alexander(knot));
}

TraceTriple traces_at(const DeformationSeed& seed, double p) {
    if (seed.parameter == ArcParameter::T) return irreducible_constraints_k1(p);
    return irreducible_branch(seed.knot.k(), p, seed.t_sign);
}

bool is_degenerate_parameter(const DeformationSeed& seed, double p) {
    if (seed.parameter == ArcParameter::T) return near(p, 0.0) || near(p, 1.0) || near(p, -1.0);
    return std::abs(omega(seed.knot.k() + 1, p)) <= kDegenerateMargin;
}

DeformationSeed make_seed(const TwistedTorusKnot& knot, const UnitCircleRoot& root) {
    if (knot.m() != 1) throw DomainError("deformation seeds are only available for m = 1");
    const int k = knot.k();
    DeformationSeed seed;
    seed.knot = knot;
    seed.root = root;
    seed.seed_traces = reducible_traces_at_root(knot, root.theta);
    seed.alpha0 = wrap_two_pi(knot.a_degree() * root.theta / 2.0);
    seed.beta0 = wrap_two_pi(3.0 * root.theta / 2.0);
    seed.parameter = k == 1 ? ArcParameter::T : ArcParameter::S;
    seed.t_sign = seed.seed_traces.t >= 0.0 ? 1 : -1;

    // The reducible character must lie on the irreducible curve.
    const TraceTriple on_curve = traces_at(seed, seed.seed_param());
    const double gap = std::max({std::abs(on_curve.t - seed.seed_traces.t),
                                 std::abs(on_curve.s - seed.seed_traces.s),
                                 std::abs(on_curve.r - seed.seed_traces.r)});
    if (gap > 1e-8) {
        throw InvariantViolation("make_seed: reducible character at theta = " +
                                 std::to_string(root.theta) +
                                 " is not on the irreducible curve (gap " + std::to_string(gap) + ")");
    }

    const double p0 = seed.seed_param();
    double best = 0.0;
    for (int d : {+1, -1}) {
        const double p = p0 + d * kSeedProbe;
        if (is_degenerate_parameter(seed, p)) continue;
        try {
            const auto r2 = wall_function(traces_at(seed, p));
            if (r2 && *r2 > kWallTol && *r2 > best) {
                best = *r2;
                seed.direction = d;
                seed.side = Side::SU11;
            }
        } catch (const DomainError&) {
        }
    }
    return seed;
}

std::vector<DeformationSeed> deformation_seeds(const TwistedTorusKnot& knot) {
    std::vector<DeformationSeed> seeds;
    for (const UnitCircleRoot& root : alexander_roots_unit_circle(knot)) {
        if (root.theta < kPi) seeds.push_back(make_seed(knot, root));
    }
    return seeds;
}

double parabolic_parameter_k1(double t0) {
    double lo = t0;
    double hi = 1.0 - kDegenerateMargin;
    if (!(meridian_trace_k1(lo) < 2.0) || !(meridian_trace_k1(hi) > 2.0)) {
        throw DomainError("parabolic_parameter_k1: m(t) - 2 does not change sign on (t0, 1)");
    }
    while (true) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (meridian_trace_k1(mid) < 2.0 ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace elocus
