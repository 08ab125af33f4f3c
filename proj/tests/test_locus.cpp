#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "elocus/character_variety.hpp"
#include "elocus/errors.hpp"
#include "elocus/locus.hpp"
#include "elocus/representation.hpp"

using namespace elocus;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTheta0 = 2.0452649697;

const DeformationSeed& main_seed() {
    static const DeformationSeed seed = [] {
        for (const auto& s : deformation_seeds(TwistedTorusKnot(1, 1))) {
            if (std::abs(s.root.theta - kTheta0) < 1e-6) return s;
        }
        throw std::logic_error("main seed not found");
    }();
    return seed;
}

const LocusArc& main_arc() {
    static const LocusArc arc = trace_arc(main_seed(), options_for_samples(1000));
    return arc;
}

std::vector<LocusArc> traced_arcs(int k) {
    std::vector<LocusArc> out;
    for (const auto& s : deformation_seeds(TwistedTorusKnot(k, 1))) {
        if (s.side == Side::SU11) out.push_back(trace_arc(s, options_for_samples(1000)));
    }
    return out;
}

}  // namespace

TEST_CASE("nearest_lift") {
    const LiftChoice a = nearest_lift(2.0 * std::cos(0.4), 0.41);
    CHECK(a.value == doctest::Approx(0.4));
    CHECK(a.runner_up_gap == doctest::Approx(0.81));
    const LiftChoice b = nearest_lift(2.0 * std::cos(0.4), 2.0 * kPi - 0.38);
    CHECK(b.value == doctest::Approx(2.0 * kPi - 0.4));
    const LiftChoice c = nearest_lift(2.0 * std::cos(0.4), -12.0);
    CHECK(std::abs(2.0 * std::cos(c.value) - 2.0 * std::cos(0.4)) < 1e-12);
    CHECK(std::abs(c.value + 12.0) <= kPi);
}

TEST_CASE("k = 1 main arc: endpoints") {
    const LocusArc& arc = main_arc();
    REQUIRE(arc.samples.size() > 100);
    const LocusSample& first = arc.samples.front();
    CHECK(first.x == doctest::Approx(kTheta0 / (2.0 * kPi)).epsilon(1e-8));
    CHECK(std::abs(first.x - 0.3255) < 5e-5);
    CHECK(std::abs(first.y) < 1e-8);
    CHECK(arc.terminal.kind == TerminalKind::ParabolicEndpoint);
    CHECK(std::abs(arc.terminal.x) < 1e-8);
    CHECK(std::abs(arc.terminal.y - 6.0) < 1e-8);
    CHECK(std::abs(arc.samples.back().x - arc.terminal.x) < 1e-12);
    CHECK(std::abs(arc.samples.back().y - arc.terminal.y) < 1e-12);
}

TEST_CASE("k = 1 main arc: shape") {
    const LocusArc& arc = main_arc();
    for (std::size_t i = 0; i < arc.samples.size(); ++i) {
        const LocusSample& s = arc.samples[i];
        CHECK(s.x >= -1e-12);
        CHECK(s.x <= 0.5);
        CHECK(std::abs(2.0 * std::cos(s.phi) - peripheral_traces_at(arc.seed, s.param).first) < 1e-8);
        if (i > 0 && i + 1 < arc.samples.size()) CHECK(s.side == ElementClass::Elliptic);
        if (i > 0) {
            const LocusSample& p = arc.samples[i - 1];
            CHECK(s.x < p.x);
            CHECK(s.y > p.y);
            CHECK(std::abs(s.x - p.x) <= 1e-3 + 1e-12);
            CHECK(std::abs(s.y - p.y) <= 0.2);
            CHECK(std::abs(s.phi - p.phi) < kPi / 2.0);
            CHECK(std::abs(s.psi - p.psi) < kPi / 2.0);
        }
    }
}

TEST_CASE("k = 1 main arc: slopes") {
    const auto prof = arc_slope_profile(main_arc());
    REQUIRE(prof.size() >= 100);
    for (const SlopePoint& p : prof) {
        CHECK(p.slope < -18.0);
        CHECK(p.slope > -19.0);
    }
    // psi moves less than pi from its seed value: y + 19x stays within 1 of its start.
    for (const LocusSample& s : main_arc().samples) {
        CHECK(std::abs(s.y + 19.0 * s.x - 19.0 * kTheta0 / (2.0 * kPi)) < 1.0);
    }
    CHECK_THROWS_AS(arc_slope_profile(LocusArc{}), DomainError);
}

TEST_CASE("dihedral image") {
    const LocusArc img = dihedral_image(main_arc());
    CHECK(img.is_image);
    CHECK(img.root_theta() == doctest::Approx(2.0 * kPi - kTheta0));
    CHECK(img.samples.front().x == doctest::Approx(1.0 - kTheta0 / (2.0 * kPi)));
    CHECK(img.terminal.x == doctest::Approx(1.0));
    CHECK(img.terminal.y == doctest::Approx(-6.0));
    const auto a = arc_slope_profile(main_arc());
    const auto b = arc_slope_profile(img);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].slope == doctest::Approx(b[i].slope));
    const LocusArc back = dihedral_image(img);
    CHECK_FALSE(back.is_image);
    CHECK(back.samples[5].x == doctest::Approx(main_arc().samples[5].x));
    CHECK_THROWS_AS(realize_sample(img, 0), DomainError);
}

TEST_CASE("dihedral_expand is closed under the symmetry") {
    const LocusDiagram d = dihedral_expand(TwistedTorusKnot(1, 1), traced_arcs(1));
    REQUIRE(d.arcs.size() % 2 == 0);
    CHECK(d.traced().size() == d.arcs.size() / 2);
    CHECK(d.y_extent == doctest::Approx(8.0));
    for (const LocusArc& a : d.arcs) {
        const LocusArc im = dihedral_image(a);
        bool found = false;
        for (const LocusArc& b : d.arcs) {
            if (b.is_image == im.is_image && b.samples.size() == im.samples.size() &&
                std::abs(b.terminal.x - im.terminal.x) < 1e-12 &&
                std::abs(b.terminal.y - im.terminal.y) < 1e-12 &&
                std::abs(b.samples.front().x - im.samples.front().x) < 1e-12) {
                found = true;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("trace_arc requires an SU(1,1) side") {
    DeformationSeed s = main_seed();
    s.side = Side::SU2;
    CHECK_THROWS_AS(trace_arc(s), DomainError);
    s = main_seed();
    s.direction = 0;
    CHECK_THROWS_AS(trace_arc(s), DomainError);
}

TEST_CASE("unwrapping does not depend on the step size") {
    TraceOptions fine = options_for_samples(1000);
    fine.max_dx = 0.5e-3;
    const LocusArc a = main_arc();
    const LocusArc b = trace_arc(main_seed(), fine);
    CHECK(b.samples.size() > a.samples.size());
    CHECK(std::abs(a.terminal.y - b.terminal.y) < 1e-8);
    // Compare psi at matching parameters by linear interpolation on the finer arc.
    for (std::size_t i = 0; i < a.samples.size(); i += 50) {
        const double p = a.samples[i].param;
        auto it = std::lower_bound(b.samples.begin(), b.samples.end(), p,
                                   [](const LocusSample& s, double v) { return s.param < v; });
        if (it == b.samples.begin() || it == b.samples.end()) continue;
        const LocusSample& hi = *it;
        const LocusSample& lo = *(it - 1);
        const double w = (p - lo.param) / (hi.param - lo.param);
        CHECK(std::abs(lo.psi + w * (hi.psi - lo.psi) - a.samples[i].psi) < 0.05);
    }
}

TEST_CASE("realize_sample along the main arc") {
    const LocusArc& arc = main_arc();
    const auto [mu0, sigma0] = peripheral_images(realize_sample(arc, 1), arc.knot);
    CHECK(std::abs(mu0.trace().real() - 2.0 * std::cos(arc.samples[1].phi)) < 1e-8);
    for (std::size_t i = 1; i + 1 < arc.samples.size(); i += 97) {
        const RepPoint rp = realize_sample(arc, i);
        CHECK(rp.side == Side::SU11);
        CHECK(verify_relation(rp, arc.knot).residual < 1e-8);
        const auto [mu, sigma] = peripheral_images(rp, arc.knot);
        CHECK(std::abs(mu.trace().real() - 2.0 * std::cos(arc.samples[i].phi)) < 1e-8);
        CHECK(std::abs(sigma.trace().real() - 2.0 * std::cos(arc.samples[i].psi)) < 1e-6);
    }
}

TEST_CASE("translation numbers agree with the oracle on the main arc") {
    const LocusArc& arc = main_arc();
    const std::size_t n = arc.samples.size();
    for (int j = 1; j <= 10; ++j) {
        const std::size_t i = j * (n - 1) / 11;
        const RepPoint rp = realize_sample(arc, i);
        const auto [mu, sigma] = peripheral_images(rp, arc.knot);
        const double x = arc.samples[i].x;
        CHECK(std::abs(translation_number_oracle(mu, x, 4000) - x) < 1e-3);
    }
}

TEST_CASE("parabolic endpoints are integral for k = 1..4") {
    for (int k = 1; k <= 4; ++k) {
        for (const LocusArc& arc : traced_arcs(k)) {
            REQUIRE(arc.terminal.kind == TerminalKind::ParabolicEndpoint);
            CHECK(std::abs(arc.terminal.x - std::round(arc.terminal.x)) < 1e-8);
            CHECK(std::abs(arc.terminal.y - std::round(arc.terminal.y)) < 1e-8);
            CHECK(arc.samples.front().x * 2.0 * kPi == doctest::Approx(arc.seed.root.theta));
        }
    }
}
