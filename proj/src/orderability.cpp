#include "elocus/orderability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace elocus {

Rational::Rational(std::int64_t p, std::int64_t q) {
    if (q == 0) throw DomainError("rational with zero denominator");
    if (q < 0) {
        p = -p;
        q = -q;
    }
    const std::int64_t g = std::gcd(p, q);
    p_ = p / g;
    q_ = q / g;
}

Rational Rational::parse(const std::string& text) {
    const auto slash = text.find('/');
    auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (const std::exception&) {
            throw DomainError("bad rational '" + text + "'");
        }
        if (used != s.size()) throw DomainError("bad rational '" + text + "'");
        return v;
    };
    if (slash == std::string::npos) return Rational(to_int(text), 1);
    return Rational(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
}

std::string Rational::to_string() const {
    return q_ == 1 ? std::to_string(p_) : std::to_string(p_) + "/" + std::to_string(q_);
}

namespace {

std::vector<std::pair<double, double>> parabolic_points(const LocusDiagram& d) {
    std::vector<std::pair<double, double>> out;
    for (const LocusArc& a : d.arcs) {
        if (a.terminal.kind == TerminalKind::ParabolicEndpoint) out.emplace_back(a.terminal.x, a.terminal.y);
    }
    return out;
}

bool excluded(double x, double y, const std::vector<std::pair<double, double>>& parabolic) {
    if (std::hypot(x, y) < kWitnessExclusion) return true;
    return std::any_of(parabolic.begin(), parabolic.end(), [&](const auto& p) {
        return std::hypot(x - p.first, y - p.second) < kWitnessExclusion;
    });
}

}  // namespace

std::vector<Witness> line_locus_intersection(const LocusDiagram& d, double r) {
    const auto parabolic = parabolic_points(d);
    std::vector<Witness> out;
    for (std::size_t ai = 0; ai < d.arcs.size(); ++ai) {
        const auto& s = d.arcs[ai].samples;
        for (std::size_t i = 0; i + 1 < s.size(); ++i) {
            const double f1 = s[i].y + r * s[i].x;
            const double f2 = s[i + 1].y + r * s[i + 1].x;
            // Half-open segments so that a shared vertex is reported once.
            const bool last = i + 2 == s.size();
            double lambda = 0.0;
            if (f1 == 0.0) {
                lambda = 0.0;
            } else if ((f1 < 0.0) != (f2 < 0.0) && f2 != 0.0) {
                lambda = f1 / (f1 - f2);
            } else if (f2 == 0.0 && last) {
                lambda = 1.0;
            } else {
                continue;
            }
            Witness w;
            w.x = s[i].x + lambda * (s[i + 1].x - s[i].x);
            w.y = s[i].y + lambda * (s[i + 1].y - s[i].y);
            // Close the remaining line residual along y so the witness is exactly on the line.
            w.y = -r * w.x;
            w.arc_index = ai;
            w.segment = i;
            if (!excluded(w.x, w.y, parabolic)) out.push_back(w);
        }
    }
    return out;
}

std::vector<Witness> line_locus_intersection(const LocusDiagram& d, const Rational& r) {
    return line_locus_intersection(d, r.value());
}

std::string OrderableRange::to_string() const {
    char buf[48];
    const double n = std::round(r_max);
    if (std::abs(r_max - n) < 1e-6) {
        std::snprintf(buf, sizeof buf, "(-inf, %.0f)", n);
    } else {
        std::snprintf(buf, sizeof buf, "(-inf, %.9g)", r_max);
    }
    return buf;
}

OrderableRange orderable_range(const LocusDiagram& d) {
    std::optional<double> best;
    for (const auto& [x, y] : parabolic_points(d)) {
        if (std::abs(x) < kWitnessExclusion && (!best || y > *best)) best = y;
    }
    if (!best) throw NoParabolicEndpoint();
    return {*best};
}

std::string_view to_string(Outcome o) {
    switch (o) {
        case Outcome::Orderable: return "orderable";
        case Outcome::NoWitness: return "no_witness";
        case Outcome::CaveatReducibleFilling: return "caveat_reducible_filling";
    }
    return "unknown";
}

SurgeryVerdict verdict(const TwistedTorusKnot& knot, const Rational& r, const LocusDiagram& d,
                       const std::optional<std::vector<Rational>>& exceptional) {
    if (!(d.knot == knot)) throw DomainError("verdict: diagram belongs to a different knot");
    SurgeryVerdict v;
    v.r = r;
    const auto ws = line_locus_intersection(d, r);
    if (ws.empty()) {
        v.outcome = Outcome::NoWitness;
        return v;
    }
    v.witness = ws.front();
    if (!exceptional) {
        v.outcome = Outcome::Orderable;
        v.assumptions.emplace_back(kIrreducibleAssumption);
    } else if (std::find(exceptional->begin(), exceptional->end(), r) != exceptional->end()) {
        v.outcome = Outcome::CaveatReducibleFilling;
    } else {
        v.outcome = Outcome::Orderable;
    }
    return v;
}

ExceptionalConfig parse_exceptional_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(std::string("exceptional config: ") + e.what());
    }
    if (!j.is_object() || !j.contains("k") || !j.contains("m") || !j.contains("exceptional") ||
        !j["k"].is_number_integer() || !j["m"].is_number_integer() || !j["exceptional"].is_array()) {
        throw DomainError("exceptional config: expected {\"k\": int, \"m\": int, \"exceptional\": [..]}");
    }
    ExceptionalConfig cfg;
    cfg.k = j["k"].get<int>();
    cfg.m = j["m"].get<int>();
    for (const auto& e : j["exceptional"]) {
        if (!e.is_string()) throw DomainError("exceptional config: slopes must be strings");
        cfg.exceptional.push_back(Rational::parse(e.get<std::string>()));
    }
    return cfg;
}

ExceptionalConfig load_exceptional_config(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw DomainError("cannot read " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_exceptional_config(ss.str());
}

}  // namespace elocus
