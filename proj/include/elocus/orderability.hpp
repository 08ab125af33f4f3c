#pragma once

// Surgery-slope lines against the locus diagram: elliptic witnesses and verdicts.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "elocus/errors.hpp"
#include "elocus/locus.hpp"

namespace elocus {

// p/q in lowest terms with q > 0.
class Rational {
public:
    Rational(std::int64_t p = 0, std::int64_t q = 1);

    // "p/q" or "p"; throws DomainError on malformed input or q = 0.
    static Rational parse(const std::string& text);

    std::int64_t p() const { return p_; }
    std::int64_t q() const { return q_; }
    double value() const { return static_cast<double>(p_) / static_cast<double>(q_); }
    std::string to_string() const;

    friend bool operator==(const Rational&, const Rational&) = default;

private:
    std::int64_t p_;
    std::int64_t q_;
};

struct Witness {
    double x{0.0};
    double y{0.0};
    std::size_t arc_index{0};  // into LocusDiagram::arcs
    std::size_t segment{0};    // samples[segment] .. samples[segment + 1]
};

// Distance below which an intersection is treated as the origin or a parabolic endpoint.
inline constexpr double kWitnessExclusion = 1e-6;

// Intersections of y = -r x with the arc polylines, excluding the origin and parabolic
// endpoints.
std::vector<Witness> line_locus_intersection(const LocusDiagram& d, double r);
std::vector<Witness> line_locus_intersection(const LocusDiagram& d, const Rational& r);

class NoParabolicEndpoint : public DomainError {
public:
    NoParabolicEndpoint() : DomainError("diagram has no parabolic endpoint on x = 0") {}
};

// Slopes r < r_max have witnesses; r_max is the height of the highest parabolic endpoint
// on the vertical axis.
struct OrderableRange {
    double r_max{0.0};
    std::string to_string() const;  // "(-inf, 6)"
};

OrderableRange orderable_range(const LocusDiagram& d);

enum class Outcome { Orderable, NoWitness, CaveatReducibleFilling };
std::string_view to_string(Outcome o);

inline constexpr const char* kIrreducibleAssumption = "filling assumed irreducible";

struct SurgeryVerdict {
    Rational r;
    Outcome outcome{Outcome::NoWitness};
    std::optional<Witness> witness;
    std::vector<std::string> assumptions;
};

// Without an exceptional list a witness gives Orderable under the irreducibility
// assumption; with one, a witness at an exceptional slope gives CaveatReducibleFilling.
SurgeryVerdict verdict(const TwistedTorusKnot& knot, const Rational& r, const LocusDiagram& d,
                       const std::optional<std::vector<Rational>>& exceptional = std::nullopt);

struct ExceptionalConfig {
    int k{0};
    int m{0};
    std::vector<Rational> exceptional;
};

// {"k": 1, "m": 1, "exceptional": ["16", "17/2"]}. Throws DomainError on a bad shape.
ExceptionalConfig parse_exceptional_config(const std::string& json_text);
ExceptionalConfig load_exceptional_config(const std::filesystem::path& path);

}  // namespace elocus
