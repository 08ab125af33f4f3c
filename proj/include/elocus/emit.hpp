#pragma once

// CSV and SVG renderings of a locus diagram.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "elocus/locus.hpp"

namespace elocus {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kCsvHeader = "k,m,root_theta,param,phi,psi,x,y,side,terminal";

// One row per sample, arcs in diagram order. The terminal column is filled on the last
// sample of each arc only.
void write_csv(std::ostream& os, const LocusDiagram& d);
std::string to_csv(const LocusDiagram& d);

struct CsvRow {
    int k{0};
    int m{0};
    double root_theta{0.0};
    double param{0.0};
    double phi{0.0};
    double psi{0.0};
    double x{0.0};
    double y{0.0};
    std::string side;
    std::string terminal;
};

// Parses the output of write_csv. Throws IoError on a malformed header or row.
std::vector<CsvRow> read_csv(std::istream& is);

std::string_view to_string(TerminalKind k);

inline constexpr int kSvgWidth = 800;
inline constexpr int kSvgHeight = 600;

// Arcs as polylines in a viewBox over x in [0, 1], y in [-(3k+5), 3k+5]; parabolic
// endpoints as radius-3 circles.
std::string to_svg(const LocusDiagram& d);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace elocus
