#include "elocus/emit.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace elocus {

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    const std::string out = buf;
    return out == "-0.000000" ? "0.000000" : out;
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0') throw IoError("csv: bad number '" + s + "'");
    return v;
}

int parse_int(const std::string& s) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || *end != '\0') throw IoError("csv: bad integer '" + s + "'");
    return static_cast<int>(v);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

std::string_view to_string(TerminalKind k) {
    switch (k) {
        case TerminalKind::ParabolicEndpoint: return "parabolic_endpoint";
        case TerminalKind::WallHit: return "wall_hit";
        case TerminalKind::MaxSteps: return "max_steps";
    }
    return "unknown";
}

void write_csv(std::ostream& os, const LocusDiagram& d) {
    os << kCsvHeader << '\n';
    for (const LocusArc& arc : d.arcs) {
        const std::string prefix = std::to_string(arc.knot.k()) + ',' +
                                   std::to_string(arc.knot.m()) + ',' +
                                   fmt17(arc.root_theta()) + ',';
        for (std::size_t i = 0; i < arc.samples.size(); ++i) {
            const LocusSample& s = arc.samples[i];
            os << prefix << fmt17(s.param) << ',' << fmt17(s.phi) << ',' << fmt17(s.psi) << ','
               << fmt17(s.x) << ',' << fmt17(s.y) << ',' << to_string(s.side) << ',';
            if (i + 1 == arc.samples.size()) os << to_string(arc.terminal.kind);
            os << '\n';
        }
    }
    if (!os) throw IoError("csv: write failed");
}

std::string to_csv(const LocusDiagram& d) {
    std::ostringstream os;
    write_csv(os, d);
    return os.str();
}

std::vector<CsvRow> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader) throw IoError("csv: missing header");
    std::vector<CsvRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 10) throw IoError("csv: expected 10 fields, got " + std::to_string(f.size()));
        rows.push_back({parse_int(f[0]), parse_int(f[1]), parse_double(f[2]), parse_double(f[3]),
                        parse_double(f[4]), parse_double(f[5]), parse_double(f[6]),
                        parse_double(f[7]), f[8], f[9]});
    }
    return rows;
}

std::string to_svg(const LocusDiagram& d) {
    const double e = d.y_extent;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSvgWidth << "\" height=\""
       << kSvgHeight << "\" viewBox=\"0 " << fmt6(-e) << " 1 " << fmt6(2.0 * e)
       << "\" preserveAspectRatio=\"none\">\n";
    os << "<rect x=\"0\" y=\"" << fmt6(-e) << "\" width=\"1\" height=\"" << fmt6(2.0 * e)
       << "\" fill=\"white\"/>\n";
    const char* axis = "stroke=\"gray\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\"";
    os << "<line class=\"axis\" x1=\"0\" y1=\"0\" x2=\"1\" y2=\"0\" " << axis << "/>\n";
    os << "<line class=\"axis\" x1=\"0\" y1=\"" << fmt6(-e) << "\" x2=\"0\" y2=\"" << fmt6(e)
       << "\" " << axis << "/>\n";
    os << "<line class=\"axis\" x1=\"1\" y1=\"" << fmt6(-e) << "\" x2=\"1\" y2=\"" << fmt6(e)
       << "\" " << axis << "/>\n";
    for (const LocusArc& arc : d.arcs) {
        os << "<polyline fill=\"none\" stroke=\"" << (arc.is_image ? "steelblue" : "firebrick")
           << "\" stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\" points=\"";
        for (std::size_t i = 0; i < arc.samples.size(); ++i) {
            if (i) os << ' ';
            os << fmt6(arc.samples[i].x) << ',' << fmt6(0.0 - arc.samples[i].y);
        }
        os << "\"/>\n";
    }
    // Markers live in pixel space so that they stay round under the stretched viewBox.
    os << "<svg x=\"0\" y=\"" << fmt6(-e) << "\" width=\"1\" height=\"" << fmt6(2.0 * e)
       << "\" viewBox=\"0 0 " << kSvgWidth << ' ' << kSvgHeight
       << "\" preserveAspectRatio=\"none\" overflow=\"visible\">\n";
    for (const LocusArc& arc : d.arcs) {
        if (arc.terminal.kind != TerminalKind::ParabolicEndpoint) continue;
        const double px = arc.terminal.x * kSvgWidth;
        const double py = (e - arc.terminal.y) / (2.0 * e) * kSvgHeight;
        os << "<circle class=\"endpoint\" cx=\"" << fmt6(px) << "\" cy=\"" << fmt6(py)
           << "\" r=\"3\" fill=\"black\"/>\n";
    }
    os << "<text x=\"8\" y=\"16\" font-size=\"12\" font-family=\"sans-serif\">k = "
       << d.knot.k() << ", m = " << d.knot.m() << "</text>\n";
    os << "</svg>\n</svg>\n";
    return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f << content;
    if (!f) throw IoError("write failed: " + path.string());
}

}  // namespace elocus
