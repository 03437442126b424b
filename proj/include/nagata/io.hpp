#pragma once

#include <map>
#include <string>

#include "nagata/cover.hpp"
#include "nagata/hyperbolic.hpp"
#include "nagata/planar.hpp"

namespace nagata {

/// Cover document: the cover, its scale, its embedded certificate, and any
/// measured constants the producing pipeline reports.
struct CoverDocument {
    ColoredCover cover;
    double s = 0.0;
    CoverCertificate certificate;
    std::string model;  // empty for graphs, "upper-half-space" for samples
    std::map<std::string, double> measured;
};

enum class InputKind { Graph, Sample };

/// Graph documents: JSON with vertex_count / edges / optional coords, or a
/// whitespace `u v w` edge list with 0-based vertices.
PlanarGraph parse_graph(const std::string& text);
std::string format_graph(const PlanarGraph& pg);

UpperHalfSpaceSample parse_sample(const std::string& text);
std::string format_sample(const UpperHalfSpaceSample& sample);

InputKind detect_input_kind(const std::string& text);

CoverDocument parse_cover(const std::string& text);
std::string format_cover(const CoverDocument& doc);

/// Field names on which two certificates differ; empty means identical.
std::vector<std::string> certificate_diff(const CoverCertificate& a, const CoverCertificate& b);

std::string to_svg(const PlanarGraph& pg, const ColoredCover* cover);
std::string to_dot(const PlanarGraph& pg, const ColoredCover* cover);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace nagata
