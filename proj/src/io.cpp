#include "nagata/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace nagata {

using Json = nlohmann::ordered_json;

namespace {

Json parse_json(const std::string& text, const char* what) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ArgumentError(std::string("malformed JSON in ") + what);
    return j;
}

Json separation_to_json(double v) {
    if (std::isinf(v)) return Json("inf");
    return Json(v);
}

double separation_from_json(const Json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return kInf;
        throw ArgumentError("certificate: unknown separation token");
    }
    return j.get<double>();
}

std::string format_coord(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

}  // namespace

PlanarGraph parse_graph(const std::string& text) {
    PlanarGraph pg;
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        Json j = parse_json(text, "graph document");
        if (!j.contains("vertex_count") || !j.contains("edges"))
            throw ArgumentError("graph document needs vertex_count and edges");
        pg.graph.vertex_count = j["vertex_count"].get<std::size_t>();
        for (const Json& e : j["edges"]) {
            if (!e.is_array() || e.size() != 3)
                throw ArgumentError("graph edge must be [u, v, w]");
            pg.graph.edges.push_back(
                {e[0].get<PointId>(), e[1].get<PointId>(), e[2].get<double>()});
        }
        if (j.contains("coords")) {
            std::vector<std::array<double, 2>> xy;
            for (const Json& c : j["coords"]) xy.push_back({c[0].get<double>(), c[1].get<double>()});
            if (xy.size() != pg.graph.vertex_count)
                throw ArgumentError("graph coords length must match vertex_count");
            pg.embedding = std::move(xy);
        }
        return pg;
    }
    // Whitespace edge list: `u v w` per line, vertex count inferred.
    std::istringstream in(text);
    std::string line;
    std::size_t max_vertex = 0;
    bool any = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        PointId u, v;
        double w;
        if (!(ls >> u)) continue;  // blank line
        if (!(ls >> v >> w)) throw ArgumentError("edge list line needs `u v w`: " + line);
        pg.graph.edges.push_back({u, v, w});
        max_vertex = std::max<std::size_t>(max_vertex, std::max(u, v));
        any = true;
    }
    if (!any) throw ArgumentError("empty edge list");
    pg.graph.vertex_count = max_vertex + 1;
    return pg;
}

std::string format_graph(const PlanarGraph& pg) {
    Json j;
    j["vertex_count"] = pg.graph.vertex_count;
    Json edges = Json::array();
    for (const Edge& e : pg.graph.edges) edges.push_back(Json::array({e.u, e.v, e.weight}));
    j["edges"] = std::move(edges);
    if (pg.embedding) {
        Json coords = Json::array();
        for (const auto& c : *pg.embedding) coords.push_back(Json::array({c[0], c[1]}));
        j["coords"] = std::move(coords);
    }
    return j.dump(2) + "\n";
}

UpperHalfSpaceSample parse_sample(const std::string& text) {
    Json j = parse_json(text, "sample document");
    if (!j.contains("points")) throw ArgumentError("sample document needs points");
    std::vector<UpperHalfSpacePoint> pts;
    for (const Json& p : j["points"]) {
        if (!p.is_array() || p.size() != 3)
            throw ArgumentError("sample point must be [x1, x2, h]");
        pts.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
    }
    UpperHalfSpaceSample sample(std::move(pts));
    if (j.contains("seed")) sample.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("box")) {
        const Json& b = j["box"];
        sample.box.x1_min = b["x1"][0].get<double>();
        sample.box.x1_max = b["x1"][1].get<double>();
        sample.box.x2_min = b["x2"][0].get<double>();
        sample.box.x2_max = b["x2"][1].get<double>();
        sample.box.h_min = b["h"][0].get<double>();
        sample.box.h_max = b["h"][1].get<double>();
    }
    return sample;
}

std::string format_sample(const UpperHalfSpaceSample& sample) {
    Json j;
    j["model"] = "upper-half-space";
    j["seed"] = sample.seed;
    j["box"] = Json{{"x1", {sample.box.x1_min, sample.box.x1_max}},
                    {"x2", {sample.box.x2_min, sample.box.x2_max}},
                    {"h", {sample.box.h_min, sample.box.h_max}}};
    Json pts = Json::array();
    for (const auto& p : sample.points()) pts.push_back(Json::array({p.x1, p.x2, p.h}));
    j["points"] = std::move(pts);
    return j.dump(2) + "\n";
}

InputKind detect_input_kind(const std::string& text) {
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        Json j = parse_json(text, "input document");
        if ((j.contains("model") && j["model"] == "upper-half-space") || j.contains("points"))
            return InputKind::Sample;
    }
    return InputKind::Graph;
}

CoverDocument parse_cover(const std::string& text) {
    Json j = parse_json(text, "cover document");
    CoverDocument doc;
    if (!j.contains("domain") || !j.contains("s") || !j.contains("classes"))
        throw ArgumentError("cover document needs domain, s, classes");
    doc.s = j["s"].get<double>();
    for (const Json& p : j["domain"]) doc.cover.domain.push_back(p.get<PointId>());
    int max_color = 0;
    for (const Json& cls : j["classes"]) max_color = std::max(max_color, cls["color"].get<int>());
    doc.cover.classes.resize(max_color);
    for (const Json& cls : j["classes"]) {
        const int color = cls["color"].get<int>();
        if (color < 1) throw ArgumentError("cover colors are 1-based");
        for (const Json& set : cls["sets"]) {
            PointSet s;
            for (const Json& p : set) s.push_back(p.get<PointId>());
            doc.cover.classes[color - 1].push_back(std::move(s));
        }
    }
    if (j.contains("certificate")) {
        const Json& c = j["certificate"];
        doc.certificate.is_cover = c["is_cover"].get<bool>();
        doc.certificate.color_count = c["color_count"].get<int>();
        for (const Json& s : c["per_color_separation"])
            doc.certificate.per_color_separation.push_back(separation_from_json(s));
        doc.certificate.max_diameter = c["max_diameter"].get<double>();
        doc.certificate.multiplicity_scale = c["multiplicity_scale"].get<double>();
        doc.certificate.multiplicity = c["multiplicity"].get<int>();
    }
    if (j.contains("model")) doc.model = j["model"].get<std::string>();
    if (j.contains("measured"))
        for (const auto& [key, value] : j["measured"].items())
            doc.measured[key] = value.get<double>();
    return doc;
}

std::string format_cover(const CoverDocument& doc) {
    Json j;
    if (!doc.model.empty()) j["model"] = doc.model;
    j["domain"] = doc.cover.domain;
    j["s"] = doc.s;
    Json classes = Json::array();
    for (int c = 0; c < doc.cover.color_count(); ++c) {
        Json cls;
        cls["color"] = c + 1;
        Json sets = Json::array();
        for (const PointSet& s : doc.cover.classes[c]) sets.push_back(s);
        cls["sets"] = std::move(sets);
        classes.push_back(std::move(cls));
    }
    j["classes"] = std::move(classes);
    Json cert;
    cert["is_cover"] = doc.certificate.is_cover;
    cert["color_count"] = doc.certificate.color_count;
    Json seps = Json::array();
    for (double s : doc.certificate.per_color_separation) seps.push_back(separation_to_json(s));
    cert["per_color_separation"] = std::move(seps);
    cert["max_diameter"] = doc.certificate.max_diameter;
    cert["multiplicity_scale"] = doc.certificate.multiplicity_scale;
    cert["multiplicity"] = doc.certificate.multiplicity;
    j["certificate"] = std::move(cert);
    if (!doc.measured.empty()) {
        Json m;
        for (const auto& [key, value] : doc.measured) m[key] = value;
        j["measured"] = std::move(m);
    }
    return j.dump(2) + "\n";
}

std::vector<std::string> certificate_diff(const CoverCertificate& a, const CoverCertificate& b) {
    std::vector<std::string> fields;
    if (a.is_cover != b.is_cover) fields.push_back("is_cover");
    if (a.color_count != b.color_count) fields.push_back("color_count");
    if (a.per_color_separation != b.per_color_separation)
        fields.push_back("per_color_separation");
    if (a.max_diameter != b.max_diameter) fields.push_back("max_diameter");
    if (a.multiplicity_scale != b.multiplicity_scale) fields.push_back("multiplicity_scale");
    if (a.multiplicity != b.multiplicity) fields.push_back("multiplicity");
    return fields;
}

std::string to_svg(const PlanarGraph& pg, const ColoredCover* cover) {
    if (!pg.embedding)
        throw ArgumentError("svg export requires an embedding (missing field: coords)");
    static const char* kPalette[] = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3",
                                     "#ff7f00", "#a65628", "#f781bf", "#999999"};
    const auto& xy = *pg.embedding;
    double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
    for (const auto& c : xy) {
        xmin = std::min(xmin, c[0]);
        xmax = std::max(xmax, c[0]);
        ymin = std::min(ymin, c[1]);
        ymax = std::max(ymax, c[1]);
    }
    const double spanx = std::max(xmax - xmin, 1e-9);
    const double spany = std::max(ymax - ymin, 1e-9);
    const double span = std::max(spanx, spany);
    const double margin = 0.05 * span;
    const double scale = 900.0 / (span + 2 * margin);
    auto px = [&](double x) { return format_coord((x - xmin + margin) * scale); };
    auto py = [&](double y) { return format_coord((y - ymin + margin) * scale); };

    double unit = span;
    for (const Edge& e : pg.graph.edges)
        unit = std::min(unit, std::hypot(xy[e.u][0] - xy[e.v][0], xy[e.u][1] - xy[e.v][1]));
    const double dot = std::max(0.3 * unit * scale, 0.75);

    std::ostringstream svg;
    const std::string size = format_coord((span + 2 * margin) * scale);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
        << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    svg << "<g stroke=\"#bbbbbb\" stroke-width=\"" << format_coord(std::max(dot * 0.25, 0.3))
        << "\">\n";
    for (const Edge& e : pg.graph.edges)
        svg << "<line x1=\"" << px(xy[e.u][0]) << "\" y1=\"" << py(xy[e.u][1]) << "\" x2=\""
            << px(xy[e.v][0]) << "\" y2=\"" << py(xy[e.v][1]) << "\"/>\n";
    svg << "</g>\n";
    if (cover) {
        for (int c = 0; c < cover->color_count(); ++c) {
            const char* fill = kPalette[c % 8];
            for (const PointSet& set : cover->classes[c]) {
                svg << "<g fill=\"" << fill << "\" fill-opacity=\"0.4\">\n";
                for (PointId p : set)
                    svg << "<circle cx=\"" << px(xy[p][0]) << "\" cy=\"" << py(xy[p][1])
                        << "\" r=\"" << format_coord(dot) << "\"/>\n";
                svg << "</g>\n";
            }
        }
    }
    svg << "<g fill=\"#000000\">\n";
    for (std::size_t v = 0; v < xy.size(); ++v)
        svg << "<circle cx=\"" << px(xy[v][0]) << "\" cy=\"" << py(xy[v][1]) << "\" r=\""
            << format_coord(std::max(dot * 0.25, 0.5)) << "\"/>\n";
    svg << "</g>\n</svg>\n";
    return svg.str();
}

std::string to_dot(const PlanarGraph& pg, const ColoredCover* cover) {
    static const char* kPalette[] = {"red", "blue", "green", "purple",
                                     "orange", "brown", "pink", "gray"};
    std::vector<int> color(pg.graph.vertex_count, -1);
    if (cover)
        for (int c = cover->color_count() - 1; c >= 0; --c)
            for (const PointSet& set : cover->classes[c])
                for (PointId p : set) color[p] = c;
    std::ostringstream dot;
    dot << "graph g {\n  node [shape=point];\n";
    for (std::size_t v = 0; v < pg.graph.vertex_count; ++v) {
        dot << "  v" << v;
        std::string attrs;
        if (color[v] >= 0)
            attrs += std::string("color=") + kPalette[color[v] % 8];
        if (pg.embedding) {
            if (!attrs.empty()) attrs += ", ";
            attrs += "pos=\"" + format_coord((*pg.embedding)[v][0]) + "," +
                     format_coord((*pg.embedding)[v][1]) + "!\"";
        }
        if (!attrs.empty()) dot << " [" << attrs << "]";
        dot << ";\n";
    }
    for (const Edge& e : pg.graph.edges) dot << "  v" << e.u << " -- v" << e.v << ";\n";
    dot << "}\n";
    return dot.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write file: " + path);
    out << content;
}

}  // namespace nagata
