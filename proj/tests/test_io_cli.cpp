#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "nagata/io.hpp"
#include "test_support.hpp"

using namespace nagata;
namespace fs = std::filesystem;

namespace {

fs::path test_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "nagata_io_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string cli_path() {
    const char* env = std::getenv("NAGATA_CLI");
    REQUIRE_MESSAGE(env != nullptr, "NAGATA_CLI must point at the CLI binary");
    return env;
}

int run_cli(const std::string& args, std::string* output = nullptr) {
    const fs::path out = test_dir() / "stdout.txt";
    const std::string command =
        "\"" + cli_path() + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
    const int status = std::system(command.c_str());
    if (output) *output = read_text_file(out.string());
    if (status < 0) return -1;
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("graph document round trip") {
    PlanarGraph pg = gen_grid(3, 4);
    const std::string text = format_graph(pg);
    const PlanarGraph back = parse_graph(text);
    CHECK(back.graph.vertex_count == 12);
    CHECK(back.graph.edges.size() == pg.graph.edges.size());
    REQUIRE(back.embedding.has_value());
    CHECK(*back.embedding == *pg.embedding);
    CHECK(format_graph(back) == text);
}

TEST_CASE("edge list parsing") {
    const PlanarGraph pg = parse_graph("0 1 1.0\n1 2 2.5\n\n2 3 1\n");
    CHECK(pg.graph.vertex_count == 4);
    CHECK(pg.graph.edges.size() == 3);
    CHECK(pg.graph.edges[1].weight == 2.5);
    CHECK_FALSE(pg.embedding.has_value());
    CHECK_THROWS_AS(parse_graph("0 1\n"), ArgumentError);
    CHECK_THROWS_AS(parse_graph(""), ArgumentError);
    CHECK_THROWS_AS(parse_graph("{\"edges\": []}"), ArgumentError);
}

TEST_CASE("sample document round trip") {
    const UpperHalfSpaceSample sample = UpperHalfSpaceSample::uniform(20, {}, 9);
    const std::string text = format_sample(sample);
    const UpperHalfSpaceSample back = parse_sample(text);
    CHECK(back.point_count() == 20);
    CHECK(back.seed == 9);
    CHECK(back.points()[7].h == sample.points()[7].h);
    CHECK(format_sample(back) == text);
    CHECK(detect_input_kind(text) == InputKind::Sample);
    CHECK(detect_input_kind(format_graph(gen_grid(2, 2))) == InputKind::Graph);
}

TEST_CASE("cover document round trip keeps infinite separations") {
    CoverDocument doc;
    doc.s = 2.0;
    doc.cover.domain = {0, 1, 2};
    doc.cover.classes = {{{0, 1}}, {{2}}};
    doc.certificate.is_cover = true;
    doc.certificate.color_count = 2;
    doc.certificate.per_color_separation = {kInf, 3.5};
    doc.certificate.max_diameter = 1.25;
    doc.certificate.multiplicity_scale = 0.98;
    doc.certificate.multiplicity = 2;
    doc.measured["diam_over_s"] = 0.625;
    const std::string text = format_cover(doc);
    const CoverDocument back = parse_cover(text);
    CHECK(back.s == 2.0);
    CHECK(back.cover.classes == doc.cover.classes);
    CHECK(back.certificate == doc.certificate);
    CHECK(back.measured.at("diam_over_s") == 0.625);
    CHECK(format_cover(back) == text);
}

TEST_CASE("certificate_diff lists differing fields") {
    CoverCertificate a, b;
    a.per_color_separation = {1.0};
    b.per_color_separation = {2.0};
    b.multiplicity = 5;
    const auto diff = certificate_diff(a, b);
    CHECK(diff == std::vector<std::string>{"per_color_separation", "multiplicity"});
    CHECK(certificate_diff(a, a).empty());
}

TEST_CASE("svg and dot export") {
    const PlanarGraph pg = gen_grid(2, 3);
    ColoredCover cover;
    cover.domain = {0, 1, 2, 3, 4, 5};
    cover.classes = {{{0, 1, 2}}, {{3, 4, 5}}};
    const std::string svg = to_svg(pg, &cover);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("circle") != std::string::npos);
    CHECK(svg.find("#e41a1c") != std::string::npos);
    CHECK(svg.find("#377eb8") != std::string::npos);
    const std::string dot = to_dot(pg, &cover);
    CHECK(dot.find("v0 -- v1") != std::string::npos);

    PlanarGraph no_embedding = pg;
    no_embedding.embedding.reset();
    CHECK_THROWS_WITH_AS(to_svg(no_embedding, nullptr),
                         "svg export requires an embedding (missing field: coords)",
                         ArgumentError);
}

TEST_CASE("cli: gen grid document") {
    std::string out;
    CHECK(run_cli("gen grid --rows 2 --cols 2", &out) == 0);
    const PlanarGraph pg = parse_graph(out);
    CHECK(pg.graph.vertex_count == 4);
    CHECK(pg.graph.edges.size() == 4);
}

TEST_CASE("cli: gen h3 is byte-identical across runs") {
    std::string first, second;
    CHECK(run_cli("gen h3 --n 200 --seed 7", &first) == 0);
    CHECK(run_cli("gen h3 --n 200 --seed 7", &second) == 0);
    CHECK(first == second);
    CHECK_FALSE(first.empty());
    std::string other;
    CHECK(run_cli("gen h3 --n 200 --seed 8", &other) == 0);
    CHECK(first != other);
}

TEST_CASE("cli: gen tiling counts match the enumeration") {
    std::string out;
    CHECK(run_cli("gen tiling --p 7 --q 3 --depth 3", &out) == 0);
    const PlanarGraph pg = parse_graph(out);
    CHECK(pg.graph.vertex_count == 315);
    CHECK(pg.graph.edges.size() == 399);
}

TEST_CASE("cli: invalid generator parameters exit 2") {
    CHECK(run_cli("gen tiling --p 6 --q 3 --depth 2") == 2);
    CHECK(run_cli("gen grid --rows 0 --cols 2") == 2);
}

TEST_CASE("cli: cover then verify round trip") {
    const fs::path dir = test_dir();
    const fs::path space = dir / "grid.json";
    const fs::path cover = dir / "cover.json";
    REQUIRE(run_cli("gen grid --rows 8 --cols 8 --out \"" + space.string() + "\"") == 0);
    REQUIRE(run_cli("cover --space \"" + space.string() + "\" --s 2 --out \"" +
                    cover.string() + "\"") == 0);
    const CoverDocument doc = parse_cover(read_text_file(cover.string()));
    CHECK(doc.certificate.color_count == 3);
    CHECK(doc.certificate.is_cover);
    std::string out;
    CHECK(run_cli("verify --space \"" + space.string() + "\" --cover \"" + cover.string() +
                      "\"",
                  &out) == 0);
    CHECK(out.find("certificate verified") != std::string::npos);

    // Corrupt the certificate: verification must fail with exit 3.
    CoverDocument bad = doc;
    bad.certificate.multiplicity += 1;
    write_text_file((dir / "bad.json").string(), format_cover(bad));
    CHECK(run_cli("verify --space \"" + space.string() + "\" --cover \"" +
                  (dir / "bad.json").string() + "\"") == 3);
}

TEST_CASE("cli: cover pipeline is deterministic") {
    const fs::path dir = test_dir();
    const fs::path space = dir / "grid2.json";
    REQUIRE(run_cli("gen grid --rows 9 --cols 7 --out \"" + space.string() + "\"") == 0);
    std::string a, b;
    CHECK(run_cli("cover --space \"" + space.string() + "\" --s 1", &a) == 0);
    CHECK(run_cli("cover --space \"" + space.string() + "\" --s 1", &b) == 0);
    CHECK(a == b);
}

TEST_CASE("cli: sweep emits one row per scale") {
    const fs::path dir = test_dir();
    const fs::path space = dir / "grid3.json";
    REQUIRE(run_cli("gen grid --rows 6 --cols 6 --out \"" + space.string() + "\"") == 0);
    std::string out;
    CHECK(run_cli("sweep --space \"" + space.string() + "\" --scales 1,2,4,8", &out) == 0);
    CHECK(out.find("s\tcolors") != std::string::npos);
    int rows = 0;
    for (char c : out)
        if (c == '\n') ++rows;
    CHECK(rows == 5);  // header + 4 scales
}

TEST_CASE("cli: export svg needs an embedding") {
    const fs::path dir = test_dir();
    const fs::path space = dir / "grid4.json";
    REQUIRE(run_cli("gen grid --rows 3 --cols 3 --out \"" + space.string() + "\"") == 0);
    std::string svg;
    CHECK(run_cli("export --space \"" + space.string() + "\" --format svg", &svg) == 0);
    CHECK(svg.find("<svg") != std::string::npos);

    write_text_file((dir / "bare.txt").string(), "0 1 1\n1 2 1\n");
    CHECK(run_cli("export --space \"" + (dir / "bare.txt").string() + "\" --format svg") == 2);
    std::string dot;
    CHECK(run_cli("export --space \"" + (dir / "bare.txt").string() + "\" --format dot",
                  &dot) == 0);
    CHECK(dot.find("v1 -- v2") != std::string::npos);
}

TEST_CASE("cli: sample cover pipeline round trip") {
    const fs::path dir = test_dir();
    const fs::path space = dir / "sample.json";
    const fs::path cover = dir / "sample_cover.json";
    REQUIRE(run_cli("gen h3 --n 150 --seed 3 --out \"" + space.string() + "\"") == 0);
    REQUIRE(run_cli("cover --space \"" + space.string() + "\" --s 0.5 --out \"" +
                    cover.string() + "\"") == 0);
    const CoverDocument doc = parse_cover(read_text_file(cover.string()));
    CHECK(doc.model == "upper-half-space");
    CHECK(doc.certificate.color_count == 4);
    CHECK(doc.certificate.is_cover);
    CHECK(run_cli("verify --space \"" + space.string() + "\" --cover \"" + cover.string() +
                  "\"") == 0);
}

TEST_CASE("cli: ladder exhaustion surfaces as exit 4") {
    const fs::path path = test_dir() / "adversarial.json";
    write_text_file(path.string(), format_graph(testsupport::adversarial_annulus_graph()));
    CHECK(run_cli("cover --space \"" + path.string() + "\" --s 1") == 4);
}
