#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nagata/io.hpp"

namespace {

using namespace nagata;

std::vector<double> parse_scales(const std::string& text) {
    std::vector<double> scales;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        scales.push_back(std::stod(item));
    }
    if (scales.empty()) throw ArgumentError("no scales given");
    return scales;
}

CoverDocument run_cover_pipeline(const std::string& space_text, double s, PointId base) {
    CoverDocument doc;
    doc.s = s;
    if (detect_input_kind(space_text) == InputKind::Sample) {
        UpperHalfSpaceSample sample = parse_sample(space_text);
        HadamardCoverResult res = hadamard_cover(sample, s);
        doc.cover = std::move(res.cover);
        doc.certificate = res.certificate;
        doc.model = "upper-half-space";
        doc.measured["diam_over_s"] = res.measured_diam_over_s;
        doc.measured["provider_c"] = res.provider_c;
        doc.measured["busemann_lipschitz"] = res.busemann_lipschitz;
    } else {
        PlanarGraph pg = parse_graph(space_text);
        if (pg.embedding)
            std::cerr << "note: input embedding is trusted to be non-crossing\n";
        PlanarCoverResult res = planar_nagata_cover(pg, base, s);
        doc.cover = std::move(res.cover);
        doc.certificate = res.certificate;
        doc.measured["diam_over_s"] = res.measured_diam_over_s;
        doc.measured["provider_c"] = res.provider_c;
    }
    return doc;
}

int run(int argc, char** argv) {
    CLI::App app{"colored-cover toolkit for finite metric spaces"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a graph or sample document");
    gen->require_subcommand(1);
    std::string out_path;

    auto* gen_grid_cmd = gen->add_subcommand("grid", "rows x cols unit grid");
    std::size_t rows = 2, cols = 2;
    gen_grid_cmd->add_option("--rows", rows, "grid rows")->required();
    gen_grid_cmd->add_option("--cols", cols, "grid cols")->required();
    std::string grid_out;
    gen_grid_cmd->add_option("--out", grid_out, "output path (default stdout)");

    auto* gen_tiling_cmd = gen->add_subcommand("tiling", "{p,q} hyperbolic tiling");
    int tp = 7, tq = 3, tdepth = 3;
    gen_tiling_cmd->add_option("--p", tp, "polygon sides")->required();
    gen_tiling_cmd->add_option("--q", tq, "polygons per vertex")->required();
    gen_tiling_cmd->add_option("--depth", tdepth, "face-adjacency depth")->required();
    std::string tiling_out;
    gen_tiling_cmd->add_option("--out", tiling_out, "output path (default stdout)");

    auto* gen_delaunay_cmd = gen->add_subcommand("delaunay", "random planar Delaunay graph");
    std::size_t dn = 100;
    std::uint64_t dseed = 0;
    gen_delaunay_cmd->add_option("--n", dn, "number of points")->required();
    gen_delaunay_cmd->add_option("--seed", dseed, "random seed (default 0)");
    std::string delaunay_out;
    gen_delaunay_cmd->add_option("--out", delaunay_out, "output path (default stdout)");

    auto* gen_h3_cmd = gen->add_subcommand("h3", "uniform sample of hyperbolic 3-space");
    std::size_t hn = 1000;
    std::uint64_t hseed = 0;
    std::vector<double> box_values;
    gen_h3_cmd->add_option("--n", hn, "number of points")->required();
    gen_h3_cmd->add_option("--seed", hseed, "random seed (default 0)");
    gen_h3_cmd
        ->add_option("--box", box_values,
                     "x1min x1max x2min x2max hmin hmax (default -5 5 -5 5 0.1 10)")
        ->expected(6);
    std::string h3_out;
    gen_h3_cmd->add_option("--out", h3_out, "output path (default stdout)");

    // cover
    auto* cover_cmd = app.add_subcommand("cover", "run the matching cover pipeline");
    std::string cover_space;
    double cover_s = 1.0;
    PointId cover_base = 0;
    std::string cover_out;
    cover_cmd->add_option("--space", cover_space, "graph or sample document")->required();
    cover_cmd->add_option("--s", cover_s, "disjointness scale")->required();
    cover_cmd->add_option("--base", cover_base, "base vertex for graphs (default 0)");
    cover_cmd->add_option("--out", cover_out, "output path (default stdout)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "recompute and compare a certificate");
    std::string verify_space, verify_cover;
    verify_cmd->add_option("--space", verify_space, "graph or sample document")->required();
    verify_cmd->add_option("--cover", verify_cover, "cover document")->required();

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "run the cover pipeline over a scale ladder");
    std::string sweep_space, sweep_scales = "1,2,4,8", sweep_out;
    PointId sweep_base = 0;
    sweep_cmd->add_option("--space", sweep_space, "graph or sample document")->required();
    sweep_cmd->add_option("--scales", sweep_scales, "comma-separated scales (default 1,2,4,8)");
    sweep_cmd->add_option("--base", sweep_base, "base vertex for graphs (default 0)");
    sweep_cmd->add_option("--out", sweep_out, "output path (default stdout)");

    // export
    auto* export_cmd = app.add_subcommand("export", "render a graph (and cover) as SVG or DOT");
    std::string export_space, export_cover, export_format = "svg", export_out;
    export_cmd->add_option("--space", export_space, "graph document")->required();
    export_cmd->add_option("--cover", export_cover, "cover document (optional)");
    export_cmd->add_option("--format", export_format, "svg or dot (default svg)");
    export_cmd->add_option("--out", export_out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    auto emit = [](const std::string& path, const std::string& content) {
        if (path.empty())
            std::fputs(content.c_str(), stdout);
        else
            write_text_file(path, content);
    };

    if (gen_grid_cmd->parsed()) {
        emit(grid_out, format_graph(gen_grid(rows, cols)));
    } else if (gen_tiling_cmd->parsed()) {
        emit(tiling_out, format_graph(gen_hyperbolic_tiling(tp, tq, tdepth)));
    } else if (gen_delaunay_cmd->parsed()) {
        emit(delaunay_out, format_graph(gen_random_planar(dn, dseed)));
    } else if (gen_h3_cmd->parsed()) {
        SampleBox box;
        if (!box_values.empty()) {
            box.x1_min = box_values[0];
            box.x1_max = box_values[1];
            box.x2_min = box_values[2];
            box.x2_max = box_values[3];
            box.h_min = box_values[4];
            box.h_max = box_values[5];
        }
        emit(h3_out, format_sample(UpperHalfSpaceSample::uniform(hn, box, hseed)));
    } else if (cover_cmd->parsed()) {
        const CoverDocument doc =
            run_cover_pipeline(read_text_file(cover_space), cover_s, cover_base);
        emit(cover_out, format_cover(doc));
    } else if (verify_cmd->parsed()) {
        const std::string space_text = read_text_file(verify_space);
        const CoverDocument doc = parse_cover(read_text_file(verify_cover));
        CoverCertificate recomputed;
        if (detect_input_kind(space_text) == InputKind::Sample) {
            UpperHalfSpaceSample sample = parse_sample(space_text);
            recomputed = certify(sample, doc.cover, doc.certificate.multiplicity_scale);
        } else {
            GraphMetricSpace space(parse_graph(space_text).graph);
            recomputed = certify(space, doc.cover, doc.certificate.multiplicity_scale);
        }
        const std::vector<std::string> diff = certificate_diff(doc.certificate, recomputed);
        if (!diff.empty()) {
            std::string fields;
            for (const std::string& f : diff) fields += " " + f;
            std::cerr << "certificate mismatch in fields:" << fields << "\n";
            return 3;
        }
        std::puts("certificate verified");
    } else if (sweep_cmd->parsed()) {
        const std::string space_text = read_text_file(sweep_space);
        std::ostringstream table;
        table << "s\tcolors\tdiam_over_s\tmultiplicity\n";
        for (double s : parse_scales(sweep_scales)) {
            const CoverDocument doc = run_cover_pipeline(space_text, s, sweep_base);
            char row[128];
            std::snprintf(row, sizeof(row), "%g\t%d\t%.6g\t%d\n", s,
                          doc.certificate.color_count,
                          doc.certificate.max_diameter / s, doc.certificate.multiplicity);
            table << row;
        }
        emit(sweep_out, table.str());
    } else if (export_cmd->parsed()) {
        PlanarGraph pg = parse_graph(read_text_file(export_space));
        CoverDocument doc;
        const ColoredCover* cover = nullptr;
        if (!export_cover.empty()) {
            doc = parse_cover(read_text_file(export_cover));
            cover = &doc.cover;
        }
        if (export_format == "svg")
            emit(export_out, to_svg(pg, cover));
        else if (export_format == "dot")
            emit(export_out, to_dot(pg, cover));
        else
            throw ArgumentError("unknown export format: " + export_format);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const nagata::ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nagata::CertificationError& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        return 3;
    } catch (const nagata::LadderExhausted& e) {
        std::cerr << "ladder exhausted: " << e.what() << "\n";
        return 4;
    } catch (const nagata::PreconditionError& e) {
        std::cerr << "precondition failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
