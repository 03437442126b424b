#include "nagata/planar.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>
#include <random>
#include <string>
#include <unordered_map>

#include <boost/polygon/voronoi.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nagata {

PointSet annulus(const FiniteMetricSpace& space, const AnnulusSpec& spec) {
    if (spec.z >= space.point_count()) throw ArgumentError("annulus: base point out of range");
    if (!(spec.t > 0.0)) throw ArgumentError("annulus: width must be positive");
    if (spec.r < 0.0) throw ArgumentError("annulus: negative inner radius");
    const PointId src[1] = {spec.z};
    const std::vector<double> field =
        space.distance_field(std::span<const PointId>(src, 1), spec.r + spec.t);
    PointSet out;
    for (std::size_t p = 0; p < field.size(); ++p)
        if (field[p] >= spec.r && field[p] <= spec.r + spec.t)
            out.push_back(static_cast<PointId>(p));
    return out;
}

namespace {

// Connected components of the subgraph induced on `members`.
std::vector<PointSet> induced_components(const GraphMetricSpace& space, const PointSet& members) {
    std::vector<char> inside(space.point_count(), 0);
    for (PointId p : members) inside[p] = 1;
    std::vector<char> seen(space.point_count(), 0);
    std::vector<PointSet> comps;
    std::vector<std::vector<PointId>> adjacency(space.point_count());
    for (const Edge& e : space.graph().edges)
        if (inside[e.u] && inside[e.v]) {
            adjacency[e.u].push_back(e.v);
            adjacency[e.v].push_back(e.u);
        }
    for (PointId start : members) {
        if (seen[start]) continue;
        PointSet comp;
        std::queue<PointId> bfs;
        bfs.push(start);
        seen[start] = 1;
        while (!bfs.empty()) {
            const PointId v = bfs.front();
            bfs.pop();
            comp.push_back(v);
            for (PointId w : adjacency[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    bfs.push(w);
                }
        }
        normalize_set(comp);
        comps.push_back(std::move(comp));
    }
    return comps;
}

// Cyclic traversal order of one component: by embedding angle around the
// base point when an embedding exists, else by BFS from the smallest id.
std::vector<PointId> component_order(const PlanarGraph& pg, const GraphMetricSpace& space,
                                     const PointSet& comp, PointId z,
                                     const std::vector<double>& root_field) {
    std::vector<PointId> order(comp.begin(), comp.end());
    if (pg.embedding) {
        const auto& xy = *pg.embedding;
        const double zx = xy[z][0], zy = xy[z][1];
        std::sort(order.begin(), order.end(), [&](PointId a, PointId b) {
            const double aa = std::atan2(xy[a][1] - zy, xy[a][0] - zx);
            const double ab = std::atan2(xy[b][1] - zy, xy[b][0] - zx);
            if (aa != ab) return aa < ab;
            if (root_field[a] != root_field[b]) return root_field[a] < root_field[b];
            return a < b;
        });
        return order;
    }
    std::vector<char> inside(space.point_count(), 0);
    for (PointId p : comp) inside[p] = 1;
    std::vector<std::vector<PointId>> adjacency(space.point_count());
    for (const Edge& e : space.graph().edges)
        if (inside[e.u] && inside[e.v]) {
            adjacency[e.u].push_back(e.v);
            adjacency[e.v].push_back(e.u);
        }
    for (auto& nb : adjacency) std::sort(nb.begin(), nb.end());
    std::vector<PointId> out;
    std::vector<char> seen(space.point_count(), 0);
    std::queue<PointId> bfs;
    bfs.push(comp.front());
    seen[comp.front()] = 1;
    while (!bfs.empty()) {
        const PointId v = bfs.front();
        bfs.pop();
        out.push_back(v);
        for (PointId w : adjacency[v])
            if (!seen[w]) {
                seen[w] = 1;
                bfs.push(w);
            }
    }
    return out;
}

}  // namespace

AnnulusCoverResult annulus_cover(const PlanarGraph& pg, const GraphMetricSpace& space,
                                 const AnnulusSpec& spec) {
    const PointSet ann = annulus(space, spec);
    AnnulusCoverResult result;
    if (ann.empty()) {
        result.success = true;
        result.cover.classes.resize(2);
        result.certificate = certify(space, result.cover, spec.t);
        return result;
    }
    const PointId src[1] = {spec.z};
    const std::vector<double> root_field =
        space.distance_field(std::span<const PointId>(src, 1), kInf);
    // One cyclic order around the base point. A global angular order (rather
    // than per-component orders) lets the distance-budget cut absorb small
    // boundary fragments into the arcs of the main ring.
    std::vector<PointId> ring;
    if (pg.embedding) {
        ring.assign(ann.begin(), ann.end());
        const auto& xy = *pg.embedding;
        const double zx = xy[spec.z][0], zy = xy[spec.z][1];
        std::sort(ring.begin(), ring.end(), [&](PointId a, PointId b) {
            const double aa = std::atan2(xy[a][1] - zy, xy[a][0] - zx);
            const double ab = std::atan2(xy[b][1] - zy, xy[b][0] - zx);
            if (aa != ab) return aa < ab;
            if (root_field[a] != root_field[b]) return root_field[a] < root_field[b];
            return a < b;
        });
    } else {
        for (const PointSet& comp : induced_components(space, ann)) {
            const std::vector<PointId> order =
                component_order(pg, space, comp, spec.z, root_field);
            ring.insert(ring.end(), order.begin(), order.end());
        }
    }

    // Rung verification needs only threshold facts (multiplicity at t,
    // separation >= t, coverage); one truncated field per set answers all
    // three. The full certificate is computed once, for the returned cover.
    struct CheapCheck {
        bool covers = false;
        bool separated = false;
        int multiplicity = 0;
        double worst_separation = kInf;  // only meaningful when < t
    };
    const auto cheap_check = [&](const ColoredCover& cover, double t) {
        CheapCheck check;
        std::vector<char> hit(space.point_count(), 0);
        struct Flat {
            const PointSet* points;
            int color;
        };
        std::vector<Flat> sets;
        for (int c = 0; c < cover.color_count(); ++c)
            for (const PointSet& set : cover.classes[c]) sets.push_back({&set, c});
        for (const Flat& f : sets)
            for (PointId p : *f.points) hit[p] = 1;
        check.covers = true;
        for (PointId p : cover.domain)
            if (!hit[p]) check.covers = false;
        std::vector<std::atomic<int>> met(space.point_count());
        for (auto& m : met) m.store(0, std::memory_order_relaxed);
        std::atomic<bool> separated{true};
        std::vector<double> worst(sets.size(), kInf);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(sets.size()); ++i) {
            const std::vector<double> field = space.distance_field(*sets[i].points, t);
            for (std::size_t p = 0; p < field.size(); ++p)
                if (field[p] <= t) met[p].fetch_add(1, std::memory_order_relaxed);
            for (std::size_t j = 0; j < sets.size(); ++j) {
                if (j == static_cast<std::size_t>(i) || sets[j].color != sets[i].color)
                    continue;
                for (PointId q : *sets[j].points)
                    if (field[q] < t) {
                        separated.store(false, std::memory_order_relaxed);
                        worst[i] = std::min(worst[i], field[q]);
                    }
            }
        }
        check.separated = separated.load();
        for (const auto& m : met)
            check.multiplicity = std::max(check.multiplicity, m.load(std::memory_order_relaxed));
        for (double w : worst) check.worst_separation = std::min(check.worst_separation, w);
        return check;
    };

    static constexpr int kLadder[] = {4, 8, 16, 32, 64};
    ColoredCover best_cover;
    CheapCheck best_check;
    int best_bound = 0;
    bool have_best = false;
    for (int arc_bound : kLadder) {
        const double budget = arc_bound * spec.t / 2.0;
        ColoredCover candidate;
        candidate.domain = ann;
        candidate.classes.resize(2);
        // Greedy cut: extend an arc while staying within distance `budget`
        // of its first vertex, so arc diameter <= arc_bound*t.
        std::vector<PointSet> arcs;
        std::size_t i = 0;
        while (i < ring.size()) {
            const PointId head = ring[i];
            const PointId hs[1] = {head};
            const std::vector<double> field =
                space.distance_field(std::span<const PointId>(hs, 1), budget);
            PointSet arc{head};
            ++i;
            while (i < ring.size() && field[ring[i]] <= budget) {
                arc.push_back(ring[i]);
                ++i;
            }
            arcs.push_back(std::move(arc));
        }
        // The order is cyclic: an odd arc count would put two same-color
        // arcs next to the wrap, so merge the last two.
        if (arcs.size() >= 3 && arcs.size() % 2 == 1) {
            arcs[arcs.size() - 2].insert(arcs[arcs.size() - 2].end(), arcs.back().begin(),
                                         arcs.back().end());
            arcs.pop_back();
        }
        for (std::size_t a = 0; a < arcs.size(); ++a) {
            normalize_set(arcs[a]);
            candidate.classes[a % 2].push_back(std::move(arcs[a]));
        }
        const CheapCheck check = cheap_check(candidate, spec.t);
        const bool ok = check.covers && check.multiplicity <= 2 && check.separated;
        const bool improves = !have_best || check.multiplicity < best_check.multiplicity ||
                              (check.multiplicity == best_check.multiplicity &&
                               check.worst_separation > best_check.worst_separation);
        if (ok || improves) {
            best_cover = std::move(candidate);
            best_check = check;
            best_bound = arc_bound;
            have_best = true;
        }
        if (ok) break;
    }
    result.success = have_best && best_check.covers && best_check.multiplicity <= 2 &&
                     best_check.separated;
    result.cover = std::move(best_cover);
    result.arc_bound = best_bound;
    result.certificate = certify(space, result.cover, spec.t);
    result.diameter_constant = result.certificate.max_diameter / spec.t;
    return result;
}

namespace {

// Fallback for annulus covers whose multiplicity verified at <= 2 but whose
// arc coloring did not: regroup the same sets with the conflict-graph
// recoloring. Only a full-scale (lambda = 1) regrouping meets the provider
// contract.
bool recolor_annulus_fallback(const GraphMetricSpace& space, AnnulusCoverResult& res,
                              double width) {
    if (res.success || !res.certificate.is_cover || res.certificate.multiplicity > 2)
        return false;
    const RecolorResult rec = greedy_recolor(space, res.cover, width, 2);
    if (!rec.success || rec.lambda != 1.0) return false;
    res.cover = rec.cover;
    if (res.cover.color_count() < 2) res.cover.classes.resize(2);
    res.certificate = certify(space, res.cover, width);
    for (double sep : res.certificate.per_color_separation)
        if (sep < width) return false;
    res.success = true;
    res.diameter_constant = res.certificate.max_diameter / width;
    return true;
}

class PlanarAnnulusProvider final : public SlabCoverProvider {
  public:
    PlanarAnnulusProvider(const PlanarGraph& pg, const GraphMetricSpace& space, PointId z,
                          double c)
        : pg_(pg), space_(space), z_(z), c_(c) {}

    int color_count() const override { return 2; }
    double diameter_constant() const override { return c_; }

    ColoredCover supply(const SlabCoverRequest& request) const override {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = cache_.find({request.r, request.width});
            if (it != cache_.end()) return it->second;
        }
        AnnulusCoverResult res = annulus_cover(pg_, space_, {z_, request.r, request.width});
        if (!res.success) recolor_annulus_fallback(space_, res, request.width);
        if (!res.success)
            throw LadderExhausted("annulus cover ladder exhausted for slab [" +
                                  std::to_string(request.r) + ", " +
                                  std::to_string(request.r + request.width) + "]");
        {
            std::lock_guard<std::mutex> lock(mutex_);
            records_.push_back({request.r, request.width, res.certificate, res.arc_bound});
        }
        return res.cover;
    }

    void preload(double r, double width, const ColoredCover& cover) {
        cache_[{r, width}] = cover;
    }

    std::vector<AnnulusRecord> sorted_records() const {
        std::lock_guard<std::mutex> lock(mutex_);
        std::vector<AnnulusRecord> out = records_;
        std::sort(out.begin(), out.end(), [](const AnnulusRecord& a, const AnnulusRecord& b) {
            if (a.r != b.r) return a.r < b.r;
            return a.width < b.width;
        });
        return out;
    }

  private:
    const PlanarGraph& pg_;
    const GraphMetricSpace& space_;
    PointId z_;
    double c_;
    std::map<std::pair<double, double>, ColoredCover> cache_;
    mutable std::mutex mutex_;
    mutable std::vector<AnnulusRecord> records_;
};

}  // namespace

PlanarCoverResult planar_nagata_cover(const PlanarGraph& pg, const GraphMetricSpace& space,
                                      PointId z, double s) {
    if (!(s > 0.0)) throw ArgumentError("planar_nagata_cover: s must be positive");
    if (z >= space.point_count())
        throw ArgumentError("planar_nagata_cover: base point out of range");
    const PointId src[1] = {z};
    RealValuedFunction f;
    f.values = space.distance_field(std::span<const PointId>(src, 1), kInf);
    f.claimed_lipschitz = 1.0;

    const double t = 3.0 * s;  // n = 1
    double fmax = 0.0;
    for (double v : f.values) fmax = std::max(fmax, v);
    const std::int64_t kmax = static_cast<std::int64_t>(std::floor(fmax / t)) + 1;

    // Probe all odd slabs first; their measured diameters fix the provider
    // constant that the combination step needs up front.
    std::vector<std::int64_t> odd_ks;
    for (std::int64_t k = 1; k <= kmax; k += 2) odd_ks.push_back(k);
    std::vector<AnnulusCoverResult> odd_covers(odd_ks.size());
    std::exception_ptr error;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(odd_ks.size()); ++i) {
        try {
            odd_covers[i] =
                annulus_cover(pg, space, {z, static_cast<double>(odd_ks[i]) * t, t});
            if (!odd_covers[i].success) recolor_annulus_fallback(space, odd_covers[i], t);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical(nagata_planar_error)
#endif
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    double c = 1.0;
    for (std::size_t i = 0; i < odd_ks.size(); ++i) {
        if (!odd_covers[i].success)
            throw LadderExhausted("annulus cover ladder exhausted for slab [" +
                                  std::to_string(odd_ks[i] * t) + ", " +
                                  std::to_string((odd_ks[i] + 1) * t) + "]");
        c = std::max(c, odd_covers[i].diameter_constant);
    }

    PlanarAnnulusProvider provider(pg, space, z, c);
    std::vector<AnnulusRecord> records;
    for (std::size_t i = 0; i < odd_ks.size(); ++i) {
        const double r = static_cast<double>(odd_ks[i]) * t;
        provider.preload(r, t, odd_covers[i].cover);
        records.push_back({r, t, odd_covers[i].certificate, odd_covers[i].arc_bound});
    }

    HurewiczOptions options;
    options.lipschitz_tolerance = space.unit_weights() ? 0.0 : 1e-12;
    ColoredCover cover = hurewicz_combine(space, f, provider, s, options);

    PlanarCoverResult result;
    result.scale = s;
    result.provider_c = c;
    result.certificate = certify(space, cover, 0.49 * s);
    if (!result.certificate.is_cover)
        throw CertificationError("planar_nagata_cover: output does not cover all vertices");
    if (result.certificate.color_count != 3)
        throw CertificationError("planar_nagata_cover: expected 3 colors");
    for (double sep : result.certificate.per_color_separation)
        if (sep < s)
            throw CertificationError("planar_nagata_cover: separation " + std::to_string(sep) +
                                     " below scale " + std::to_string(s));
    result.cover = std::move(cover);
    result.measured_diam_over_s = result.certificate.max_diameter / s;
    result.annuli = provider.sorted_records();
    for (const AnnulusRecord& rec : records) result.annuli.push_back(rec);
    std::sort(result.annuli.begin(), result.annuli.end(),
              [](const AnnulusRecord& a, const AnnulusRecord& b) {
                  if (a.r != b.r) return a.r < b.r;
                  return a.width < b.width;
              });
    return result;
}

PlanarCoverResult planar_nagata_cover(const PlanarGraph& pg, PointId z, double s) {
    GraphMetricSpace space(pg.graph);
    return planar_nagata_cover(pg, space, z, s);
}

// -- Generators ------------------------------------------------------------

PlanarGraph gen_grid(std::size_t rows, std::size_t cols) {
    if (rows < 1 || cols < 1) throw ArgumentError("gen_grid: rows and cols must be >= 1");
    PlanarGraph pg;
    pg.graph.vertex_count = rows * cols;
    std::vector<std::array<double, 2>> xy(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            const PointId v = static_cast<PointId>(r * cols + c);
            xy[v] = {static_cast<double>(c), static_cast<double>(r)};
            if (c + 1 < cols) pg.graph.edges.push_back({v, v + 1, 1.0});
            if (r + 1 < rows)
                pg.graph.edges.push_back({v, static_cast<PointId>(v + cols), 1.0});
        }
    pg.embedding = std::move(xy);
    return pg;
}

namespace {

using Complex = std::complex<double>;

struct TilingFace {
    Complex center;
    std::vector<Complex> verts;
};

// Reflection across the hyperbolic geodesic through a and b in the
// Poincare disk: inversion in the circle orthogonal to the unit circle, or
// a mirror reflection when the geodesic is a diameter.
Complex reflect_point(Complex z, Complex a, Complex b) {
    const double cross = a.real() * b.imag() - a.imag() * b.real();
    if (std::abs(cross) < 1e-14) {
        Complex dir = b - a;
        if (std::abs(dir) < 1e-14) dir = a;
        dir /= std::abs(dir);
        return dir * dir * std::conj(z);
    }
    // Solve 2 Re(conj(p) o) = |p|^2 + 1 for p in {a, b}.
    const double a1 = 2.0 * a.real(), b1 = 2.0 * a.imag(), c1 = std::norm(a) + 1.0;
    const double a2 = 2.0 * b.real(), b2 = 2.0 * b.imag(), c2 = std::norm(b) + 1.0;
    const double det = a1 * b2 - a2 * b1;
    const Complex o((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det);
    const double radius_sq = std::norm(o) - 1.0;
    const Complex d = z - o;
    return o + radius_sq * d / std::norm(d);
}

struct QuantizedKey {
    std::int64_t x, y;
    bool operator==(const QuantizedKey&) const = default;
};

struct QuantizedHash {
    std::size_t operator()(const QuantizedKey& k) const {
        return std::hash<std::int64_t>()(k.x * 1000003 + k.y);
    }
};

QuantizedKey quantize(Complex z) {
    constexpr double kGrid = 1e7;
    return {static_cast<std::int64_t>(std::llround(z.real() * kGrid)),
            static_cast<std::int64_t>(std::llround(z.imag() * kGrid))};
}

}  // namespace

PlanarGraph gen_hyperbolic_tiling(int p, int q, int depth) {
    if (p < 3 || q < 3) throw ArgumentError("gen_hyperbolic_tiling: p and q must be >= 3");
    if (2 * (p + q) >= p * q)
        throw ArgumentError("gen_hyperbolic_tiling: need 1/p + 1/q < 1/2");
    if (depth < 0 || depth > 8)
        throw ArgumentError("gen_hyperbolic_tiling: depth must be in [0, 8]");

    const double pi = std::numbers::pi;
    // Circumradius R of the face: cosh R = cot(pi/p) cot(pi/q).
    const double cosh_circum =
        (std::cos(pi / p) * std::cos(pi / q)) / (std::sin(pi / p) * std::sin(pi / q));
    const double r0 = std::sqrt((cosh_circum - 1.0) / (cosh_circum + 1.0));

    TilingFace base;
    base.center = 0.0;
    for (int j = 0; j < p; ++j)
        base.verts.push_back(std::polar(r0, 2.0 * pi * j / p));

    std::vector<TilingFace> faces{base};
    std::unordered_map<QuantizedKey, std::size_t, QuantizedHash> face_index;
    face_index[quantize(base.center)] = 0;
    std::size_t ring_begin = 0, ring_end = 1;
    for (int d = 0; d < depth; ++d) {
        for (std::size_t fi = ring_begin; fi < ring_end; ++fi)
            for (int j = 0; j < p; ++j) {
                const TilingFace face = faces[fi];  // copy: faces may reallocate
                const Complex a = face.verts[j];
                const Complex b = face.verts[(j + 1) % p];
                TilingFace mirrored;
                mirrored.center = reflect_point(face.center, a, b);
                const QuantizedKey key = quantize(mirrored.center);
                if (face_index.count(key)) continue;
                for (const Complex& v : face.verts)
                    mirrored.verts.push_back(reflect_point(v, a, b));
                face_index[key] = faces.size();
                faces.push_back(std::move(mirrored));
            }
        ring_begin = ring_end;
        ring_end = faces.size();
    }

    std::unordered_map<QuantizedKey, PointId, QuantizedHash> vertex_index;
    std::vector<std::array<double, 2>> xy;
    auto vertex_id = [&](Complex v) {
        const QuantizedKey key = quantize(v);
        auto it = vertex_index.find(key);
        if (it != vertex_index.end()) return it->second;
        const PointId id = static_cast<PointId>(xy.size());
        vertex_index[key] = id;
        xy.push_back({v.real(), v.imag()});
        return id;
    };
    std::map<std::pair<PointId, PointId>, bool> edge_set;
    for (const TilingFace& face : faces)
        for (int j = 0; j < p; ++j) {
            const PointId u = vertex_id(face.verts[j]);
            const PointId v = vertex_id(face.verts[(j + 1) % p]);
            if (u == v) throw ContractViolation("tiling produced a degenerate edge");
            edge_set[{std::min(u, v), std::max(u, v)}] = true;
        }

    PlanarGraph pg;
    pg.graph.vertex_count = xy.size();
    for (const auto& [uv, _] : edge_set) pg.graph.edges.push_back({uv.first, uv.second, 1.0});
    pg.embedding = std::move(xy);
    return pg;
}

PlanarGraph gen_random_planar(std::size_t n_points, std::uint64_t seed) {
    if (n_points < 3) throw ArgumentError("gen_random_planar: need at least 3 points");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    constexpr double kScale = 1e7;
    std::vector<boost::polygon::point_data<int>> pts;
    std::map<std::pair<int, int>, bool> taken;
    while (pts.size() < n_points) {
        const double x = coord(rng), y = coord(rng);
        if (x * x + y * y > 1.0) continue;
        const int xi = static_cast<int>(std::llround(x * kScale));
        const int yi = static_cast<int>(std::llround(y * kScale));
        if (taken.count({xi, yi})) continue;
        taken[{xi, yi}] = true;
        pts.emplace_back(xi, yi);
    }

    boost::polygon::voronoi_diagram<double> vd;
    boost::polygon::construct_voronoi(pts.begin(), pts.end(), &vd);

    std::map<std::pair<PointId, PointId>, bool> edge_set;
    for (const auto& edge : vd.edges()) {
        if (!edge.is_primary()) continue;
        const PointId u = static_cast<PointId>(edge.cell()->source_index());
        const PointId v = static_cast<PointId>(edge.twin()->cell()->source_index());
        if (u == v) continue;
        edge_set[{std::min(u, v), std::max(u, v)}] = true;
    }

    PlanarGraph pg;
    pg.graph.vertex_count = n_points;
    for (const auto& [uv, _] : edge_set) pg.graph.edges.push_back({uv.first, uv.second, 1.0});
    std::vector<std::array<double, 2>> xy(n_points);
    for (std::size_t i = 0; i < n_points; ++i)
        xy[i] = {pts[i].x() / kScale, pts[i].y() / kScale};
    pg.embedding = std::move(xy);
    return pg;
}

}  // namespace nagata
