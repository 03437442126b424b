#include "nagata/cover_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nagata {

bool IntervalColorCover::in_class(int color, double x) const {
    for (const Interval& iv : classes[color])
        if (iv.contains(x)) return true;
    return false;
}

IntervalColorCover interval_slab_colors(std::int64_t k, int n, double s) {
    if (n < 1) throw ArgumentError("interval_slab_colors: n must be >= 1");
    if (!(s > 0.0)) throw ArgumentError("interval_slab_colors: s must be positive");
    const double t = (n + 2) * s;
    const double slab_lo = static_cast<double>(k) * t;
    const double slab_hi = static_cast<double>(k + 1) * t;
    IntervalColorCover out;
    out.k = k;
    out.n = n;
    out.s = s;
    out.classes.resize(n + 2);
    for (int i = 1; i <= n + 2; ++i) {
        // Strip endpoints clamped to the slab so the strips tile it exactly.
        const double strip_lo = (i == 1) ? slab_lo : slab_lo + (i - 1) * s;
        const double strip_hi = (i == n + 2) ? slab_hi : slab_lo + i * s;
        auto& cls = out.classes[i - 1];
        if (slab_lo < strip_lo) cls.push_back({slab_lo, strip_lo});
        if (strip_hi < slab_hi) cls.push_back({strip_hi, slab_hi});
    }
    return out;
}

ColoredCover expand_and_recolor(const FiniteMetricSpace& space, const ColoredCover& cover,
                                double s) {
    if (!(s > 0.0)) throw ArgumentError("expand_and_recolor: s must be positive");
    if (cover.color_count() < 2)
        throw ArgumentError("expand_and_recolor: need n >= 1, i.e. at least two colors");
    if (cover.color_count() > 30)
        throw ArgumentError("expand_and_recolor: too many colors");
    cover.validate(space);

    const int colors = cover.color_count();

    struct Entry {
        const PointSet* points;
        int color;
    };
    std::vector<Entry> sets;
    for (int c = 0; c < colors; ++c)
        for (const PointSet& set : cover.classes[c]) sets.push_back({&set, c});

    // Precondition: the input is (n+1, s)-disjoint. Report a violating pair.
    {
        std::vector<double> fields_min(sets.size(), kInf);
        std::vector<std::size_t> fields_arg(sets.size(), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(sets.size()); ++i) {
            const std::vector<double> field = space.distance_field(*sets[i].points, s);
            for (std::size_t j = 0; j < sets.size(); ++j) {
                if (j == static_cast<std::size_t>(i) || sets[j].color != sets[i].color) continue;
                for (PointId q : *sets[j].points)
                    if (field[q] < fields_min[i]) {
                        fields_min[i] = field[q];
                        fields_arg[i] = j;
                    }
            }
        }
        for (std::size_t i = 0; i < sets.size(); ++i)
            if (fields_min[i] < s)
                throw PreconditionError(
                    "expand_and_recolor: input cover is not s-disjoint within color " +
                    std::to_string(sets[i].color + 1) + ": sets at distance " +
                    std::to_string(fields_min[i]) + " < " + std::to_string(s) +
                    " (set pair " + std::to_string(i) + ", " + std::to_string(fields_arg[i]) +
                    ")");
    }

    std::vector<char> in_domain(space.point_count(), 0);
    for (PointId p : cover.domain) in_domain[p] = 1;

    const double radius = s / 3.0;
    ColoredCover out;
    out.domain = cover.domain;
    out.classes.resize(colors + 1);

    // Expanded classes, clipped to the domain.
    std::vector<std::vector<PointSet>> expanded(colors);
    for (int c = 0; c < colors; ++c) expanded[c].resize(cover.classes[c].size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(sets.size()); ++i) {
        const std::vector<double> field = space.distance_field(*sets[i].points, radius);
        PointSet grown;
        for (std::size_t p = 0; p < field.size(); ++p)
            if (field[p] <= radius && in_domain[p]) grown.push_back(static_cast<PointId>(p));
        int c = sets[i].color;
        std::size_t idx = 0;
        for (std::size_t j = 0; j < static_cast<std::size_t>(i); ++j)
            if (sets[j].color == c) ++idx;
        expanded[c][idx] = std::move(grown);
    }
    for (int c = 0; c < colors; ++c) out.classes[c] = expanded[c];

    // Per-point bitmask of colors whose expanded sets contain it.
    std::vector<std::uint32_t> mask(space.point_count(), 0);
    for (int c = 0; c < colors; ++c)
        for (const PointSet& grown : expanded[c])
            for (PointId p : grown) mask[p] |= (1u << c);

    // Extra color: each original set minus all expanded sets of other colors.
    for (const Entry& entry : sets) {
        const std::uint32_t other = ~(1u << entry.color);
        PointSet core;
        for (PointId p : *entry.points)
            if ((mask[p] & other) == 0) core.push_back(p);
        if (!core.empty()) out.classes[colors].push_back(std::move(core));
    }
    return out;
}

double combined_bound_constant(int n, double c) {
    return (c + 2.0) * (n + 2.0) * (c + 1.0) + 2.0 * c + 2.0;
}

namespace {

std::int64_t slab_index(double value, double t) {
    std::int64_t k = static_cast<std::int64_t>(std::floor(value / t));
    // Guard the floor against rounding at slab boundaries.
    while (value < static_cast<double>(k) * t) --k;
    while (value >= static_cast<double>(k + 1) * t) ++k;
    return k;
}

}  // namespace

ColoredCover hurewicz_combine(const FiniteMetricSpace& space, const RealValuedFunction& f,
                              const SlabCoverProvider& provider, double s,
                              const HurewiczOptions& options, HurewiczTrace* trace) {
    const int n = provider.n();
    if (n < 1) throw ArgumentError("hurewicz_combine: provider must have n >= 1");
    if (!(s > 0.0)) throw ArgumentError("hurewicz_combine: s must be positive");
    const std::size_t points = space.point_count();
    if (f.values.size() != points) throw ArgumentError("hurewicz_combine: size mismatch");
    if (points == 0) throw ArgumentError("hurewicz_combine: empty space");

    if (!options.assume_lipschitz) {
        double measured;
        if (const auto* graph = dynamic_cast<const GraphMetricSpace*>(&space))
            measured = edge_lipschitz_bound(*graph, f);
        else
            measured = measured_lipschitz(space, f);
        if (measured > 1.0 + options.lipschitz_tolerance)
            throw PreconditionError("hurewicz_combine: f is not 1-Lipschitz (measured " +
                                    std::to_string(measured) + ")");
    }

    const double t = (n + 2) * s;
    const double c = provider.diameter_constant();
    const double cprime = (n + 2) * (c + 1.0);
    const double sprime = (cprime + 2.0) * s;

    // Bucket points into slabs I_k = [kt, (k+1)t).
    std::vector<std::int64_t> slab_of(points);
    std::int64_t kmin = 0, kmax = 0;
    for (std::size_t p = 0; p < points; ++p) {
        slab_of[p] = slab_index(f.values[p], t);
        if (p == 0) {
            kmin = kmax = slab_of[p];
        } else {
            kmin = std::min(kmin, slab_of[p]);
            kmax = std::max(kmax, slab_of[p]);
        }
    }
    const std::size_t slabs = static_cast<std::size_t>(kmax - kmin + 1);
    std::vector<PointSet> bucket(slabs);
    for (std::size_t p = 0; p < points; ++p)
        bucket[slab_of[p] - kmin].push_back(static_cast<PointId>(p));

    // Provider covers for every nonempty slab: width t on odd slabs, width
    // s' on even slabs, intersected with the half-open slab afterwards.
    std::vector<ColoredCover> slab_cover(slabs);
    std::vector<char> wanted(slabs, 0);
    for (std::size_t ki = 0; ki < slabs; ++ki) wanted[ki] = !bucket[ki].empty();
    auto fetch = [&](std::size_t ki) {
        const std::int64_t k = kmin + static_cast<std::int64_t>(ki);
        const bool odd = (k % 2) != 0;
        const double width = odd ? t : sprime;
        const ColoredCover raw = provider.supply({static_cast<double>(k) * t, width});
        if (raw.color_count() > n + 1)
            throw ContractViolation("slab cover provider returned too many colors");
        ColoredCover clipped;
        clipped.domain = bucket[ki];
        clipped.classes.resize(n + 1);
        for (int ci = 0; ci < raw.color_count(); ++ci)
            for (const PointSet& set : raw.classes[ci]) {
                PointSet cut;
                for (PointId p : set)
                    if (slab_of[p] - kmin == static_cast<std::int64_t>(ki)) cut.push_back(p);
                if (!cut.empty()) clipped.classes[ci].push_back(std::move(cut));
            }
        slab_cover[ki] = std::move(clipped);
    };
    if (provider.concurrent_safe()) {
        std::exception_ptr error;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (std::int64_t ki = 0; ki < static_cast<std::int64_t>(slabs); ++ki) {
            if (!wanted[ki]) continue;
            try {
                fetch(static_cast<std::size_t>(ki));
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical(nagata_fetch_error)
#endif
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
    } else {
        for (std::size_t ki = 0; ki < slabs; ++ki)
            if (wanted[ki]) fetch(ki);
    }

    struct TaggedSet {
        std::int64_t k;
        PointSet points;
    };
    std::vector<std::vector<TaggedSet>> d_sets(n + 2);  // odd-slab pieces per color
    std::vector<std::vector<TaggedSet>> e_sets(n + 1);  // even-slab sets per color

    for (std::size_t ki = 0; ki < slabs; ++ki) {
        if (!wanted[ki]) continue;
        const std::int64_t k = kmin + static_cast<std::int64_t>(ki);
        if ((k % 2) != 0) {
            ColoredCover grown = expand_and_recolor(space, slab_cover[ki], t);
            const IntervalColorCover bands = interval_slab_colors(k, n, s);
            for (int i = 0; i < n + 2; ++i)
                for (const PointSet& piece : grown.classes[i])
                    for (const Interval& band : bands.classes[i]) {
                        PointSet d;
                        for (PointId p : piece)
                            if (band.contains(f.values[p])) d.push_back(p);
                        if (!d.empty()) d_sets[i].push_back({k, std::move(d)});
                    }
        } else {
            for (int i = 0; i < n + 1; ++i)
                for (const PointSet& set : slab_cover[ki].classes[i])
                    e_sets[i].push_back({k, set});
        }
    }

    // Absorption: each even-slab set E grows into E*, the union of E with
    // all same-color odd pieces at distance < s. The construction
    // guarantees no piece is within s of two E's; assert it.
    ColoredCover out;
    out.domain.resize(points);
    for (std::size_t p = 0; p < points; ++p) out.domain[p] = static_cast<PointId>(p);
    out.classes.resize(n + 2);
    if (trace) trace->star_counts.assign(n + 2, 0);

    for (int i = 0; i <= n; ++i) {
        std::vector<std::vector<std::size_t>> hits(e_sets[i].size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (std::int64_t e = 0; e < static_cast<std::int64_t>(e_sets[i].size()); ++e) {
            const std::vector<double> field = space.distance_field(e_sets[i][e].points, s);
            for (std::size_t d = 0; d < d_sets[i].size(); ++d) {
                if (std::llabs(d_sets[i][d].k - e_sets[i][e].k) != 1) continue;
                double dist = kInf;
                for (PointId q : d_sets[i][d].points) dist = std::min(dist, field[q]);
                if (dist < s) hits[e].push_back(d);
            }
        }
        std::vector<std::size_t> absorbed_by(d_sets[i].size(), SIZE_MAX);
        for (std::size_t e = 0; e < e_sets[i].size(); ++e)
            for (std::size_t d : hits[e]) {
                if (absorbed_by[d] != SIZE_MAX)
                    throw ContractViolation(
                        "hurewicz_combine: an odd-slab piece is within s of two even-slab "
                        "sets; the slab cover provider violated its contract");
                absorbed_by[d] = e;
            }
        for (std::size_t e = 0; e < e_sets[i].size(); ++e) {
            PointSet star = e_sets[i][e].points;
            for (std::size_t d = 0; d < d_sets[i].size(); ++d)
                if (absorbed_by[d] == e)
                    star.insert(star.end(), d_sets[i][d].points.begin(),
                                d_sets[i][d].points.end());
            normalize_set(star);
            out.classes[i].push_back(std::move(star));
        }
        if (trace) trace->star_counts[i] = e_sets[i].size();
        for (std::size_t d = 0; d < d_sets[i].size(); ++d)
            if (absorbed_by[d] == SIZE_MAX) out.classes[i].push_back(d_sets[i][d].points);
    }
    for (TaggedSet& d : d_sets[n + 1]) out.classes[n + 1].push_back(std::move(d.points));
    return out;
}

RecolorResult greedy_recolor(const FiniteMetricSpace& space, const ColoredCover& cover, double s,
                             int max_colors) {
    if (!(s > 0.0)) throw ArgumentError("greedy_recolor: s must be positive");
    if (max_colors < 1) throw ArgumentError("greedy_recolor: max_colors must be >= 1");
    if (!is_cover(space, cover))
        throw PreconditionError("greedy_recolor: input does not cover its domain");

    std::vector<const PointSet*> sets;
    for (const auto& cls : cover.classes)
        for (const PointSet& set : cls) sets.push_back(&set);

    const std::size_t m = sets.size();
    // Pairwise set distances up to s; anything above s can never conflict.
    std::vector<std::vector<double>> dist(m, std::vector<double>(m, kInf));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(m); ++i) {
        const std::vector<double> field = space.distance_field(*sets[i], s);
        for (std::size_t j = 0; j < m; ++j) {
            if (j == static_cast<std::size_t>(i)) continue;
            double best = kInf;
            for (PointId q : *sets[j]) best = std::min(best, field[q]);
            dist[i][j] = best;
        }
    }

    static constexpr double kLadder[] = {1.0, 0.5, 0.25, 0.125, 0.0625};
    RecolorResult result;
    for (double lambda : kLadder) {
        const double threshold = lambda * s;
        std::vector<std::vector<std::size_t>> adj(m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                if (std::min(dist[i][j], dist[j][i]) < threshold) {
                    adj[i].push_back(j);
                    adj[j].push_back(i);
                }
        std::vector<std::size_t> order(m);
        for (std::size_t i = 0; i < m; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (adj[a].size() != adj[b].size()) return adj[a].size() > adj[b].size();
            const PointId fa = sets[a]->front(), fb = sets[b]->front();
            if (fa != fb) return fa < fb;
            return a < b;
        });
        std::vector<int> color(m, -1);
        bool ok = true;
        for (std::size_t v : order) {
            std::vector<char> used(max_colors, 0);
            for (std::size_t w : adj[v])
                if (color[w] >= 0) used[color[w]] = 1;
            int pick = -1;
            for (int ci = 0; ci < max_colors; ++ci)
                if (!used[ci]) {
                    pick = ci;
                    break;
                }
            if (pick < 0) {
                result.witness.clear();
                result.witness.push_back(v);
                for (int ci = 0; ci < max_colors; ++ci)
                    for (std::size_t w : adj[v])
                        if (color[w] == ci) {
                            result.witness.push_back(w);
                            break;
                        }
                ok = false;
                break;
            }
            color[v] = pick;
        }
        result.lambda = lambda;
        if (!ok) continue;
        int used_colors = 0;
        for (std::size_t i = 0; i < m; ++i) used_colors = std::max(used_colors, color[i] + 1);
        result.success = true;
        result.witness.clear();
        result.cover.domain = cover.domain;
        result.cover.classes.assign(used_colors, {});
        for (std::size_t i = 0; i < m; ++i) result.cover.classes[color[i]].push_back(*sets[i]);
        return result;
    }
    result.success = false;
    return result;
}

}  // namespace nagata
