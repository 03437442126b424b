#include "nagata/metric.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nagata {

void normalize_set(PointSet& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
}

bool set_contains(const PointSet& s, PointId p) {
    return std::binary_search(s.begin(), s.end(), p);
}

bool WeightedGraph::unit_weights() const {
    for (const Edge& e : edges)
        if (e.weight != 1.0) return false;
    return true;
}

// -- FiniteMetricSpace defaults ------------------------------------------

std::vector<double> FiniteMetricSpace::distance_field(std::span<const PointId> sources,
                                                      double cutoff) const {
    const std::size_t n = point_count();
    std::vector<double> field(n, kInf);
    if (sources.empty()) return field;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n * sources.size() > 4096)
#endif
    for (std::int64_t p = 0; p < static_cast<std::int64_t>(n); ++p) {
        double best = kInf;
        for (PointId src : sources) best = std::min(best, distance(src, static_cast<PointId>(p)));
        field[p] = best <= cutoff ? best : kInf;
    }
    return field;
}

std::vector<double> FiniteMetricSpace::distances_to(PointId source,
                                                    std::span<const PointId> targets) const {
    std::vector<double> out(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) out[i] = distance(source, targets[i]);
    return out;
}

void FiniteMetricSpace::spot_check_axioms(unsigned seed, int triples) const {
    const std::size_t n = point_count();
    if (n == 0) return;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int i = 0; i < triples; ++i) {
        const auto p = static_cast<PointId>(pick(rng));
        const auto q = static_cast<PointId>(pick(rng));
        const auto r = static_cast<PointId>(pick(rng));
        const double dpq = distance(p, q);
        if (distance(p, p) != 0.0)
            throw ContractViolation("metric axiom violated: d(p,p) != 0 at point " +
                                    std::to_string(p));
        if (dpq != distance(q, p))
            throw ContractViolation("metric axiom violated: asymmetry between points " +
                                    std::to_string(p) + " and " + std::to_string(q));
        if (dpq < 0.0)
            throw ContractViolation("metric axiom violated: negative distance");
        // Allow a whisker of rounding slack for closed-form metrics.
        const double lhs = distance(p, r);
        const double rhs = dpq + distance(q, r);
        if (lhs > rhs * (1.0 + 1e-12) + 1e-300)
            throw ContractViolation("metric axiom violated: triangle inequality at points " +
                                    std::to_string(p) + ", " + std::to_string(q) + ", " +
                                    std::to_string(r));
    }
}

// -- GraphMetricSpace -----------------------------------------------------

GraphMetricSpace::GraphMetricSpace(const WeightedGraph& graph) : graph_(graph) {
    n_ = graph.vertex_count;
    if (n_ == 0) throw ArgumentError("graph must have at least one vertex");
    for (const Edge& e : graph.edges) {
        if (e.u >= n_ || e.v >= n_)
            throw ArgumentError("edge endpoint out of range: " + std::to_string(e.u) + "-" +
                                std::to_string(e.v));
        if (e.u == e.v) throw ArgumentError("self-loop at vertex " + std::to_string(e.u));
        if (!(e.weight > 0.0))
            throw ArgumentError("non-positive edge weight on " + std::to_string(e.u) + "-" +
                                std::to_string(e.v));
    }
    unit_ = graph.unit_weights();

    std::vector<std::size_t> degree(n_, 0);
    for (const Edge& e : graph.edges) {
        ++degree[e.u];
        ++degree[e.v];
    }
    offsets_.assign(n_ + 1, 0);
    for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
    adjacency_.resize(offsets_[n_]);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const Edge& e : graph.edges) {
        adjacency_[cursor[e.u]++] = {e.v, e.weight};
        adjacency_[cursor[e.v]++] = {e.u, e.weight};
    }

    // Connectivity: BFS over edges from vertex 0.
    std::vector<char> seen(n_, 0);
    std::queue<PointId> bfs;
    bfs.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!bfs.empty()) {
        const PointId v = bfs.front();
        bfs.pop();
        for (std::size_t i = offsets_[v]; i < offsets_[v + 1]; ++i) {
            const PointId w = adjacency_[i].first;
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                bfs.push(w);
            }
        }
    }
    if (reached != n_) {
        PointId missing = 0;
        for (std::size_t v = 0; v < n_; ++v)
            if (!seen[v]) {
                missing = static_cast<PointId>(v);
                break;
            }
        throw ArgumentError("graph is disconnected: no path between vertices 0 and " +
                            std::to_string(missing));
    }

    if (n_ <= kApspCacheLimit) {
        if (unit_) {
            hop_cache_.assign(n_ * n_, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
            for (std::int64_t src = 0; src < static_cast<std::int64_t>(n_); ++src) {
                std::vector<std::uint16_t> hops(n_, std::numeric_limits<std::uint16_t>::max());
                std::vector<PointId> frontier{static_cast<PointId>(src)};
                hops[src] = 0;
                std::uint16_t level = 0;
                std::vector<PointId> next;
                while (!frontier.empty()) {
                    ++level;
                    next.clear();
                    for (PointId v : frontier)
                        for (std::size_t i = offsets_[v]; i < offsets_[v + 1]; ++i) {
                            const PointId w = adjacency_[i].first;
                            if (hops[w] == std::numeric_limits<std::uint16_t>::max()) {
                                hops[w] = level;
                                next.push_back(w);
                            }
                        }
                    frontier.swap(next);
                }
                std::copy(hops.begin(), hops.end(), hop_cache_.begin() + src * n_);
            }
        } else {
            dist_cache_.assign(n_ * n_, kInf);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
            for (std::int64_t src = 0; src < static_cast<std::int64_t>(n_); ++src) {
                const PointId s = static_cast<PointId>(src);
                std::vector<double> row = single_source(s, kInf, nullptr);
                std::copy(row.begin(), row.end(), dist_cache_.begin() + src * n_);
            }
        }
    }

    spot_check_axioms(0x9e3779b9u, 128);
}

double GraphMetricSpace::distance(PointId a, PointId b) const {
    if (a >= n_ || b >= n_) throw ArgumentError("point id out of range");
    if (a == b) return 0.0;
    // Evaluate from the lower id: path sums accumulate in traversal order,
    // so this keeps d exactly symmetric even for inexact weights.
    const PointId lo = std::min(a, b), hi = std::max(a, b);
    if (!hop_cache_.empty()) return static_cast<double>(hop_cache_[lo * n_ + hi]);
    if (!dist_cache_.empty()) return dist_cache_[lo * n_ + hi];
    PointSet target{hi};
    return single_source(lo, kInf, &target)[hi];
}

std::vector<double> GraphMetricSpace::single_source(PointId source, double cutoff,
                                                    const PointSet* stop_targets) const {
    std::vector<double> dist(n_, kInf);
    std::size_t remaining = stop_targets ? stop_targets->size() : 0;
    if (unit_) {
        // BFS; hop counts are exact doubles.
        std::vector<PointId> frontier{source};
        dist[source] = 0.0;
        if (stop_targets && set_contains(*stop_targets, source)) --remaining;
        double level = 0.0;
        std::vector<PointId> next;
        while (!frontier.empty()) {
            if (stop_targets && remaining == 0) break;
            level += 1.0;
            if (level > cutoff) break;
            next.clear();
            for (PointId v : frontier)
                for (std::size_t i = offsets_[v]; i < offsets_[v + 1]; ++i) {
                    const PointId w = adjacency_[i].first;
                    if (dist[w] == kInf) {
                        dist[w] = level;
                        next.push_back(w);
                        if (stop_targets && set_contains(*stop_targets, w)) --remaining;
                    }
                }
            frontier.swap(next);
        }
        return dist;
    }
    using Item = std::pair<double, PointId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    dist[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
        const auto [d, v] = heap.top();
        heap.pop();
        if (d != dist[v]) continue;
        if (d > cutoff) break;
        if (stop_targets && set_contains(*stop_targets, v) && --remaining == 0) break;
        for (std::size_t i = offsets_[v]; i < offsets_[v + 1]; ++i) {
            const auto [w, wt] = adjacency_[i];
            const double nd = d + wt;
            if (nd < dist[w]) {
                dist[w] = nd;
                heap.push({nd, w});
            }
        }
    }
    return dist;
}

std::vector<double> GraphMetricSpace::multi_source(std::span<const PointId> sources,
                                                   double cutoff) const {
    std::vector<double> dist(n_, kInf);
    if (sources.empty()) return dist;
    if (unit_) {
        std::vector<PointId> frontier;
        for (PointId s : sources)
            if (dist[s] == kInf) {
                dist[s] = 0.0;
                frontier.push_back(s);
            }
        double level = 0.0;
        std::vector<PointId> next;
        while (!frontier.empty()) {
            level += 1.0;
            if (level > cutoff) break;
            next.clear();
            for (PointId v : frontier)
                for (std::size_t i = offsets_[v]; i < offsets_[v + 1]; ++i) {
                    const PointId w = adjacency_[i].first;
                    if (dist[w] == kInf) {
                        dist[w] = level;
                        next.push_back(w);
                    }
                }
            frontier.swap(next);
        }
        return dist;
    }
    using Item = std::pair<double, PointId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    for (PointId s : sources) {
        dist[s] = 0.0;
        heap.push({0.0, s});
    }
    while (!heap.empty()) {
        const auto [d, v] = heap.top();
        heap.pop();
        if (d != dist[v]) continue;
        if (d > cutoff) break;
        for (std::size_t i = offsets_[v]; i < offsets_[v + 1]; ++i) {
            const auto [w, wt] = adjacency_[i];
            const double nd = d + wt;
            if (nd < dist[w]) {
                dist[w] = nd;
                heap.push({nd, w});
            }
        }
    }
    return dist;
}

std::vector<double> GraphMetricSpace::distance_field(std::span<const PointId> sources,
                                                     double cutoff) const {
    std::vector<double> field = multi_source(sources, cutoff);
    for (double& d : field)
        if (d > cutoff) d = kInf;
    return field;
}

std::vector<double> GraphMetricSpace::distances_to(PointId source,
                                                   std::span<const PointId> targets) const {
    std::vector<double> out(targets.size());
    if (targets.empty()) return out;
    if (!hop_cache_.empty() || !dist_cache_.empty()) {
        for (std::size_t i = 0; i < targets.size(); ++i) out[i] = distance(source, targets[i]);
        return out;
    }
    PointSet stop(targets.begin(), targets.end());
    normalize_set(stop);
    std::vector<double> row = single_source(source, kInf, &stop);
    for (std::size_t i = 0; i < targets.size(); ++i) out[i] = row[targets[i]];
    return out;
}

std::unique_ptr<GraphMetricSpace> build_graph_metric(const WeightedGraph& graph) {
    return std::make_unique<GraphMetricSpace>(graph);
}

// -- Subset operations ----------------------------------------------------

PointSet closed_ball(const FiniteMetricSpace& space, PointId center, double radius) {
    if (radius < 0.0) throw ArgumentError("closed_ball: negative radius");
    if (center >= space.point_count()) throw ArgumentError("closed_ball: center out of range");
    const PointId c[1] = {center};
    std::vector<double> field = space.distance_field(std::span<const PointId>(c, 1), radius);
    PointSet ball;
    for (std::size_t p = 0; p < field.size(); ++p)
        if (field[p] <= radius) ball.push_back(static_cast<PointId>(p));
    return ball;
}

double subset_diameter(const FiniteMetricSpace& space, const PointSet& s) {
    if (s.size() <= 1) return 0.0;
    if (s.size() <= 64) {
        double best = 0.0;
        for (std::size_t i = 0; i + 1 < s.size(); ++i) {
            std::span<const PointId> rest(s.data() + i + 1, s.size() - i - 1);
            const std::vector<double> d = space.distances_to(s[i], rest);
            for (double x : d) best = std::max(best, x);
        }
        return best;
    }
    // Exact diameter with pruning: double sweep for a lower bound, then scan
    // members by decreasing distance from a rough center until 2*d(c,u)
    // cannot beat the best eccentricity found.
    auto argmax = [](const std::vector<double>& v) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] > v[best]) best = i;
        return best;
    };
    std::vector<double> d0 = space.distances_to(s[0], s);
    const std::size_t a = argmax(d0);
    std::vector<double> da = space.distances_to(s[a], s);
    const std::size_t b = argmax(da);
    std::vector<double> db = space.distances_to(s[b], s);
    double best = da[b];
    std::size_t center = 0;
    double center_score = kInf;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double score = std::max(da[i], db[i]);
        if (score < center_score) {
            center_score = score;
            center = i;
        }
    }
    std::vector<double> dc = space.distances_to(s[center], s);
    std::vector<std::size_t> order(s.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (dc[x] != dc[y]) return dc[x] > dc[y];
        return x < y;
    });
    for (std::size_t idx : order) {
        if (2.0 * dc[idx] <= best) break;
        const std::vector<double> du = space.distances_to(s[idx], s);
        for (double x : du) best = std::max(best, x);
    }
    return best;
}

double subset_distance(const FiniteMetricSpace& space, const PointSet& s, const PointSet& t) {
    if (s.empty() || t.empty()) return kInf;
    const PointSet& small = s.size() <= t.size() ? s : t;
    const PointSet& large = s.size() <= t.size() ? t : s;
    const std::vector<double> field = space.distance_field(small, kInf);
    double best = kInf;
    for (PointId p : large) best = std::min(best, field[p]);
    return best;
}

PointSet closed_neighborhood(const FiniteMetricSpace& space, const PointSet& s, double radius) {
    if (radius < 0.0) throw ArgumentError("closed_neighborhood: negative radius");
    if (radius == 0.0) return s;
    if (s.empty()) return {};
    const std::vector<double> field = space.distance_field(s, radius);
    PointSet out;
    for (std::size_t p = 0; p < field.size(); ++p)
        if (field[p] <= radius) out.push_back(static_cast<PointId>(p));
    return out;
}

PointSet preimage(const FiniteMetricSpace& space, const RealValuedFunction& f, double lo,
                  double hi, bool closed_right) {
    if (lo > hi) throw ArgumentError("preimage: lo > hi");
    if (f.values.size() != space.point_count())
        throw ArgumentError("preimage: function does not match space");
    PointSet out;
    for (std::size_t p = 0; p < f.values.size(); ++p) {
        const double v = f.values[p];
        if (v < lo) continue;
        if (closed_right ? v <= hi : v < hi) out.push_back(static_cast<PointId>(p));
    }
    return out;
}

}  // namespace nagata
