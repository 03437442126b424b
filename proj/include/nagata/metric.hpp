#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "nagata/errors.hpp"

namespace nagata {

using PointId = std::uint32_t;

// Sorted, duplicate-free list of point ids.
using PointSet = std::vector<PointId>;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sorts and deduplicates in place.
void normalize_set(PointSet& s);

bool set_contains(const PointSet& s, PointId p);

struct Edge {
    PointId u = 0;
    PointId v = 0;
    double weight = 1.0;
};

struct WeightedGraph {
    std::size_t vertex_count = 0;
    std::vector<Edge> edges;

    bool unit_weights() const;
};

/// A real-valued function on the points of a space, with the Lipschitz
/// constant its producer claims for it.
struct RealValuedFunction {
    std::vector<double> values;
    double claimed_lipschitz = 1.0;
};

/// Finite metric space: immutable after construction, safe for concurrent
/// reads. Distances are exact doubles (shortest-path sums or closed forms).
class FiniteMetricSpace {
  public:
    virtual ~FiniteMetricSpace() = default;

    virtual std::size_t point_count() const = 0;
    virtual double distance(PointId a, PointId b) const = 0;

    /// d(p, sources) for every point p of the space; entries beyond `cutoff`
    /// may be reported as +inf. Empty source list gives all +inf.
    virtual std::vector<double> distance_field(std::span<const PointId> sources,
                                               double cutoff) const;

    /// Exact distances from `source` to each target, in target order.
    virtual std::vector<double> distances_to(PointId source,
                                             std::span<const PointId> targets) const;

  protected:
    // Symmetry and triangle inequality on deterministically seeded triples.
    void spot_check_axioms(unsigned seed, int triples) const;
};

/// Shortest-path metric on the vertices of a connected weighted graph.
/// All-pairs distances are cached up to 5000 vertices, computed on demand
/// above that.
class GraphMetricSpace final : public FiniteMetricSpace {
  public:
    explicit GraphMetricSpace(const WeightedGraph& graph);

    std::size_t point_count() const override { return n_; }
    double distance(PointId a, PointId b) const override;
    std::vector<double> distance_field(std::span<const PointId> sources,
                                       double cutoff) const override;
    std::vector<double> distances_to(PointId source,
                                     std::span<const PointId> targets) const override;

    bool unit_weights() const { return unit_; }
    const WeightedGraph& graph() const { return graph_; }

    static constexpr std::size_t kApspCacheLimit = 5000;

  private:
    std::vector<double> single_source(PointId source, double cutoff,
                                      const PointSet* stop_targets) const;
    std::vector<double> multi_source(std::span<const PointId> sources, double cutoff) const;

    WeightedGraph graph_;
    std::size_t n_ = 0;
    bool unit_ = false;
    std::vector<std::size_t> offsets_;
    std::vector<std::pair<PointId, double>> adjacency_;
    // APSP cache: hop counts for unit graphs, doubles otherwise.
    std::vector<std::uint16_t> hop_cache_;
    std::vector<double> dist_cache_;
};

std::unique_ptr<GraphMetricSpace> build_graph_metric(const WeightedGraph& graph);

// -- Subset operations --------------------------------------------------

/// { p : d(center, p) <= radius }. Negative radius is an argument error.
PointSet closed_ball(const FiniteMetricSpace& space, PointId center, double radius);

/// Max pairwise distance within S; 0 for empty or singleton S.
double subset_diameter(const FiniteMetricSpace& space, const PointSet& s);

/// Min cross distance between S and T; +inf if either set is empty.
double subset_distance(const FiniteMetricSpace& space, const PointSet& s, const PointSet& t);

/// { p : d(p, S) <= radius }; exactly S when radius is 0.
PointSet closed_neighborhood(const FiniteMetricSpace& space, const PointSet& s, double radius);

/// Points p with f(p) in [lo, hi) or [lo, hi] depending on `closed_right`.
PointSet preimage(const FiniteMetricSpace& space, const RealValuedFunction& f, double lo,
                  double hi, bool closed_right);

}  // namespace nagata
