#pragma once

#include <cstdint>
#include <vector>

#include "nagata/cover.hpp"
#include "nagata/metric.hpp"

namespace nagata {

/// Half-open real interval [lo, hi).
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const { return lo <= x && x < hi; }
    bool empty() const { return !(lo < hi); }
};

/// The n+2 colored interval classes of the slab I_k = [kt, (k+1)t) with
/// t = (n+2)s: class i holds the connected components of I_k minus the
/// strip [kt + (i-1)s, kt + is). Every point of I_k lies in exactly n+1
/// classes, and intervals within a class are at distance >= s.
struct IntervalColorCover {
    std::int64_t k = 0;
    int n = 1;
    double s = 1.0;
    std::vector<std::vector<Interval>> classes;

    bool in_class(int color, double x) const;
};

IntervalColorCover interval_slab_colors(std::int64_t k, int n, double s);

/// Grows every set of an (n+1, s)-disjoint cover by a closed s/3
/// neighborhood (within the domain) and adds an (n+2)-th color made of the
/// original sets minus all expanded sets of other colors. The result is
/// (n+2, s/3)-disjoint, (D + 2s/3)-bounded for D the input max diameter,
/// and every domain point lies in at least two sets of different colors.
ColoredCover expand_and_recolor(const FiniteMetricSpace& space, const ColoredCover& cover,
                                double s);

struct SlabCoverRequest {
    double r = 0.0;
    double width = 1.0;
};

/// Supplies covers of preimage slabs f^-1([r, r+width)). A conforming
/// provider returns covers with at most color_count() classes, each class
/// width-disjoint, bounded by diameter_constant() * width, covering the
/// requested slab. Conformance is established by certification in tests,
/// not trusted at call time.
class SlabCoverProvider {
  public:
    virtual ~SlabCoverProvider() = default;

    virtual int color_count() const = 0;          // n + 1
    virtual double diameter_constant() const = 0; // c
    virtual bool concurrent_safe() const { return true; }
    virtual ColoredCover supply(const SlabCoverRequest& request) const = 0;

    int n() const { return color_count() - 1; }
};

/// Diameter constant of the combined cover: (c+2)(n+2)(c+1) + 2c + 2.
double combined_bound_constant(int n, double c);

struct HurewiczOptions {
    double lipschitz_tolerance = 0.0;
    // Skip the 1-Lipschitz precondition scan (for functions that are
    // 1-Lipschitz by construction and already checked by the caller).
    bool assume_lipschitz = false;
};

/// For tests: the first star_counts[i] sets of output class i are the
/// grown even-slab sets (E-stars); the rest are unabsorbed odd pieces.
struct HurewiczTrace {
    std::vector<std::size_t> star_counts;
};

/// Combines slab covers of a 1-Lipschitz function into an (n+2, s)-disjoint
/// cover of the whole space, bounded by combined_bound_constant(n, c) * s.
ColoredCover hurewicz_combine(const FiniteMetricSpace& space, const RealValuedFunction& f,
                              const SlabCoverProvider& provider, double s,
                              const HurewiczOptions& options = {},
                              HurewiczTrace* trace = nullptr);

struct RecolorResult {
    bool success = false;
    ColoredCover cover;                 // regrouped sets when success
    double lambda = 0.0;                // achieved, or smallest attempted on failure
    std::vector<std::size_t> witness;   // blocked set index, then one blocker per color
};

/// Regroups the sets of a cover (colors ignored) into at most max_colors
/// classes that are each lambda*s-disjoint, for the largest lambda on the
/// ladder {1, 1/2, 1/4, 1/8, 1/16} that admits a greedy coloring of the
/// conflict graph. Set contents are unchanged. May fail.
RecolorResult greedy_recolor(const FiniteMetricSpace& space, const ColoredCover& cover, double s,
                             int max_colors);

}  // namespace nagata
