#pragma once

#include <vector>

#include "nagata/metric.hpp"

namespace nagata {

/// A cover of `domain` whose sets are partitioned into color classes.
/// Empty sets are never stored; empty classes are allowed.
struct ColoredCover {
    PointSet domain;
    std::vector<std::vector<PointSet>> classes;

    int color_count() const { return static_cast<int>(classes.size()); }
    std::size_t set_count() const;

    // Throws ContractViolation if a stored set is empty, unsorted, or not
    // contained in the domain.
    void validate(const FiniteMetricSpace& space) const;
};

/// Measured properties of a cover at a given multiplicity scale.
struct CoverCertificate {
    bool is_cover = false;
    int color_count = 0;
    std::vector<double> per_color_separation;  // +inf when a class has < 2 sets
    double max_diameter = 0.0;
    double multiplicity_scale = 0.0;
    int multiplicity = 0;

    bool operator==(const CoverCertificate&) const = default;
};

/// True iff every point of the domain lies in at least one set.
bool is_cover(const FiniteMetricSpace& space, const ColoredCover& cover);

/// Max subset diameter over all sets; 0 if there are none.
double max_diameter(const FiniteMetricSpace& space, const ColoredCover& cover);

/// Per color, the min distance over distinct set pairs of that class
/// (+inf below two sets). The cover is (m,s)-disjoint iff every entry >= s.
std::vector<double> min_separation(const FiniteMetricSpace& space, const ColoredCover& cover);

/// Max over all points p of the space of the number of sets S (any color)
/// with d(p, S) <= s.
int multiplicity(const FiniteMetricSpace& space, const ColoredCover& cover, double s);

/// Bundles the measurements above; deterministic, including under OpenMP.
CoverCertificate certify(const FiniteMetricSpace& space, const ColoredCover& cover, double s);

/// Max over point pairs of |f(p) - f(q)| / d(p, q); 0 below two points.
double measured_lipschitz(const FiniteMetricSpace& space, const RealValuedFunction& f);

/// Cheap exact 1-Lipschitz test for graph metrics: max edge ratio
/// |f(u) - f(v)| / w(u,v), which bounds the metric Lipschitz constant.
double edge_lipschitz_bound(const GraphMetricSpace& space, const RealValuedFunction& f);

namespace reference {

/// Exhaustive serial verifier: no caching, no pruning, no truncated scans.
/// Kept as the independent oracle for the optimized `certify`.
CoverCertificate certify(const FiniteMetricSpace& space, const ColoredCover& cover, double s);

double measured_lipschitz(const FiniteMetricSpace& space, const RealValuedFunction& f);

}  // namespace reference

}  // namespace nagata
