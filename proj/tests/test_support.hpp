#pragma once

#include <random>

#include "nagata/cover_calculus.hpp"
#include "nagata/metric.hpp"
#include "nagata/planar.hpp"

namespace nagata::testsupport {

WeightedGraph path_graph(std::size_t n);

/// Connected graph with random tree + chords and dyadic weights in
/// [1/4, 2], so all shortest-path sums are exact doubles.
WeightedGraph random_connected_graph(std::size_t n, std::mt19937_64& rng);

/// Random valid (colors, s)-disjoint cover; the domain is the set of points
/// the greedy placement managed to place (always nonempty).
ColoredCover random_disjoint_cover(const FiniteMetricSpace& space, int colors, double s,
                                   std::mt19937_64& rng);

/// Weighted graph whose annulus at r = 153, t = 3 around vertex 0 defeats
/// the arc ladder: three light paths anchored into one band, pairwise
/// linked at their midpoints, metrically longer than any arc budget.
PlanarGraph adversarial_annulus_graph();

/// Slab provider for path graphs with f = d(0, .): splits each slab into
/// colors() consecutive chunks by f-value. Diameter constant 1.
class PathBlockProvider final : public SlabCoverProvider {
  public:
    PathBlockProvider(const std::vector<double>& f, int colors) : f_(f), colors_(colors) {}

    int color_count() const override { return colors_; }
    double diameter_constant() const override { return 1.0; }
    ColoredCover supply(const SlabCoverRequest& request) const override;

  private:
    const std::vector<double>& f_;
    int colors_;
};

/// Slab provider for grids with f = d(corner, .) = i + j: bricks of length
/// 3*width along the anti-diagonal coordinate u = i - j, colored by brick
/// index mod colors(). Diameter constant sqrt(10).
class GridBrickProvider final : public SlabCoverProvider {
  public:
    GridBrickProvider(std::size_t rows, std::size_t cols, int colors)
        : rows_(rows), cols_(cols), colors_(colors) {}

    int color_count() const override { return colors_; }
    double diameter_constant() const override { return 3.16227766016838; }  // sqrt(10)
    ColoredCover supply(const SlabCoverRequest& request) const override;

  private:
    std::size_t rows_, cols_;
    int colors_;
};

}  // namespace nagata::testsupport
