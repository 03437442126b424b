#pragma once

#include <cstdint>
#include <vector>

#include "nagata/cover_calculus.hpp"
#include "nagata/metric.hpp"

namespace nagata {

// Comparisons against geometric bounds in this module allow this much
// floating-point slack; everything else in the toolkit compares exactly.
constexpr double kHyperbolicTolerance = 1e-9;

struct UpperHalfSpacePoint {
    double x1 = 0.0;
    double x2 = 0.0;
    double h = 1.0;  // height, must be positive
};

/// Closed-form distance in the upper half-space model:
/// arccosh(1 + (dx1^2 + dx2^2 + dh^2) / (2 h_p h_q)).
double hyperbolic_distance(const UpperHalfSpacePoint& p, const UpperHalfSpacePoint& q);

/// Busemann function for the boundary point at vertical infinity: -ln h.
double busemann(const UpperHalfSpacePoint& p);

/// Nearest-point projection onto the horosphere at the given Busemann
/// level: vertical drop to height e^(-level).
UpperHalfSpacePoint horosphere_projection(const UpperHalfSpacePoint& p, double level);

struct SampleBox {
    double x1_min = -5.0, x1_max = 5.0;
    double x2_min = -5.0, x2_max = 5.0;
    double h_min = 0.1, h_max = 10.0;
};

/// Finite sample of hyperbolic 3-space exposing the metric space contract.
class UpperHalfSpaceSample final : public FiniteMetricSpace {
  public:
    explicit UpperHalfSpaceSample(std::vector<UpperHalfSpacePoint> points);

    static UpperHalfSpaceSample uniform(std::size_t n, const SampleBox& box,
                                        std::uint64_t seed);

    std::size_t point_count() const override { return points_.size(); }
    double distance(PointId a, PointId b) const override;

    const std::vector<UpperHalfSpacePoint>& points() const { return points_; }
    RealValuedFunction busemann_values() const;

    // Provenance, recorded in exported documents.
    SampleBox box;
    std::uint64_t seed = 0;

  private:
    std::vector<UpperHalfSpacePoint> points_;
};

// -- Horosphere plane covers ------------------------------------------------

/// Half-open axis-aligned box [u1, u2) x [v1, v2) in intrinsic horosphere
/// coordinates.
struct PlaneBox {
    double u1 = 0.0, u2 = 0.0, v1 = 0.0, v2 = 0.0;
};

/// Finite union of boxes; membership is exact, distances and diameters are
/// the closed-form values on closures.
struct BoxRegion {
    std::vector<PlaneBox> boxes;

    bool empty() const { return boxes.empty(); }
    bool contains(double u, double v) const;
};

double region_distance(const BoxRegion& a, const BoxRegion& b);
double region_diameter(const BoxRegion& region);

/// The intrinsic-diameter constant of horosphere plane covers:
/// the combination bound for n = 1 and the brick provider's c = sqrt(10).
double horosphere_cover_constant();

/// 3-colored cover of the flat intrinsic plane of the horosphere at the
/// given Busemann level. Sets are box regions in intrinsic coordinates
/// (ambient horizontal coordinates divided by e^(-level)); the cover is
/// scale-disjoint per color and horosphere_cover_constant()*scale-bounded,
/// intrinsically, out to the given ambient horizontal extent.
struct PlaneCover {
    double level = 0.0;
    double scale = 0.0;
    double h0 = 1.0;  // e^(-level)
    double extent = 0.0;
    std::vector<std::vector<BoxRegion>> classes;  // 3 colors

    /// Membership of the point with ambient horizontal coordinates (x1, x2).
    bool contains(int color, std::size_t set, double x1, double x2) const;
};

PlaneCover horosphere_plane_cover(double level, double scale, double extent);

/// Covers the sample points with Busemann values in [r, r+width) by pulling
/// a horosphere plane cover back through the nearest-point projection.
/// The result is certified against ambient hyperbolic distance: 3 colors,
/// per-color separation >= width, diameter <= (c2'+3)*width.
class HadamardSlabProvider final : public SlabCoverProvider {
  public:
    explicit HadamardSlabProvider(const UpperHalfSpaceSample& sample) : sample_(sample) {}

    int color_count() const override { return 3; }
    double diameter_constant() const override { return horosphere_cover_constant() + 3.0; }
    ColoredCover supply(const SlabCoverRequest& request) const override;

  private:
    const UpperHalfSpaceSample& sample_;
};

struct HadamardCoverResult {
    ColoredCover cover;            // 4 colors
    CoverCertificate certificate;  // multiplicity at 0.49 s
    double scale = 0.0;
    double provider_c = 0.0;
    double measured_diam_over_s = 0.0;
    double busemann_lipschitz = 0.0;
};

/// Full demonstrator: Busemann function + horosphere slab covers combined
/// into a certified (4, s)-disjoint cover of the sample.
HadamardCoverResult hadamard_cover(const UpperHalfSpaceSample& sample, double s);

}  // namespace nagata
