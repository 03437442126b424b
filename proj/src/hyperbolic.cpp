#include "nagata/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace nagata {

double hyperbolic_distance(const UpperHalfSpacePoint& p, const UpperHalfSpacePoint& q) {
    if (!(p.h > 0.0) || !(q.h > 0.0))
        throw ArgumentError("hyperbolic_distance: heights must be positive");
    const double dx1 = p.x1 - q.x1;
    const double dx2 = p.x2 - q.x2;
    const double dh = p.h - q.h;
    const double arg = 1.0 + (dx1 * dx1 + dx2 * dx2 + dh * dh) / (2.0 * p.h * q.h);
    return std::acosh(arg);
}

double busemann(const UpperHalfSpacePoint& p) {
    if (!(p.h > 0.0)) throw ArgumentError("busemann: height must be positive");
    return -std::log(p.h);
}

UpperHalfSpacePoint horosphere_projection(const UpperHalfSpacePoint& p, double level) {
    return {p.x1, p.x2, std::exp(-level)};
}

UpperHalfSpaceSample::UpperHalfSpaceSample(std::vector<UpperHalfSpacePoint> points)
    : points_(std::move(points)) {
    if (points_.empty()) throw ArgumentError("sample must contain at least one point");
    for (const auto& p : points_)
        if (!(p.h > 0.0)) throw ArgumentError("sample point with non-positive height");
    spot_check_axioms(0x9e3779b9u, 128);
}

UpperHalfSpaceSample UpperHalfSpaceSample::uniform(std::size_t n, const SampleBox& box,
                                                   std::uint64_t seed) {
    if (n == 0) throw ArgumentError("sample size must be positive");
    if (!(box.h_min > 0.0) || box.h_min > box.h_max || box.x1_min > box.x1_max ||
        box.x2_min > box.x2_max)
        throw ArgumentError("invalid sample box");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux1(box.x1_min, box.x1_max);
    std::uniform_real_distribution<double> ux2(box.x2_min, box.x2_max);
    std::uniform_real_distribution<double> uh(box.h_min, box.h_max);
    std::vector<UpperHalfSpacePoint> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pts.push_back({ux1(rng), ux2(rng), uh(rng)});
    UpperHalfSpaceSample sample(std::move(pts));
    sample.box = box;
    sample.seed = seed;
    return sample;
}

double UpperHalfSpaceSample::distance(PointId a, PointId b) const {
    if (a >= points_.size() || b >= points_.size())
        throw ArgumentError("point id out of range");
    if (a == b) return 0.0;
    return hyperbolic_distance(points_[a], points_[b]);
}

RealValuedFunction UpperHalfSpaceSample::busemann_values() const {
    RealValuedFunction f;
    f.values.reserve(points_.size());
    for (const auto& p : points_) f.values.push_back(busemann(p));
    f.claimed_lipschitz = 1.0;
    return f;
}

// -- Box regions -------------------------------------------------------------

bool BoxRegion::contains(double u, double v) const {
    for (const PlaneBox& b : boxes)
        if (b.u1 <= u && u < b.u2 && b.v1 <= v && v < b.v2) return true;
    return false;
}

double region_distance(const BoxRegion& a, const BoxRegion& b) {
    double best = kInf;
    for (const PlaneBox& x : a.boxes)
        for (const PlaneBox& y : b.boxes) {
            const double du = std::max({0.0, y.u1 - x.u2, x.u1 - y.u2});
            const double dv = std::max({0.0, y.v1 - x.v2, x.v1 - y.v2});
            best = std::min(best, std::hypot(du, dv));
        }
    return best;
}

double region_diameter(const BoxRegion& region) {
    double best = 0.0;
    for (std::size_t i = 0; i < region.boxes.size(); ++i)
        for (std::size_t j = i; j < region.boxes.size(); ++j) {
            const PlaneBox& x = region.boxes[i];
            const PlaneBox& y = region.boxes[j];
            const double du = std::max(x.u2, y.u2) - std::min(x.u1, y.u1);
            const double dv = std::max(x.v2, y.v2) - std::min(x.v1, y.v1);
            best = std::max(best, std::hypot(du, dv));
        }
    return best;
}

double horosphere_cover_constant() {
    return combined_bound_constant(1, std::sqrt(10.0));
}

namespace {

// Subtract half-open intervals from a half-open interval.
std::vector<Interval> subtract_intervals(Interval base, std::vector<Interval> cuts) {
    std::sort(cuts.begin(), cuts.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    double cursor = base.lo;
    for (const Interval& cut : cuts) {
        if (cursor >= base.hi) break;
        if (cut.hi <= cursor) continue;
        if (cut.lo > cursor) out.push_back({cursor, std::min(cut.lo, base.hi)});
        cursor = std::max(cursor, cut.hi);
    }
    if (cursor < base.hi) out.push_back({cursor, base.hi});
    return out;
}

std::int64_t floor_index(double value, double step) {
    std::int64_t k = static_cast<std::int64_t>(std::floor(value / step));
    while (value < static_cast<double>(k) * step) --k;
    while (value >= static_cast<double>(k + 1) * step) ++k;
    return k;
}

struct Brick {
    int color;  // 0 or 1
    Interval v;
};

// Parity-colored bricks of length 3w along the free axis; together with
// the request's u-interval each brick has diameter sqrt(10)*w and
// same-color bricks are 3w apart.
std::vector<Brick> brick_row(double w, double v_extent) {
    const double period = 3.0 * w;
    const std::int64_t jmin = floor_index(-v_extent, period);
    const std::int64_t jmax = floor_index(v_extent, period);
    std::vector<Brick> bricks;
    for (std::int64_t j = jmin; j <= jmax; ++j)
        bricks.push_back({static_cast<int>(((j % 2) + 2) % 2),
                          {static_cast<double>(j) * period, static_cast<double>(j + 1) * period}});
    return bricks;
}

}  // namespace

PlaneCover horosphere_plane_cover(double level, double scale, double extent) {
    if (!(scale > 0.0)) throw ArgumentError("horosphere_plane_cover: scale must be positive");
    if (extent < 0.0) throw ArgumentError("horosphere_plane_cover: negative extent");

    PlaneCover out;
    out.level = level;
    out.scale = scale;
    out.h0 = std::exp(-level);
    out.extent = extent;
    out.classes.resize(3);

    const double reach = extent / out.h0;  // intrinsic half-extent to cover
    const int n = 1;
    const double c = std::sqrt(10.0);
    const double t = (n + 2) * scale;
    const double cprime = (n + 2) * (c + 1.0);
    const double sprime = (cprime + 2.0) * scale;

    const std::int64_t kmin = floor_index(-reach, t);
    const std::int64_t kmax = floor_index(reach, t);

    struct TaggedRegion {
        std::int64_t k;
        BoxRegion region;
    };
    std::vector<std::vector<TaggedRegion>> d_sets(3);
    std::vector<std::vector<TaggedRegion>> e_sets(2);

    for (std::int64_t k = kmin; k <= kmax; ++k) {
        const double strip_lo = static_cast<double>(k) * t;
        const double strip_hi = static_cast<double>(k + 1) * t;
        if ((k % 2) != 0) {
            // Odd strip: bricks of width t, expanded and recolored. Every
            // brick spans the whole strip in u, so neighborhoods within the
            // strip only grow the free axis.
            const std::vector<Brick> bricks = brick_row(t, reach);
            const double grow = t / 3.0;
            std::vector<std::vector<Interval>> expanded(2);
            for (const Brick& b : bricks)
                expanded[b.color].push_back({b.v.lo - grow, b.v.hi + grow});
            // Classes 1, 2: expanded bricks; class 3: brick cores minus the
            // expanded bricks of the other color.
            std::vector<std::vector<BoxRegion>> grown(3);
            for (int color = 0; color < 2; ++color)
                for (const Interval& iv : expanded[color])
                    grown[color].push_back({{{strip_lo, strip_hi, iv.lo, iv.hi}}});
            for (const Brick& b : bricks) {
                const std::vector<Interval> core =
                    subtract_intervals(b.v, expanded[1 - b.color]);
                BoxRegion region;
                for (const Interval& iv : core)
                    region.boxes.push_back({strip_lo, strip_hi, iv.lo, iv.hi});
                if (!region.empty()) grown[2].push_back(std::move(region));
            }
            const IntervalColorCover bands = interval_slab_colors(k, n, scale);
            for (int i = 0; i < 3; ++i)
                for (const BoxRegion& piece : grown[i])
                    for (const Interval& band : bands.classes[i]) {
                        BoxRegion clipped;
                        for (const PlaneBox& box : piece.boxes) {
                            const double lo = std::max(box.u1, band.lo);
                            const double hi = std::min(box.u2, band.hi);
                            if (lo < hi) clipped.boxes.push_back({lo, hi, box.v1, box.v2});
                        }
                        if (!clipped.empty()) d_sets[i].push_back({k, std::move(clipped)});
                    }
        } else {
            for (const Brick& b : brick_row(sprime, reach))
                e_sets[b.color].push_back({k, {{{strip_lo, strip_hi, b.v.lo, b.v.hi}}}});
        }
    }

    for (int i = 0; i < 2; ++i) {
        std::vector<std::size_t> absorbed_by(d_sets[i].size(), SIZE_MAX);
        for (std::size_t e = 0; e < e_sets[i].size(); ++e)
            for (std::size_t d = 0; d < d_sets[i].size(); ++d) {
                if (std::llabs(d_sets[i][d].k - e_sets[i][e].k) != 1) continue;
                if (region_distance(e_sets[i][e].region, d_sets[i][d].region) < scale) {
                    if (absorbed_by[d] != SIZE_MAX)
                        throw ContractViolation(
                            "horosphere_plane_cover: piece within scale of two even sets");
                    absorbed_by[d] = e;
                }
            }
        for (std::size_t e = 0; e < e_sets[i].size(); ++e) {
            BoxRegion star = e_sets[i][e].region;
            for (std::size_t d = 0; d < d_sets[i].size(); ++d)
                if (absorbed_by[d] == e)
                    star.boxes.insert(star.boxes.end(), d_sets[i][d].region.boxes.begin(),
                                      d_sets[i][d].region.boxes.end());
            out.classes[i].push_back(std::move(star));
        }
        for (std::size_t d = 0; d < d_sets[i].size(); ++d)
            if (absorbed_by[d] == SIZE_MAX) out.classes[i].push_back(d_sets[i][d].region);
    }
    for (TaggedRegion& d : d_sets[2]) out.classes[2].push_back(std::move(d.region));
    return out;
}

bool PlaneCover::contains(int color, std::size_t set, double x1, double x2) const {
    return classes[color][set].contains(x1 / h0, x2 / h0);
}

ColoredCover HadamardSlabProvider::supply(const SlabCoverRequest& request) const {
    const double r = request.r;
    const double w = request.width;
    const RealValuedFunction f = sample_.busemann_values();
    PointSet slab;
    for (std::size_t p = 0; p < f.values.size(); ++p)
        if (f.values[p] >= r && f.values[p] < r + w) slab.push_back(static_cast<PointId>(p));

    ColoredCover cover;
    cover.domain = slab;
    cover.classes.resize(3);
    if (slab.empty()) return cover;

    const double level = r - w / 2.0;
    double extent = 0.0;
    for (PointId p : slab) {
        extent = std::max(extent, std::abs(sample_.points()[p].x1));
        extent = std::max(extent, std::abs(sample_.points()[p].x2));
    }
    const PlaneCover plane = horosphere_plane_cover(level, w, extent);

    for (int color = 0; color < 3; ++color)
        for (std::size_t set = 0; set < plane.classes[color].size(); ++set) {
            PointSet members;
            for (PointId p : slab)
                if (plane.contains(color, set, sample_.points()[p].x1, sample_.points()[p].x2))
                    members.push_back(p);
            if (!members.empty()) cover.classes[color].push_back(std::move(members));
        }

    // The pullback argument guarantees these bounds in ambient distance;
    // certify rather than trust.
    const CoverCertificate cert = certify(sample_, cover, w);
    if (!cert.is_cover)
        throw CertificationError("hadamard slab provider: projection cover missed a point in [" +
                                 std::to_string(r) + ", " + std::to_string(r + w) + ")");
    for (double sep : cert.per_color_separation)
        if (sep < w - kHyperbolicTolerance)
            throw CertificationError("hadamard slab provider: separation " +
                                     std::to_string(sep) + " below width " + std::to_string(w));
    const double bound = (horosphere_cover_constant() + 3.0) * w;
    if (cert.max_diameter > bound + kHyperbolicTolerance)
        throw CertificationError("hadamard slab provider: diameter " +
                                 std::to_string(cert.max_diameter) + " above bound " +
                                 std::to_string(bound));
    return cover;
}

HadamardCoverResult hadamard_cover(const UpperHalfSpaceSample& sample, double s) {
    if (!(s > 0.0)) throw ArgumentError("hadamard_cover: s must be positive");
    const RealValuedFunction f = sample.busemann_values();

    double lipschitz;
    if (sample.point_count() <= 20000) {
        lipschitz = measured_lipschitz(sample, f);
    } else {
        // Sampled scan: deterministic strided pairs.
        lipschitz = 0.0;
        const std::size_t n = sample.point_count();
        const std::size_t stride = n / 4000 + 1;
        for (std::size_t p = 0; p < n; p += stride)
            for (std::size_t q = p + 1; q < n; q += stride) {
                const double d = sample.distance(static_cast<PointId>(p),
                                                 static_cast<PointId>(q));
                if (d > 0.0)
                    lipschitz = std::max(lipschitz, std::abs(f.values[p] - f.values[q]) / d);
            }
    }
    if (lipschitz > 1.0 + kHyperbolicTolerance)
        throw PreconditionError("hadamard_cover: Busemann values measured " +
                                std::to_string(lipschitz) + "-Lipschitz");

    HadamardSlabProvider provider(sample);
    HurewiczOptions options;
    options.lipschitz_tolerance = kHyperbolicTolerance;
    options.assume_lipschitz = true;  // checked just above, with tolerance
    ColoredCover cover = hurewicz_combine(sample, f, provider, s, options);

    HadamardCoverResult result;
    result.scale = s;
    result.provider_c = provider.diameter_constant();
    result.busemann_lipschitz = lipschitz;
    result.certificate = certify(sample, cover, 0.49 * s);
    if (!result.certificate.is_cover)
        throw CertificationError("hadamard_cover: output does not cover the sample");
    if (result.certificate.color_count != 4)
        throw CertificationError("hadamard_cover: expected 4 colors");
    for (double sep : result.certificate.per_color_separation)
        if (sep < s - kHyperbolicTolerance)
            throw CertificationError("hadamard_cover: separation " + std::to_string(sep) +
                                     " below scale " + std::to_string(s));
    result.cover = std::move(cover);
    result.measured_diam_over_s = result.certificate.max_diameter / s;
    return result;
}

}  // namespace nagata
