#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nagata/hyperbolic.hpp"
#include "nagata/cover.hpp"

using namespace nagata;

TEST_CASE("hyperbolic_distance examples") {
    const UpperHalfSpacePoint p{1.5, -2.0, 0.7};
    CHECK(hyperbolic_distance(p, p) == 0.0);
    // Vertical geodesic from height 1 to height e has length 1:
    // cosh(1) = (e^2 + 1) / (2 e).
    const double d = hyperbolic_distance({0, 0, 1.0}, {0, 0, std::exp(1.0)});
    CHECK(d == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(hyperbolic_distance({0, 0, 0.0}, {0, 0, 1.0}), ArgumentError);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> coord(-4.0, 4.0);
    std::uniform_real_distribution<double> height(0.2, 8.0);
    for (int i = 0; i < 200; ++i) {
        const UpperHalfSpacePoint a{coord(rng), coord(rng), height(rng)};
        const UpperHalfSpacePoint b{coord(rng), coord(rng), height(rng)};
        CHECK(hyperbolic_distance(a, b) == hyperbolic_distance(b, a));
    }
}

TEST_CASE("busemann examples") {
    CHECK(busemann({3.0, 4.0, 1.0}) == 0.0);
    CHECK(busemann({0.0, 0.0, std::exp(1.0)}) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("busemann values are 1-Lipschitz on samples") {
    const UpperHalfSpaceSample sample = UpperHalfSpaceSample::uniform(2000, {}, 17);
    const double lip = measured_lipschitz(sample, sample.busemann_values());
    CHECK(lip <= 1.0 + kHyperbolicTolerance);
    CHECK(lip > 0.9);  // vertical-ish pairs approach the bound
}

TEST_CASE("horosphere_projection examples") {
    const UpperHalfSpacePoint on_sphere{2.0, 3.0, 1.0};
    const UpperHalfSpacePoint proj = horosphere_projection(on_sphere, 0.0);
    CHECK(proj.x1 == 2.0);
    CHECK(proj.x2 == 3.0);
    CHECK(proj.h == 1.0);
    const UpperHalfSpacePoint q = horosphere_projection({3.0, -2.0, 0.5}, 0.0);
    CHECK(q.x1 == 3.0);
    CHECK(q.x2 == -2.0);
    CHECK(q.h == 1.0);
}

TEST_CASE("horosphere_projection does not increase distance") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    const double level = 0.25;
    const double h0 = std::exp(-level);
    std::uniform_real_distribution<double> height(0.05, h0);  // f >= level
    for (int i = 0; i < 20000; ++i) {
        const UpperHalfSpacePoint a{coord(rng), coord(rng), height(rng)};
        const UpperHalfSpacePoint b{coord(rng), coord(rng), height(rng)};
        const double before = hyperbolic_distance(a, b);
        const double after = hyperbolic_distance(horosphere_projection(a, level),
                                                 horosphere_projection(b, level));
        CHECK(after <= before + kHyperbolicTolerance);
    }
}

TEST_CASE("box region arithmetic") {
    const BoxRegion a{{{0.0, 1.0, 0.0, 3.0}}};
    const BoxRegion b{{{4.0, 5.0, 4.0, 6.0}}};
    CHECK(region_distance(a, b) == std::hypot(3.0, 1.0));
    CHECK(region_diameter(a) == std::hypot(1.0, 3.0));
    const BoxRegion both{{{0.0, 1.0, 0.0, 3.0}, {4.0, 5.0, 4.0, 6.0}}};
    CHECK(region_diameter(both) == std::hypot(5.0, 6.0));
    CHECK(a.contains(0.0, 0.0));
    CHECK_FALSE(a.contains(1.0, 0.0));  // half-open
    CHECK_FALSE(a.contains(0.5, 3.0));
}

TEST_CASE("brick geometry: diameter sqrt(10) w, same-parity gap 3w") {
    // Bricks are w wide and 3w long; the diagonal is sqrt(10) w and two
    // bricks of the same parity have one brick of the other in between.
    const double w = 2.0;
    const BoxRegion brick0{{{0.0, w, 0.0, 3.0 * w}}};
    const BoxRegion brick2{{{0.0, w, 6.0 * w, 9.0 * w}}};
    CHECK(region_diameter(brick0) == doctest::Approx(std::sqrt(10.0) * w).epsilon(1e-15));
    CHECK(region_distance(brick0, brick2) == 3.0 * w);
}

TEST_CASE("horosphere_plane_cover: intrinsic contract") {
    const double s = 1.0;
    const PlaneCover pc = horosphere_plane_cover(0.0, s, 20.0);
    REQUIRE(pc.classes.size() == 3);
    const double bound = horosphere_cover_constant() * s;
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < pc.classes[c].size(); ++i) {
            CHECK(region_diameter(pc.classes[c][i]) <= bound);
            for (std::size_t j = i + 1; j < pc.classes[c].size(); ++j)
                CHECK(region_distance(pc.classes[c][i], pc.classes[c][j]) >= s);
        }
    }
    // Lattice probe: every point of the requested region lies in a set.
    for (double u = -19.9; u < 19.9; u += 0.37)
        for (double v = -19.9; v < 19.9; v += 0.41) {
            int hits = 0;
            for (int c = 0; c < 3; ++c)
                for (const BoxRegion& region : pc.classes[c])
                    if (region.contains(u, v)) ++hits;
            CHECK(hits >= 1);
        }
}

TEST_CASE("horosphere_plane_cover: scale larger than the extent degenerates") {
    const PlaneCover pc = horosphere_plane_cover(0.0, 50.0, 5.0);
    std::size_t sets = 0;
    for (const auto& cls : pc.classes) sets += cls.size();
    CHECK(sets <= 12);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < pc.classes[c].size(); ++i)
            for (std::size_t j = i + 1; j < pc.classes[c].size(); ++j)
                CHECK(region_distance(pc.classes[c][i], pc.classes[c][j]) >= 50.0);
}

TEST_CASE("hadamard_slab_provider: empty slab gives an empty cover") {
    const UpperHalfSpaceSample sample = UpperHalfSpaceSample::uniform(50, {}, 5);
    HadamardSlabProvider provider(sample);
    const ColoredCover cover = provider.supply({1000.0, 0.5});
    CHECK(cover.domain.empty());
    CHECK(cover.set_count() == 0);
    CHECK(cover.color_count() == 3);
}

TEST_CASE("hadamard_slab_provider: certified pullback cover") {
    const UpperHalfSpaceSample sample = UpperHalfSpaceSample::uniform(2000, {}, 23);
    HadamardSlabProvider provider(sample);
    const double w = 0.5;
    const ColoredCover cover = provider.supply({0.0, w});
    CHECK(cover.color_count() == 3);
    CHECK_FALSE(cover.domain.empty());
    const CoverCertificate cert = certify(sample, cover, w);
    CHECK(cert.is_cover);
    for (double sep : cert.per_color_separation) CHECK(sep >= w - kHyperbolicTolerance);
    CHECK(cert.max_diameter <=
          (horosphere_cover_constant() + 3.0) * w + kHyperbolicTolerance);
    // Membership matches the slab.
    const RealValuedFunction f = sample.busemann_values();
    for (PointId p : cover.domain) {
        CHECK(f.values[p] >= 0.0);
        CHECK(f.values[p] < w);
    }
}

TEST_CASE("hadamard_cover: single point") {
    // f = 0 lands in an even slab: exactly one singleton set.
    const UpperHalfSpaceSample level(std::vector<UpperHalfSpacePoint>{{0.3, -0.7, 1.0}});
    const HadamardCoverResult res = hadamard_cover(level, 0.5);
    CHECK(res.cover.set_count() == 1);
    CHECK(res.certificate.color_count == 4);
    CHECK(res.certificate.is_cover);

    // Odd-slab placements may store the point under two colors; in every
    // case all sets are the singleton and the cover certifies.
    const UpperHalfSpaceSample odd(std::vector<UpperHalfSpacePoint>{{0.3, -0.7, 2.0}});
    const HadamardCoverResult res_odd = hadamard_cover(odd, 0.5);
    CHECK(res_odd.certificate.is_cover);
    CHECK(res_odd.cover.set_count() >= 1);
    CHECK(res_odd.cover.set_count() <= 2);
    for (const auto& cls : res_odd.cover.classes)
        for (const auto& set : cls) CHECK(set == PointSet{0});
}

TEST_CASE("hadamard_cover: certified 4-color cover of a sample") {
    const UpperHalfSpaceSample sample = UpperHalfSpaceSample::uniform(1500, {}, 29);
    const double s = 0.5;
    const HadamardCoverResult res = hadamard_cover(sample, s);
    CHECK(res.certificate.color_count == 4);
    CHECK(res.certificate.is_cover);
    for (double sep : res.certificate.per_color_separation)
        CHECK(sep >= s - kHyperbolicTolerance);
    CHECK(res.certificate.multiplicity <= 4);
    CHECK(res.busemann_lipschitz <= 1.0 + kHyperbolicTolerance);
    CHECK(res.measured_diam_over_s <=
          combined_bound_constant(2, res.provider_c) + kHyperbolicTolerance);
}

TEST_CASE("optimized and reference certificates agree on tiny samples") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 6; ++trial) {
        std::uniform_int_distribution<std::size_t> size(1, 12);
        const UpperHalfSpaceSample sample =
            UpperHalfSpaceSample::uniform(size(rng), {}, 100 + trial);
        const HadamardCoverResult res = hadamard_cover(sample, 0.5);
        CHECK(certify(sample, res.cover, 0.5) == reference::certify(sample, res.cover, 0.5));
    }
}

TEST_CASE("sample validation") {
    CHECK_THROWS_AS(UpperHalfSpaceSample(std::vector<UpperHalfSpacePoint>{}), ArgumentError);
    CHECK_THROWS_AS(UpperHalfSpaceSample(std::vector<UpperHalfSpacePoint>{{0, 0, -1.0}}),
                    ArgumentError);
    SampleBox bad;
    bad.h_min = 0.0;
    CHECK_THROWS_AS(UpperHalfSpaceSample::uniform(10, bad, 1), ArgumentError);
}
