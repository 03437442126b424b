#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <queue>
#include <random>

#include "nagata/metric.hpp"
#include "test_support.hpp"

using namespace nagata;
using namespace nagata::testsupport;

TEST_CASE("graph metric: single vertex") {
    WeightedGraph g;
    g.vertex_count = 1;
    GraphMetricSpace space(g);
    CHECK(space.point_count() == 1);
    CHECK(space.distance(0, 0) == 0.0);
}

TEST_CASE("graph metric: unit path distances") {
    GraphMetricSpace space(path_graph(3));
    CHECK(space.distance(0, 2) == 2.0);
    CHECK(space.distance(0, 1) == 1.0);
    CHECK(space.distance(2, 0) == 2.0);
}

TEST_CASE("graph metric: triangle prefers two-edge route") {
    WeightedGraph g;
    g.vertex_count = 3;
    g.edges = {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 5.0}};
    GraphMetricSpace space(g);
    CHECK(space.distance(0, 2) == 2.0);
}

TEST_CASE("graph metric: disconnected graph names unreachable vertices") {
    WeightedGraph g;
    g.vertex_count = 4;
    g.edges = {{0, 1, 1.0}, {2, 3, 1.0}};
    CHECK_THROWS_WITH_AS(GraphMetricSpace{g},
                         "graph is disconnected: no path between vertices 0 and 2",
                         ArgumentError);
}

TEST_CASE("graph metric: rejects bad edges") {
    WeightedGraph loop;
    loop.vertex_count = 2;
    loop.edges = {{0, 0, 1.0}, {0, 1, 1.0}};
    CHECK_THROWS_AS(GraphMetricSpace{loop}, ArgumentError);
    WeightedGraph negative;
    negative.vertex_count = 2;
    negative.edges = {{0, 1, -2.0}};
    CHECK_THROWS_AS(GraphMetricSpace{negative}, ArgumentError);
}

TEST_CASE("closed_ball examples") {
    GraphMetricSpace space(path_graph(5));
    CHECK(closed_ball(space, 2, 0.0) == PointSet{2});
    CHECK(closed_ball(space, 2, 1.0) == PointSet{1, 2, 3});
    CHECK(closed_ball(space, 2, 100.0) == PointSet{0, 1, 2, 3, 4});
    CHECK_THROWS_AS(closed_ball(space, 2, -1.0), ArgumentError);
}

TEST_CASE("subset_diameter examples") {
    GraphMetricSpace space(path_graph(6));
    CHECK(subset_diameter(space, {}) == 0.0);
    CHECK(subset_diameter(space, {3}) == 0.0);
    CHECK(subset_diameter(space, {0, 3, 5}) == 5.0);
}

TEST_CASE("subset_distance examples") {
    GraphMetricSpace space(path_graph(7));
    CHECK(subset_distance(space, {0, 1, 2}, {2, 3}) == 0.0);
    CHECK(subset_distance(space, {0, 1, 2}, {5, 6}) == 3.0);
    CHECK(subset_distance(space, {0, 1}, {}) == kInf);
    CHECK(subset_distance(space, {}, {}) == kInf);
}

TEST_CASE("closed_neighborhood examples") {
    GraphMetricSpace space(path_graph(7));
    CHECK(closed_neighborhood(space, {2, 4}, 0.0) == PointSet{2, 4});
    CHECK(closed_neighborhood(space, {3}, 2.0) == PointSet{1, 2, 3, 4, 5});
    CHECK(closed_neighborhood(space, {}, 3.0) == PointSet{});
    CHECK_THROWS_AS(closed_neighborhood(space, {1}, -0.5), ArgumentError);
}

TEST_CASE("preimage examples") {
    GraphMetricSpace space(path_graph(7));
    RealValuedFunction constant{std::vector<double>(7, 0.0), 1.0};
    CHECK(preimage(space, constant, 0.0, 1.0, false).size() == 7);
    RealValuedFunction f;
    for (int p = 0; p < 7; ++p) f.values.push_back(space.distance(0, p));
    CHECK(preimage(space, f, 2.0, 4.0, false) == PointSet{2, 3});
    CHECK(preimage(space, f, 2.0, 4.0, true) == PointSet{2, 3, 4});
    CHECK(preimage(space, f, 5.0, 5.0, false) == PointSet{});
    CHECK_THROWS_AS(preimage(space, f, 4.0, 2.0, false), ArgumentError);
}

TEST_CASE("metric axioms hold exhaustively on random spaces up to 60 points") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 8; ++trial) {
        std::uniform_int_distribution<std::size_t> size(2, 60);
        const std::size_t n = size(rng);
        GraphMetricSpace space(random_connected_graph(n, rng));
        for (PointId p = 0; p < n; ++p) {
            CHECK(space.distance(p, p) == 0.0);
            for (PointId q = 0; q < n; ++q) {
                CHECK(space.distance(p, q) == space.distance(q, p));
                for (PointId r = 0; r < n; ++r)
                    CHECK(space.distance(p, r) <= space.distance(p, q) + space.distance(q, r));
            }
        }
    }
}

TEST_CASE("closed_neighborhood is monotone in the radius") {
    std::mt19937_64 rng(11);
    GraphMetricSpace space(random_connected_graph(40, rng));
    const PointSet base{3, 17, 25};
    double radii[] = {0.0, 0.25, 0.5, 1.0, 2.5, 7.0};
    PointSet previous = closed_neighborhood(space, base, radii[0]);
    for (double r : radii) {
        PointSet current = closed_neighborhood(space, base, r);
        for (PointId p : previous) CHECK(set_contains(current, p));
        previous = std::move(current);
    }
}

TEST_CASE("subset_distance lower-bounds every cross pair") {
    std::mt19937_64 rng(13);
    GraphMetricSpace space(random_connected_graph(30, rng));
    const PointSet s{0, 5, 9}, t{12, 20, 29};
    const double lower = subset_distance(space, s, t);
    for (PointId a : s)
        for (PointId b : t) CHECK(lower <= space.distance(a, b));
}

TEST_CASE("closed_ball agrees with BFS layers on unit graphs") {
    GraphMetricSpace space(path_graph(30));
    // Hand BFS from vertex 7.
    std::vector<int> layer(30, -1);
    std::queue<PointId> bfs;
    bfs.push(7);
    layer[7] = 0;
    while (!bfs.empty()) {
        PointId v = bfs.front();
        bfs.pop();
        for (int d : {-1, 1}) {
            const int w = static_cast<int>(v) + d;
            if (w >= 0 && w < 30 && layer[w] < 0) {
                layer[w] = layer[v] + 1;
                bfs.push(static_cast<PointId>(w));
            }
        }
    }
    for (int radius = 0; radius <= 10; ++radius) {
        const PointSet ball = closed_ball(space, 7, radius);
        for (PointId p = 0; p < 30; ++p)
            CHECK(set_contains(ball, p) == (layer[p] <= radius));
    }
}

TEST_CASE("distance_field matches min of single-source distances") {
    std::mt19937_64 rng(17);
    GraphMetricSpace space(random_connected_graph(45, rng));
    const PointSet sources{2, 11, 30};
    const std::vector<double> field = space.distance_field(sources, kInf);
    for (PointId p = 0; p < 45; ++p) {
        double expected = kInf;
        for (PointId s : sources) expected = std::min(expected, space.distance(s, p));
        CHECK(field[p] == expected);
    }
}

TEST_CASE("above-cache spaces answer the same distances") {
    // A path longer than the all-pairs cache limit exercises the on-demand path.
    GraphMetricSpace space(path_graph(GraphMetricSpace::kApspCacheLimit + 10));
    CHECK(space.distance(0, 5004) == 5004.0);
    CHECK(space.distance(12, 7) == 5.0);
    const PointId src[1] = {100};
    const std::vector<double> field = space.distance_field(std::span<const PointId>(src, 1), 3.0);
    CHECK(field[103] == 3.0);
    CHECK(field[104] == kInf);
}
