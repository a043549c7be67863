#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "generators.hpp"
#include "graphmap/embed.hpp"
#include "graphmap/error.hpp"

namespace graphmap {
namespace {

TEST(ForceLayout, TwoVerticesSettleAtEquilibrium) {
    // Attraction d^2/K balances repulsion C K^2/d at d = C^(1/3) K.
    const Graph g = gen::path(2);
    for (double C : {0.2, 1.0, 2.0}) {
        LayoutParams p;
        p.C = C;
        p.K = 3.0;
        p.max_iterations = 2000;
        p.tolerance = 1e-6;
        const Layout l = force_layout(g, p);
        const double d = distance(l.positions[0], l.positions[1]);
        const double want = std::cbrt(C) * p.K;
        EXPECT_NEAR(d, want, 0.05 * want) << "C=" << C;
    }
}

TEST(ForceLayout, CycleKeepsNeighborsCloser) {
    const Graph g = gen::cycle(6);
    const Layout l = force_layout(g, {});
    double adj = 0.0, non = 0.0;
    int na = 0, nn = 0;
    for (VertexId i = 0; i < 6; ++i) {
        for (VertexId j = i + 1; j < 6; ++j) {
            const double d = distance(l.positions[i], l.positions[j]);
            if (j == i + 1 || (i == 0 && j == 5)) {
                adj += d;
                ++na;
            } else {
                non += d;
                ++nn;
            }
        }
    }
    EXPECT_LT(adj / na, non / nn);
}

TEST(ForceLayout, EnergyDropsFromStart) {
    const Graph g = gen::random_connected(60, 40, 4);
    LayoutParams p;
    p.seed = 8;
    const auto start = initial_placement(g.num_vertices(), p);
    const Layout l = force_layout_from(g, start, p);
    EXPECT_LT(l.energy, spring_electrical_energy(g, start, p));
    ASSERT_FALSE(l.history.empty());
    EXPECT_LT(l.history.back(), l.history.front());
}

TEST(ForceLayout, DeterministicForSeed) {
    const Graph g = gen::random_connected(80, 60, 5);
    LayoutParams p;
    p.seed = 42;
    const Layout a = force_layout(g, p);
    const Layout b = force_layout(g, p);
    ASSERT_EQ(a.positions.size(), b.positions.size());
    for (std::size_t i = 0; i < a.positions.size(); ++i) {
        EXPECT_EQ(a.positions[i].x, b.positions[i].x);
        EXPECT_EQ(a.positions[i].y, b.positions[i].y);
    }
    p.seed = 43;
    const Layout c = force_layout(g, p);
    EXPECT_NE(a.positions[0].x, c.positions[0].x);
}

TEST(ForceLayout, MultilevelAndBarnesHutPathsRun) {
    const Graph g = gen::planted_partition(4, 40, 0.3, 0.01, 3);
    LayoutParams p;
    p.multilevel_threshold = 50;
    p.barnes_hut_threshold = 50;
    const Layout l = force_layout(g, p);
    ASSERT_EQ(l.positions.size(), g.num_vertices());
    for (const Point& q : l.positions) {
        EXPECT_TRUE(std::isfinite(q.x) && std::isfinite(q.y));
    }
}

TEST(ForceLayout, RejectsBadParameters) {
    LayoutParams p;
    p.K = 0.0;
    EXPECT_THROW(validate(p), ValidationError);
    p = {};
    p.cooling = 1.5;
    EXPECT_THROW(validate(p), ValidationError);
}

TEST(StressLayout, PathIsEmbeddedExactly) {
    const Graph g = gen::path(3);
    const Layout l = stress_layout(g, {});
    EXPECT_NEAR(l.energy, 0.0, 1e-6);
    const auto dist = graph_distances(g, 1.0);
    EXPECT_NEAR(layout_stress(l.positions, dist), 0.0, 1e-6);
    EXPECT_NEAR(distance(l.positions[0], l.positions[2]), 2.0, 1e-3);
}

TEST(StressLayout, SingleEdgeAtGraphDistance) {
    LayoutParams p;
    p.K = 2.5;
    const Layout l = stress_layout(gen::path(2), p);
    EXPECT_NEAR(distance(l.positions[0], l.positions[1]), 2.5, 1e-6);
}

TEST(StressLayout, HistoryNeverIncreases) {
    const Graph g = gen::random_connected(40, 30, 6);
    const Layout l = stress_layout(g, {});
    ASSERT_GE(l.history.size(), 2u);
    for (std::size_t i = 1; i < l.history.size(); ++i) {
        EXPECT_LE(l.history[i], l.history[i - 1] * (1.0 + 1e-12));
    }
}

TEST(StressLayout, ComponentsPlacedApart) {
    const Graph g = gen::two_cliques(4);
    const Layout l = stress_layout(g, {});
    double max_x0 = -1e300, min_x1 = 1e300;
    for (VertexId v = 0; v < 4; ++v) max_x0 = std::max(max_x0, l.positions[v].x);
    for (VertexId v = 4; v < 8; ++v) min_x1 = std::min(min_x1, l.positions[v].x);
    EXPECT_GT(min_x1, max_x0);
}

TEST(GraphDistances, WeightedShortestPaths) {
    // Heavier edges are shorter: length K * w_max / w.
    const Graph g(std::vector<Vertex>(3), std::vector<Edge>{{0, 1, 2.0}, {1, 2, 1.0}});
    const auto d = graph_distances(g, 1.0);
    EXPECT_DOUBLE_EQ(d[0][1], 1.0);
    EXPECT_DOUBLE_EQ(d[1][2], 2.0);
    EXPECT_DOUBLE_EQ(d[0][2], 3.0);
}

TEST(CenterAndScale, LongerSideBecomesSpan) {
    Layout l;
    l.positions = {{0, 0}, {4, 0}, {4, 2}};
    const Layout s = center_and_scale(l, 100.0);
    const Rect r = bounding_box(s.positions);
    EXPECT_NEAR(r.width(), 100.0, 1e-9);
    EXPECT_NEAR(r.height(), 50.0, 1e-9);
    double cx = 0.0;
    for (const Point& q : s.positions) cx += q.x;
    EXPECT_NEAR(cx, 0.0, 1e-9);
}

TEST(WriteLayout, OneLinePerVertex) {
    Layout l;
    l.positions = {{1, 2}, {3, 4}};
    std::ostringstream out;
    write_layout(out, l);
    const std::string text = out.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
}

}  // namespace
}  // namespace graphmap
