#include <gtest/gtest.h>

#include <set>

#include "generators.hpp"
#include "graphmap/delaunay.hpp"
#include "oracles.hpp"

namespace graphmap {
namespace {

TEST(Delaunay, EmptyCircumcirclesOnRandomPoints) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto pts = gen::random_points(20 + 30 * seed, {{-5, -5}, {5, 5}}, seed);
        const Triangulation t = delaunay(pts);
        EXPECT_TRUE(oracle::empty_circumcircles(pts, t)) << "seed " << seed;
        // Euler: a triangulation of n points in general position with h hull
        // vertices has 2n - 2 - h triangles; at least n - 2.
        EXPECT_GE(t.triangles.size(), pts.size() - 2);
        for (const auto& tri : t.triangles) {
            EXPECT_GT(orient2d(pts[tri[0]], pts[tri[1]], pts[tri[2]]), 0.0);
        }
    }
}

TEST(Delaunay, GridWithCocircularPoints) {
    std::vector<Point> pts;
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            pts.push_back({static_cast<double>(i), static_cast<double>(j)});
        }
    }
    const Triangulation t = delaunay(pts);
    EXPECT_EQ(t.triangles.size(), 50u);
    EXPECT_TRUE(oracle::empty_circumcircles(pts, t));
}

TEST(Delaunay, DegenerateInputsGiveChains) {
    EXPECT_TRUE(delaunay(std::vector<Point>{}).edges.empty());
    const auto two = delaunay(std::vector<Point>{{0, 0}, {1, 1}});
    ASSERT_EQ(two.edges.size(), 1u);
    const auto line = delaunay(std::vector<Point>{{0, 0}, {3, 3}, {1, 1}, {2, 2}});
    EXPECT_TRUE(line.triangles.empty());
    const std::set<std::pair<std::uint32_t, std::uint32_t>> edges(line.edges.begin(), line.edges.end());
    EXPECT_EQ(edges, (std::set<std::pair<std::uint32_t, std::uint32_t>>{{0, 2}, {2, 3}, {1, 3}}));
}

TEST(Delaunay, DuplicatesAreSkipped) {
    const std::vector<Point> pts{{0, 0}, {1, 0}, {0, 1}, {1, 0}, {1, 1}};
    const Triangulation t = delaunay(pts);
    EXPECT_EQ(t.triangles.size(), 2u);
    for (const auto& [a, b] : t.edges) {
        EXPECT_TRUE(a != 3 && b != 3);
    }
}

}  // namespace
}  // namespace graphmap
