#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "graphmap/geometry.hpp"

namespace graphmap {

struct Triangulation {
    // Counter-clockwise vertex triples indexing the input points.
    std::vector<std::array<std::uint32_t, 3>> triangles;
    // Unique undirected edges (i < j), sorted.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

// Incremental Bowyer-Watson triangulation. Exact duplicates are skipped. For
// fewer than three points, or all points collinear, `triangles` is empty and
// `edges` chains the points in sorted order so callers still get a
// proximity graph.
Triangulation delaunay(std::span<const Point> pts);

}  // namespace graphmap
