#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "graphmap/geometry.hpp"
#include "graphmap/graph.hpp"
#include "graphmap/labels.hpp"

namespace graphmap {

enum class SiteKind : std::uint8_t { Vertex, Outer, Water };

// A Voronoi generator. `vertex` is meaningful only for SiteKind::Vertex.
struct Site {
    Point pos;
    SiteKind kind = SiteKind::Vertex;
    VertexId vertex = 0;
};

struct MapParams {
    double spacing_divisor = 3.0;  // perimeter spacing h = min box side / divisor
    double jitter = 0.3;           // perimeter jitter, fraction of h
    double outer_inner = 1.3;      // outskirt annulus, multiples of R
    double outer_outer = 1.8;
    double outer_count_factor = 4.0;  // outskirt points = factor * ceil(sqrt(n))
    double frame_factor = 2.2;        // frame half-side, multiple of R
    bool lakes = true;
    double lake_cell = 0.0;  // grid spacing; <= 0 selects R / 25
    double lake_theta = 4.0;
    bool naive_corners = false;
    std::uint64_t seed = 1;
};

// Sites plus the frame they tile. R is the largest distance from the layout
// centroid to any label box corner.
struct SiteSet {
    std::vector<Site> sites;
    Rect frame;
    Point centroid;
    double radius = 0.0;
    std::vector<Rect> label_boxes;
};

// Label centers plus jittered perimeter points owned by each vertex, and
// outskirt points in the annulus [outer_inner R, outer_outer R]. Boxes are
// expected to be overlap-free.
SiteSet generate_sites(std::span<const LabelBox> boxes, const MapParams& p);

// Debug construction: one site per label center plus the four frame corners
// (owned by nobody), framed by the label bounding box.
SiteSet naive_sites(std::span<const LabelBox> boxes);

// Adds a WATER site at every grid point that is farther than theta * cell
// from all vertex sites and label boxes and inside the convex hull of the
// vertex sites. No-op when lakes are
// disabled.
SiteSet insert_lakes(SiteSet s, const MapParams& p);

// Voronoi cell of each site clipped to the frame, as a convex
// counter-clockwise ring (empty if the site owns no part of the frame). Cells
// come from half-plane clipping against neighbors in increasing distance
// order, stopping once no farther site can reach the cell.
std::vector<Ring> voronoi_cells(std::span<const Point> sites, const Rect& frame);
std::vector<Ring> voronoi_cells(std::span<const Site> sites, const Rect& frame);

struct CountryAdjacency {
    std::uint32_t a = 0;  // a < b
    std::uint32_t b = 0;
    double border = 0.0;  // shared boundary length
};

struct PolygonMap {
    Rect frame;
    std::vector<MultiPolygon> vertex_regions;  // indexed by vertex id
    std::vector<MultiPolygon> countries;       // indexed by cluster id
    MultiPolygon water;
    std::vector<CountryAdjacency> adjacency;   // sorted by (a, b)
    double cell_area = 0.0;   // sum over all cells before discarding
    double outer_area = 0.0;  // discarded outskirt cells

    // Countries adjacent to `c`.
    std::vector<std::uint32_t> neighbors(std::uint32_t c) const;
};

// Unions cells per owning vertex and per cluster, unions water cells, drops
// outskirt cells and computes country adjacency with shared border lengths.
// Rings are canonical: outer rings counter-clockwise and holes clockwise,
// each starting at its lexicographically smallest vertex.
PolygonMap merge_regions(std::span<const Ring> cells, std::span<const Site> sites,
                         std::span<const std::uint32_t> cluster_of_vertex, std::uint32_t cluster_count,
                         const Rect& frame);

// Union of arbitrary cells that tile part of the plane, with the same ring
// conventions as merge_regions.
MultiPolygon union_cells(std::span<const Ring> cells);

struct MapBuild {
    SiteSet sites;
    std::vector<Ring> cells;
    PolygonMap map;
};

// generate_sites (or naive_sites), insert_lakes, voronoi_cells, merge_regions.
MapBuild build_map(std::span<const LabelBox> boxes, std::span<const std::uint32_t> cluster_of_vertex,
                   std::uint32_t cluster_count, const MapParams& p);

}  // namespace graphmap
