#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "graphmap/embed.hpp"
#include "graphmap/graph.hpp"

namespace graphmap {

struct LabelBox {
    VertexId vertex = 0;
    Point center;
    double font = 0.0;
    double half_width = 0.0;
    double half_height = 0.0;
    std::string text;
};

struct LabelParams {
    double font_min = 8.0;
    double font_max = 24.0;
    double exponent = 0.5;
};

// Number of UTF-8 code points.
std::size_t glyph_count(std::string_view text);

// font = f_min + (f_max - f_min) * t^exponent with t the min-max normalized
// value (t = 1 when all values are equal).
std::vector<double> scale_fonts(std::span<const double> values, const LabelParams& p);

// Box extents for a label: half-width 0.3 * font per glyph (never below the
// half-height), half-height 0.6 * font.
LabelBox make_box(VertexId v, std::string text, double font);

// One box per vertex with font from vertex weight; centers at the origin.
std::vector<LabelBox> size_labels(const Graph& g, const LabelParams& p);

void place_labels(std::span<LabelBox> boxes, const Layout& l);

// Open-interval rectangle intersection: touching boxes do not overlap.
bool boxes_overlap(Point ca, const LabelBox& a, Point cb, const LabelBox& b);

// Every overlapping pair (i < j), found with a sweep over x.
std::vector<std::pair<std::uint32_t, std::uint32_t>> overlapping_pairs(std::span<const Point> centers,
                                                                        std::span<const LabelBox> boxes);

struct OverlapParams {
    int max_iterations = 30;   // proximity-stress rounds
    int residual_passes = 200; // pairwise displacement passes
    double max_expansion = 1.5;
    int stress_sweeps = 60;
};

struct OverlapResult {
    Layout layout;
    int iterations = 0;
    bool used_fallback = false;  // uniform scaling was needed
    bool changed = false;
};

// Moves box centers (initially the layout positions) until no two boxes
// overlap. Box sizes are untouched.
OverlapResult remove_overlaps(const Layout& l, std::span<const LabelBox> boxes,
                              const OverlapParams& p = {});

}  // namespace graphmap
