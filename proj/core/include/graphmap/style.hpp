#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "graphmap/graph.hpp"
#include "graphmap/labels.hpp"
#include "graphmap/mapgeom.hpp"

namespace graphmap {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(Rgb, Rgb) = default;
};

// "#rrggbb"
std::string to_hex(Rgb c);
double rgb_distance(Rgb a, Rgb b);
// Channel-wise 50/50 mix, rounded half up.
Rgb blend(Rgb a, Rgb b);

// Twelve-class qualitative palette.
std::span<const Rgb> default_palette();

// The base colors, then every pairwise blend in (i, j) order, duplicates
// removed.
std::vector<Rgb> candidate_colors(std::span<const Rgb> palette);

struct StyleSheet {
    std::vector<Rgb> country;  // by cluster id
    Rgb sea{0xd6, 0xea, 0xf8};
    Rgb water{0x9e, 0xc9, 0xe2};
    Rgb boundary{0x44, 0x44, 0x44};
    double boundary_width = 1.0;
    Rgb label{0x1a, 0x1a, 0x1a};
    std::string font_family = "sans-serif";
};

// Greedy max-min coloring. Countries go in decreasing area order (ties by
// cluster id); each takes the candidate farthest in RGB from its already
// colored neighbors, ties going to the less used and then the earlier
// candidate. Throws ValidationError when some country cannot differ from
// all of its neighbors.
StyleSheet assign_colors(std::span<const CountryAdjacency> adjacency, std::uint32_t count,
                         std::span<const double> areas, std::span<const Rgb> palette = default_palette());

inline constexpr Rgb kHeatLow{16, 48, 112};
inline constexpr Rgb kHeatHigh{255, 221, 48};

// Linear RGB ramp from kHeatLow to kHeatHigh; t is clamped to [0, 1].
Rgb heat_color(double t);

struct HeatScores {
    std::vector<double> raw;         // by vertex id
    std::vector<double> normalized;  // in [0, 1]
    std::vector<bool> present;       // false: no score given, normalized 0
};

// Min-max normalization; all-equal input maps to 0.5. Throws ValidationError
// on a non-finite score or empty input.
HeatScores normalize_scores(std::span<const double> raw);

// Scores keyed by label. Labels not in the graph are skipped and counted in
// `unknown`; vertices without a score get normalized 0.
HeatScores heat_from_labels(const Graph& g, std::span<const std::pair<std::string, double>> scores,
                            std::size_t* unknown = nullptr);

struct WatchedItem {
    VertexId vertex = 0;
    double duration = 0.0;
    double font = 0.0;  // rescaled from durations
};

// Light frames on watched labels, a black frame on the recommended one.
struct OverlaySpec {
    std::vector<WatchedItem> watched;
    std::optional<VertexId> recommended;
};

// Watched fonts follow the label sizing rule applied to durations. Throws
// ValidationError on unknown or repeated ids, negative durations, or a
// recommended id that is also watched. Boxes are indexed by vertex id.
OverlaySpec build_overlay(std::span<const std::pair<VertexId, double>> watched,
                          std::optional<VertexId> recommended, std::span<const LabelBox> boxes,
                          const LabelParams& p = {});

}  // namespace graphmap
