#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "graphmap/cluster.hpp"
#include "graphmap/graph.hpp"
#include "graphmap/labels.hpp"
#include "graphmap/mapgeom.hpp"
#include "graphmap/style.hpp"

namespace graphmap {

// Fixed 3-decimal formatting with negative zero printed as 0.000.
std::string format_coord(double v);

// Frame drawn around an overlay label: the label box at the overlay font,
// padded by a fraction of the font.
Rect overlay_frame(const LabelBox& box, double font);

// Layers bottom to top: sea (frame), countries, heat regions, boundaries,
// lakes, labels, overlay frames. One path per polygon, holes as extra
// subpaths under the even-odd rule. The y axis is flipped so the map reads
// with y up.
std::string emit_svg(const PolygonMap& map, std::span<const LabelBox> boxes, const StyleSheet& style,
                     const HeatScores* heat = nullptr, const OverlaySpec* overlay = nullptr);

struct ViewerMetadata {
    std::uint64_t seed = 0;
    std::map<std::string, double> numbers;
    std::map<std::string, std::string> strings;
};

inline constexpr int kViewerSchemaVersion = 1;

// Viewer interchange document, schema version 1. Keys are sorted, arrays are
// ordered by id and coordinates are rounded to 1e-3, so parsing and
// re-serializing reproduces the same bytes.
std::string export_viewer_json(const PolygonMap& map, std::span<const LabelBox> boxes,
                               const ClusterAssignment& clusters, const StyleSheet& style, const Graph& g,
                               const HeatScores* heat = nullptr, const OverlaySpec* overlay = nullptr,
                               const ViewerMetadata& meta = {});

}  // namespace graphmap
