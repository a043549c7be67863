#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphmap/cluster.hpp"
#include "graphmap/embed.hpp"
#include "graphmap/graph.hpp"
#include "graphmap/labels.hpp"
#include "graphmap/mapgeom.hpp"
#include "graphmap/style.hpp"

namespace graphmap {

enum class InputKind { EdgeList, Similarity, Implicit };
enum class LayoutMethod { Force, Stress };
enum class ClusterMethod { Modularity, KMeans };

inline constexpr std::uint64_t kDefaultSeed = 20091012;

struct PipelineConfig {
    std::filesystem::path input;
    InputKind kind = InputKind::EdgeList;
    // Top-k sparsification. Unset: 10 for similarity and implicit input, none
    // for edge lists.
    std::optional<std::size_t> top_k;
    std::size_t min_size = 3;

    LayoutMethod layout = LayoutMethod::Force;
    LayoutParams layout_params;
    double layout_span = 1000.0;

    ClusterMethod cluster = ClusterMethod::Modularity;
    std::size_t kmeans_k = 0;

    LabelParams labels;
    OverlapParams overlap;
    MapParams map;

    // Overrides the seeds inside layout_params and map.
    std::uint64_t seed = kDefaultSeed;

    std::optional<std::filesystem::path> heat_path;
    std::optional<std::filesystem::path> watched_path;
    std::optional<std::string> recommended;

    std::optional<std::filesystem::path> svg_out;
    std::optional<std::filesystem::path> json_out;
    std::optional<std::filesystem::path> layout_dump;
    std::optional<std::filesystem::path> clusters_dump;
};

// Failure inside a named stage. `input` separates bad input from internal
// errors.
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& what, bool input)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)), input_(input) {}

    const std::string& stage() const noexcept { return stage_; }
    bool input() const noexcept { return input_; }

private:
    std::string stage_;
    bool input_;
};

struct PipelineResult {
    Graph graph;  // sparsified and pruned
    std::size_t components_before = 0;
    std::size_t components_after = 0;
    Layout layout;  // after overlap removal
    ClusterAssignment clusters;
    std::vector<LabelBox> boxes;
    OverlapResult overlap;
    MapBuild map;
    StyleSheet style;
    std::optional<HeatScores> heat;
    std::size_t unknown_scores = 0;
    std::optional<OverlaySpec> overlay;
    std::string svg;
    std::string json;
    double seconds = 0.0;

    std::size_t country_count() const;
    std::string summary() const;
};

// Throws StageError when the configuration itself is inconsistent.
void validate(const PipelineConfig& cfg);

// ingest, sparsify, prune, layout, cluster, label sizing, overlap removal,
// sites, Voronoi, merge, colors, heat and overlay, render. Requested outputs
// are written only once every stage has succeeded; on failure any file this
// run created is removed and a StageError is thrown.
PipelineResult run_pipeline(const PipelineConfig& cfg);

}  // namespace graphmap
