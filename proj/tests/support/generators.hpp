#pragma once

// Deterministic test inputs. All randomness comes from std::mt19937_64 seeded
// by the caller, independent of the library's own generator.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "graphmap/cluster.hpp"
#include "graphmap/embed.hpp"
#include "graphmap/graph.hpp"
#include "graphmap/labels.hpp"
#include "graphmap/mapgeom.hpp"

namespace graphmap::gen {

Graph complete(std::size_t n);
Graph cycle(std::size_t n);
Graph path(std::size_t n);
// Two disjoint K_k.
Graph two_cliques(std::size_t k);
// Two K_k joined by one edge between vertex k-1 and vertex k.
Graph two_cliques_bridged(std::size_t k);

// Stochastic block model with unit weights; `truth` receives block ids.
Graph planted_partition(std::size_t blocks, std::size_t size, double p_in, double p_out, std::uint64_t seed,
                        std::vector<std::uint32_t>* truth = nullptr);

// Connected random graph: a random spanning tree plus extra edges with
// weights in [0.1, 1].
Graph random_connected(std::size_t n, std::size_t extra_edges, std::uint64_t seed);

// Dense n x n similarity with a block structure, values in [0, 1).
std::vector<std::vector<double>> random_similarity(std::size_t n, std::uint64_t seed);

// n labels with random text lengths and fonts, centers uniform in a square
// of side `spread` (heavily overlapping for small spreads).
std::vector<LabelBox> random_labels(std::size_t n, double spread, std::uint64_t seed);

std::vector<Point> random_points(std::size_t n, const Rect& box, std::uint64_t seed);

// Every stage from layout to merged regions on an in-memory graph.
struct MapRun {
    Graph graph;
    Layout layout;
    ClusterAssignment clusters;
    std::vector<LabelBox> boxes;
    MapBuild build;
};
MapRun run_map(const Graph& g, std::uint64_t seed, const MapParams& params = {});

// Edge-list text with quoted labels, readable by load_graph.
std::string edge_list_text(const Graph& g);
void write_edge_list(const Graph& g, const std::filesystem::path& path);

// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string& tag);

}  // namespace graphmap::gen
