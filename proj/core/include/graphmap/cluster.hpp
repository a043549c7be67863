#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "graphmap/geometry.hpp"
#include "graphmap/graph.hpp"

namespace graphmap {

struct ClusterAssignment {
    std::vector<std::uint32_t> cluster;  // dense ids 0..count-1
    std::uint32_t count = 0;
    double modularity = 0.0;
    // Set when the result is degenerate, e.g. an edgeless graph.
    bool warning = false;
    // k-means objective after each assignment step.
    std::vector<double> history;
};

// Weighted Newman modularity. Throws ValidationError on an edgeless graph or
// a partition of the wrong size.
double modularity(const Graph& g, std::span<const std::uint32_t> part);

// Agglomerative merging by best modularity gain, starting from singletons and
// stopping when no merge improves Q. Ties go to the lexicographically
// smallest community pair. The reported Q is the incremental sum of gains.
ClusterAssignment greedy_modularity_cluster(const Graph& g);

// Lloyd iterations from k-means++ seeding. When `g` is given and has edges,
// the modularity field is filled in for reporting.
ClusterAssignment kmeans_cluster(std::span<const Point> points, std::size_t k, std::uint64_t seed,
                                 const Graph* g = nullptr);

// Renumbers labels densely in order of first appearance.
std::vector<std::uint32_t> relabel_dense(std::span<const std::uint32_t> labels);

double adjusted_rand_index(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

// `id cluster` per line.
void write_clusters(std::ostream& out, const ClusterAssignment& c);

}  // namespace graphmap
