#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace graphmap {

using VertexId = std::uint32_t;

struct Vertex {
    std::string label;
    double weight = 0.0;  // importance, e.g. popularity
};

// Undirected edge stored with u < v.
struct Edge {
    VertexId u = 0;
    VertexId v = 0;
    double w = 1.0;  // similarity, > 0
};

struct Neighbor {
    VertexId v = 0;
    double w = 0.0;
};

// Vertex- and edge-weighted undirected graph. Immutable once built: no
// self-loops, no duplicate edges, positive edge weights, non-negative vertex
// weights. Edges are kept sorted by (u, v).
class Graph {
public:
    Graph() = default;

    // Duplicate undirected edges collapse to the maximum weight; self-loops are
    // dropped. Throws ValidationError on bad ids or weights.
    Graph(std::vector<Vertex> vertices, std::vector<Edge> edges);

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    bool empty() const { return vertices_.empty(); }

    const Vertex& vertex(VertexId v) const { return vertices_[v]; }
    std::span<const Vertex> vertices() const { return vertices_; }
    std::span<const Edge> edges() const { return edges_; }
    std::span<const Neighbor> neighbors(VertexId v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }

    double weighted_degree(VertexId v) const;
    double total_edge_weight() const { return total_weight_; }
    double max_edge_weight() const { return max_weight_; }

    std::optional<VertexId> find(std::string_view label) const;

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Neighbor> adjacency_;
    std::unordered_map<std::string, VertexId> index_;
    double total_weight_ = 0.0;
    double max_weight_ = 0.0;
};

// Interns labels to dense ids in first-appearance order.
class GraphBuilder {
public:
    VertexId intern(std::string_view label);
    void set_vertex_weight(VertexId v, double weight);
    void add_edge(VertexId u, VertexId v, double w);

    std::size_t num_vertices() const { return labels_.size(); }

    // Vertices without an explicit weight get their weighted degree.
    Graph build() const;

private:
    std::vector<std::string> labels_;
    std::vector<std::optional<double>> weights_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, VertexId> index_;
};

struct SimilarityEntry {
    std::uint32_t col = 0;
    double value = 0.0;
};

// Square non-negative item-item similarity matrix in sparse row form. Rows
// are sorted by column, exclude the diagonal and omit zeros.
struct SimilarityTable {
    std::vector<std::string> labels;
    std::vector<std::vector<SimilarityEntry>> rows;
    // Optional per-item importance; empty means "use weighted degree".
    std::vector<double> popularity;

    std::size_t size() const { return rows.size(); }
    double at(std::uint32_t i, std::uint32_t j) const;

    // Off-diagonal values are copied; zeros dropped. Throws ValidationError on
    // non-square input or negative values.
    static SimilarityTable from_dense(std::vector<std::string> labels,
                                      const std::vector<std::vector<double>>& dense);
};

// Sparse user x item non-negative counts (hours watched, play counts).
struct ImplicitFeedback {
    struct Entry {
        std::uint32_t user = 0;
        std::uint32_t item = 0;
        double count = 0.0;
    };
    std::uint32_t num_users = 0;
    std::vector<std::string> item_labels;
    std::vector<Entry> entries;
};

// Item-item cosine over the user dimension. An all-zero item column has
// similarity 0 to everything. Item popularity is its total count.
SimilarityTable similarity_from_implicit(const ImplicitFeedback& fb);

// Per row, the k largest positive off-diagonal entries ordered by
// (value desc, column asc).
std::vector<std::vector<std::uint32_t>> topk_select(const SimilarityTable& s, std::size_t k);

// topk_select, then symmetrize by union keeping the larger direction.
Graph topk_sparsify(const SimilarityTable& s, std::size_t k);

// Component id per vertex, numbered by smallest member id.
std::vector<std::uint32_t> connected_components(const Graph& g);

struct PruneResult {
    Graph graph;
    std::size_t components_before = 0;
    std::size_t components_after = 0;
    std::vector<VertexId> original_id;  // new id -> id in the input graph
};

// Drops components with fewer than min_size vertices, keeping the relative
// order of surviving ids. Throws ValidationError if nothing survives.
PruneResult prune_components(const Graph& g, std::size_t min_size);

}  // namespace graphmap
