#include "graphmap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "graphmap/error.hpp"

namespace graphmap {

Graph::Graph(std::vector<Vertex> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)) {
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double w = vertices_[i].weight;
        if (!std::isfinite(w) || w < 0.0) {
            throw ValidationError("vertex '" + vertices_[i].label +
                                  "' has invalid weight " + std::to_string(w));
        }
        index_.emplace(vertices_[i].label, static_cast<VertexId>(i));
    }

    std::vector<Edge> canonical;
    canonical.reserve(edges.size());
    for (Edge e : edges) {
        if (e.u >= n || e.v >= n) {
            throw ValidationError("edge endpoint out of range");
        }
        if (!std::isfinite(e.w) || e.w <= 0.0) {
            throw ValidationError("edge weight must be positive, got " + std::to_string(e.w));
        }
        if (e.u == e.v) {
            continue;
        }
        if (e.u > e.v) {
            std::swap(e.u, e.v);
        }
        canonical.push_back(e);
    }
    std::sort(canonical.begin(), canonical.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    for (const Edge& e : canonical) {
        if (!edges_.empty() && edges_.back().u == e.u && edges_.back().v == e.v) {
            edges_.back().w = std::max(edges_.back().w, e.w);
        } else {
            edges_.push_back(e);
        }
    }

    std::vector<std::size_t> degree(n, 0);
    for (const Edge& e : edges_) {
        ++degree[e.u];
        ++degree[e.v];
        total_weight_ += e.w;
        max_weight_ = std::max(max_weight_, e.w);
    }
    offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        offsets_[i + 1] = offsets_[i] + degree[i];
    }
    adjacency_.resize(offsets_[n]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    // Edges are sorted by (u, v), so every neighbor list comes out sorted.
    for (const Edge& e : edges_) {
        adjacency_[fill[e.u]++] = {e.v, e.w};
        adjacency_[fill[e.v]++] = {e.u, e.w};
    }
}

double Graph::weighted_degree(VertexId v) const {
    double d = 0.0;
    for (const Neighbor& nb : neighbors(v)) {
        d += nb.w;
    }
    return d;
}

std::optional<VertexId> Graph::find(std::string_view label) const {
    const auto it = index_.find(std::string(label));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

VertexId GraphBuilder::intern(std::string_view label) {
    std::string key(label);
    const auto it = index_.find(key);
    if (it != index_.end()) {
        return it->second;
    }
    const auto id = static_cast<VertexId>(labels_.size());
    labels_.push_back(key);
    weights_.emplace_back();
    index_.emplace(std::move(key), id);
    return id;
}

void GraphBuilder::set_vertex_weight(VertexId v, double weight) {
    if (!std::isfinite(weight) || weight < 0.0) {
        throw ValidationError("vertex weight must be non-negative, got " + std::to_string(weight));
    }
    weights_.at(v) = weight;
}

void GraphBuilder::add_edge(VertexId u, VertexId v, double w) {
    if (!std::isfinite(w) || w <= 0.0) {
        throw ValidationError("edge weight must be positive, got " + std::to_string(w));
    }
    edges_.push_back({u, v, w});
}

Graph GraphBuilder::build() const {
    std::vector<Vertex> vertices(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        vertices[i].label = labels_[i];
    }
    Graph topology(vertices, edges_);
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        vertices[i].weight = weights_[i].value_or(topology.weighted_degree(static_cast<VertexId>(i)));
    }
    return Graph(std::move(vertices), std::vector<Edge>(topology.edges().begin(), topology.edges().end()));
}

double SimilarityTable::at(std::uint32_t i, std::uint32_t j) const {
    const auto& row = rows.at(i);
    const auto it = std::lower_bound(row.begin(), row.end(), j,
                                     [](const SimilarityEntry& e, std::uint32_t c) { return e.col < c; });
    return (it != row.end() && it->col == j) ? it->value : 0.0;
}

SimilarityTable SimilarityTable::from_dense(std::vector<std::string> labels,
                                            const std::vector<std::vector<double>>& dense) {
    const std::size_t n = dense.size();
    if (labels.size() != n) {
        throw ValidationError("similarity table needs one label per row");
    }
    SimilarityTable s;
    s.labels = std::move(labels);
    s.rows.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (dense[i].size() != n) {
            throw ValidationError("similarity table is not square");
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double v = dense[i][j];
            if (!std::isfinite(v) || v < 0.0) {
                throw ValidationError("similarity values must be non-negative");
            }
            if (i != j && v > 0.0) {
                s.rows[i].push_back({static_cast<std::uint32_t>(j), v});
            }
        }
    }
    return s;
}

SimilarityTable similarity_from_implicit(const ImplicitFeedback& fb) {
    const std::size_t items = fb.item_labels.size();
    if (items < 2 || fb.num_users < 1) {
        throw ValidationError("implicit feedback needs at least 1 user and 2 items");
    }
    // Accumulate per user first so duplicate (user, item) lines add up.
    std::vector<std::vector<std::pair<std::uint32_t, double>>> by_user(fb.num_users);
    std::vector<double> popularity(items, 0.0);
    for (const auto& e : fb.entries) {
        if (e.user >= fb.num_users || e.item >= items) {
            throw ValidationError("implicit feedback id out of range");
        }
        if (!std::isfinite(e.count) || e.count < 0.0) {
            throw ValidationError("implicit feedback counts must be non-negative");
        }
        by_user[e.user].emplace_back(e.item, e.count);
        popularity[e.item] += e.count;
    }
    std::vector<double> sq_norm(items, 0.0);
    for (auto& list : by_user) {
        std::sort(list.begin(), list.end());
        std::vector<std::pair<std::uint32_t, double>> merged;
        for (const auto& [item, c] : list) {
            if (!merged.empty() && merged.back().first == item) {
                merged.back().second += c;
            } else {
                merged.emplace_back(item, c);
            }
        }
        list = std::move(merged);
        for (const auto& [item, c] : list) {
            sq_norm[item] += c * c;
        }
    }

    std::vector<std::unordered_map<std::uint32_t, double>> dots(items);
    for (const auto& list : by_user) {
        for (std::size_t a = 0; a < list.size(); ++a) {
            for (std::size_t b = a + 1; b < list.size(); ++b) {
                const double p = list[a].second * list[b].second;
                if (p > 0.0) {
                    dots[list[a].first][list[b].first] += p;
                }
            }
        }
    }

    SimilarityTable s;
    s.labels = fb.item_labels;
    s.rows.resize(items);
    s.popularity = std::move(popularity);
    for (std::uint32_t i = 0; i < items; ++i) {
        for (const auto& [j, d] : dots[i]) {
            const double denom = std::sqrt(sq_norm[i]) * std::sqrt(sq_norm[j]);
            if (denom <= 0.0) {
                continue;
            }
            const double sim = std::min(1.0, d / denom);
            s.rows[i].push_back({j, sim});
            s.rows[j].push_back({i, sim});
        }
    }
    for (auto& row : s.rows) {
        std::sort(row.begin(), row.end(),
                  [](const SimilarityEntry& a, const SimilarityEntry& b) { return a.col < b.col; });
    }
    return s;
}

std::vector<std::vector<std::uint32_t>> topk_select(const SimilarityTable& s, std::size_t k) {
    if (k < 1) {
        throw ValidationError("top-k requires k >= 1");
    }
    std::vector<std::vector<std::uint32_t>> selected(s.size());
    std::vector<SimilarityEntry> candidates;
    for (std::uint32_t i = 0; i < s.size(); ++i) {
        candidates.clear();
        for (const SimilarityEntry& e : s.rows[i]) {
            if (e.col != i && e.value > 0.0) {
                candidates.push_back(e);
            }
        }
        const std::size_t take = std::min(k, candidates.size());
        std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take),
                          candidates.end(), [](const SimilarityEntry& a, const SimilarityEntry& b) {
                              return a.value != b.value ? a.value > b.value : a.col < b.col;
                          });
        for (std::size_t t = 0; t < take; ++t) {
            selected[i].push_back(candidates[t].col);
        }
    }
    return selected;
}

Graph topk_sparsify(const SimilarityTable& s, std::size_t k) {
    const auto selected = topk_select(s, k);
    GraphBuilder builder;
    for (const std::string& label : s.labels) {
        builder.intern(label);
    }
    if (builder.num_vertices() != s.size()) {
        throw ValidationError("similarity table labels must be unique");
    }
    for (std::uint32_t i = 0; i < s.size(); ++i) {
        for (std::uint32_t j : selected[i]) {
            // Graph construction keeps the larger of the two directions.
            builder.add_edge(i, j, std::max(s.at(i, j), s.at(j, i)));
        }
    }
    if (!s.popularity.empty()) {
        for (std::uint32_t i = 0; i < s.size(); ++i) {
            builder.set_vertex_weight(i, s.popularity.at(i));
        }
    }
    return builder.build();
}

std::vector<std::uint32_t> connected_components(const Graph& g) {
    const std::size_t n = g.num_vertices();
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> comp(n, unset);
    std::uint32_t next = 0;
    std::vector<VertexId> stack;
    for (VertexId s = 0; s < n; ++s) {
        if (comp[s] != unset) {
            continue;
        }
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            const VertexId v = stack.back();
            stack.pop_back();
            for (const Neighbor& nb : g.neighbors(v)) {
                if (comp[nb.v] == unset) {
                    comp[nb.v] = next;
                    stack.push_back(nb.v);
                }
            }
        }
        ++next;
    }
    return comp;
}

PruneResult prune_components(const Graph& g, std::size_t min_size) {
    if (min_size < 1) {
        throw ValidationError("min_size must be >= 1");
    }
    const auto comp = connected_components(g);
    const std::size_t count = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<std::size_t> size(count, 0);
    for (auto c : comp) {
        ++size[c];
    }

    PruneResult result;
    result.components_before = count;
    constexpr auto dropped = static_cast<VertexId>(-1);
    std::vector<VertexId> remap(g.num_vertices(), dropped);
    std::vector<Vertex> vertices;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (size[comp[v]] >= min_size) {
            remap[v] = static_cast<VertexId>(vertices.size());
            vertices.push_back(g.vertex(v));
            result.original_id.push_back(v);
        }
    }
    if (vertices.empty()) {
        throw ValidationError("no component meets min_size " + std::to_string(min_size));
    }
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        if (remap[e.u] != dropped) {
            edges.push_back({remap[e.u], remap[e.v], e.w});
        }
    }
    result.components_after = static_cast<std::size_t>(
        std::count_if(size.begin(), size.end(), [&](std::size_t s) { return s >= min_size; }));
    result.graph = Graph(std::move(vertices), std::move(edges));
    return result;
}

}  // namespace graphmap
