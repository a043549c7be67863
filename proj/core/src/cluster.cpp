#include "graphmap/cluster.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <unordered_map>

#include "graphmap/error.hpp"
#include "graphmap/rng.hpp"

namespace graphmap {

double modularity(const Graph& g, std::span<const std::uint32_t> part) {
    if (part.size() != g.num_vertices()) {
        throw ValidationError("partition does not cover every vertex");
    }
    const double m = g.total_edge_weight();
    if (!(m > 0.0)) {
        throw ValidationError("modularity undefined on edgeless graph");
    }
    const std::uint32_t count = part.empty() ? 0 : *std::max_element(part.begin(), part.end()) + 1;
    std::vector<double> inside(count, 0.0);
    std::vector<double> degree(count, 0.0);
    for (const Edge& e : g.edges()) {
        degree[part[e.u]] += e.w;
        degree[part[e.v]] += e.w;
        if (part[e.u] == part[e.v]) {
            inside[part[e.u]] += e.w;
        }
    }
    double q = 0.0;
    for (std::uint32_t c = 0; c < count; ++c) {
        const double a = degree[c] / (2.0 * m);
        q += inside[c] / m - a * a;
    }
    return q;
}

std::vector<std::uint32_t> relabel_dense(std::span<const std::uint32_t> labels) {
    std::unordered_map<std::uint32_t, std::uint32_t> map;
    std::vector<std::uint32_t> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto [it, inserted] = map.emplace(labels[i], static_cast<std::uint32_t>(map.size()));
        out[i] = it->second;
    }
    return out;
}

ClusterAssignment greedy_modularity_cluster(const Graph& g) {
    const std::size_t n = g.num_vertices();
    ClusterAssignment out;
    const double m = g.total_edge_weight();
    if (!(m > 0.0)) {
        out.cluster.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            out.cluster[i] = static_cast<std::uint32_t>(i);
        }
        out.count = static_cast<std::uint32_t>(n);
        out.modularity = 0.0;
        out.warning = true;
        return out;
    }

    // Community c is named by its smallest vertex id; the smaller id survives
    // every merge.
    std::vector<double> a(n);
    std::vector<std::map<std::uint32_t, double>> links(n);
    std::vector<bool> active(n, true);
    std::vector<std::uint32_t> owner(n);
    double q = 0.0;
    for (VertexId v = 0; v < n; ++v) {
        a[v] = g.weighted_degree(v) / (2.0 * m);
        q -= a[v] * a[v];
        owner[v] = v;
        for (const Neighbor& nb : g.neighbors(v)) {
            links[v][nb.v] += nb.w;
        }
    }

    std::vector<std::vector<VertexId>> members(n);
    for (VertexId v = 0; v < n; ++v) {
        members[v].push_back(v);
    }

    while (true) {
        double best = 0.0;
        std::uint32_t bc = 0;
        std::uint32_t bd = 0;
        bool found = false;
        for (std::uint32_t c = 0; c < n; ++c) {
            if (!active[c]) {
                continue;
            }
            for (auto it = links[c].upper_bound(c); it != links[c].end(); ++it) {
                const std::uint32_t d = it->first;
                const double gain = it->second / m - 2.0 * a[c] * a[d];
                // Strict comparison keeps the first (smallest) pair on ties.
                if (gain > best) {
                    best = gain;
                    bc = c;
                    bd = d;
                    found = true;
                }
            }
        }
        if (!found) {
            break;
        }
        q += best;
        for (const auto& [x, w] : links[bd]) {
            if (x == bc) {
                continue;
            }
            links[bc][x] += w;
            links[x][bc] += w;
            links[x].erase(bd);
        }
        links[bc].erase(bd);
        links[bd].clear();
        a[bc] += a[bd];
        a[bd] = 0.0;
        active[bd] = false;
        for (VertexId v : members[bd]) {
            owner[v] = bc;
        }
        members[bc].insert(members[bc].end(), members[bd].begin(), members[bd].end());
        members[bd].clear();
    }

    out.cluster = relabel_dense(owner);
    out.count = n == 0 ? 0 : *std::max_element(out.cluster.begin(), out.cluster.end()) + 1;
    out.modularity = q;
    return out;
}

ClusterAssignment kmeans_cluster(std::span<const Point> points, std::size_t k, std::uint64_t seed,
                                 const Graph* g) {
    const std::size_t n = points.size();
    if (k < 1 || k > n) {
        throw ValidationError("k-means requires 1 <= k <= n");
    }
    Rng rng(derive_seed(seed, 17));

    // k-means++ seeding.
    std::vector<Point> centers;
    std::vector<bool> chosen(n, false);
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());
    std::size_t first = rng.below(n);
    centers.push_back(points[first]);
    chosen[first] = true;
    while (centers.size() < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], squared_distance(points[i], centers.back()));
            total += chosen[i] ? 0.0 : d2[i];
        }
        std::size_t pick = n;
        if (total > 0.0) {
            double target = rng.uniform() * total;
            for (std::size_t i = 0; i < n; ++i) {
                if (chosen[i] || d2[i] <= 0.0) {
                    continue;
                }
                pick = i;
                target -= d2[i];
                if (target < 0.0) {
                    break;
                }
            }
        }
        if (pick == n) {
            // Remaining points coincide with centers; take the next unused.
            pick = static_cast<std::size_t>(std::find(chosen.begin(), chosen.end(), false) - chosen.begin());
        }
        chosen[pick] = true;
        centers.push_back(points[pick]);
    }

    ClusterAssignment out;
    std::vector<std::uint32_t> assign(n, std::numeric_limits<std::uint32_t>::max());
    for (int it = 0; it < 100; ++it) {
        bool changed = false;
        double objective = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint32_t best = 0;
            double bd = std::numeric_limits<double>::infinity();
            for (std::uint32_t c = 0; c < k; ++c) {
                const double d = squared_distance(points[i], centers[c]);
                if (d < bd) {
                    bd = d;
                    best = c;
                }
            }
            if (assign[i] != best) {
                changed = true;
                assign[i] = best;
            }
            objective += bd;
        }
        out.history.push_back(objective);
        if (!changed) {
            break;
        }
        std::vector<Point> sum(k);
        std::vector<std::size_t> size(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            sum[assign[i]] = sum[assign[i]] + points[i];
            ++size[assign[i]];
        }
        for (std::uint32_t c = 0; c < k; ++c) {
            if (size[c] > 0) {
                centers[c] = sum[c] * (1.0 / static_cast<double>(size[c]));
            }
        }
        for (std::uint32_t c = 0; c < k; ++c) {
            if (size[c] > 0) {
                continue;
            }
            // Re-seed an empty cluster at the point farthest from its centroid.
            std::size_t far = 0;
            double fd = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double d = squared_distance(points[i], centers[assign[i]]);
                if (d > fd) {
                    fd = d;
                    far = i;
                }
            }
            centers[c] = points[far];
            --size[assign[far]];
            assign[far] = c;
            size[c] = 1;
        }
    }

    out.cluster = relabel_dense(assign);
    out.count = *std::max_element(out.cluster.begin(), out.cluster.end()) + 1;
    if (g != nullptr && g->num_vertices() == n && g->total_edge_weight() > 0.0) {
        out.modularity = modularity(*g, out.cluster);
    }
    return out;
}

double adjusted_rand_index(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    if (a.size() != b.size()) {
        throw ValidationError("partitions differ in size");
    }
    const auto choose2 = [](double x) { return x * (x - 1.0) / 2.0; };
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> table;
    std::map<std::uint32_t, double> rows;
    std::map<std::uint32_t, double> cols;
    for (std::size_t i = 0; i < a.size(); ++i) {
        table[{a[i], b[i]}] += 1.0;
        rows[a[i]] += 1.0;
        cols[b[i]] += 1.0;
    }
    double index = 0.0;
    for (const auto& [key, c] : table) {
        index += choose2(c);
    }
    double sum_a = 0.0;
    double sum_b = 0.0;
    for (const auto& [key, c] : rows) {
        sum_a += choose2(c);
    }
    for (const auto& [key, c] : cols) {
        sum_b += choose2(c);
    }
    const double total = choose2(static_cast<double>(a.size()));
    if (total == 0.0) {
        return 1.0;
    }
    const double expected = sum_a * sum_b / total;
    const double max_index = 0.5 * (sum_a + sum_b);
    if (max_index == expected) {
        return 1.0;
    }
    return (index - expected) / (max_index - expected);
}

void write_clusters(std::ostream& out, const ClusterAssignment& c) {
    for (std::size_t i = 0; i < c.cluster.size(); ++i) {
        out << i << ' ' << c.cluster[i] << '\n';
    }
}

}  // namespace graphmap
