#include "graphmap/embed.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <queue>

#include "graphmap/error.hpp"
#include "graphmap/rng.hpp"

namespace graphmap {

namespace {

constexpr double kGoldenAngle = 2.39996322972865332;

// Direction used to separate coincident points; fixed by the pair so that
// results do not depend on iteration order.
Point separation_direction(std::size_t i, std::size_t j) {
    const double a = kGoldenAngle * static_cast<double>(i * 7919 + j);
    return {std::cos(a), std::sin(a)};
}

// Barnes-Hut quadtree over point positions.
class QuadTree {
public:
    QuadTree(std::span<const Point> pts, double theta) : pts_(pts), theta_(theta) {
        Rect box = bounding_box(pts);
        const double side = std::max({box.width(), box.height(), 1e-12});
        const Point c = box.center();
        nodes_.push_back(make_node({c.x - side / 2, c.y - side / 2}, side));
        for (std::size_t i = 0; i < pts.size(); ++i) {
            insert(0, static_cast<std::uint32_t>(i), 0);
        }
        summarize(0);
    }

    // Repulsive force C K^2 / d on point i from all other points.
    Point repulsion(std::size_t i, double ck2) const { return accumulate(0, i, ck2); }

private:
    static constexpr int kMaxDepth = 48;
    static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

    struct Node {
        Point corner;
        double side = 0.0;
        std::uint32_t child[4] = {kNone, kNone, kNone, kNone};
        std::vector<std::uint32_t> points;  // leaf contents
        bool leaf = true;
        double count = 0.0;
        Point mass_center;
    };

    static Node make_node(Point corner, double side) {
        Node n;
        n.corner = corner;
        n.side = side;
        return n;
    }

    int quadrant(const Node& n, Point p) const {
        const double half = n.side / 2;
        const int qx = p.x >= n.corner.x + half ? 1 : 0;
        const int qy = p.y >= n.corner.y + half ? 1 : 0;
        return qy * 2 + qx;
    }

    void insert(std::uint32_t node, std::uint32_t idx, int depth) {
        if (nodes_[node].leaf) {
            nodes_[node].points.push_back(idx);
            if (nodes_[node].points.size() == 1 || depth >= kMaxDepth) {
                return;
            }
            std::vector<std::uint32_t> moving;
            moving.swap(nodes_[node].points);
            nodes_[node].leaf = false;
            for (std::uint32_t m : moving) {
                insert_child(node, m, depth);
            }
            return;
        }
        insert_child(node, idx, depth);
    }

    void insert_child(std::uint32_t node, std::uint32_t idx, int depth) {
        const int q = quadrant(nodes_[node], pts_[idx]);
        if (nodes_[node].child[q] == kNone) {
            const double half = nodes_[node].side / 2;
            const Point corner{nodes_[node].corner.x + (q & 1) * half, nodes_[node].corner.y + (q >> 1) * half};
            nodes_[node].child[q] = static_cast<std::uint32_t>(nodes_.size());
            nodes_.push_back(make_node(corner, half));
        }
        insert(nodes_[node].child[q], idx, depth + 1);
    }

    void summarize(std::uint32_t node) {
        Node& n = nodes_[node];
        Point sum;
        double count = 0.0;
        if (n.leaf) {
            for (std::uint32_t idx : n.points) {
                sum = sum + pts_[idx];
                count += 1.0;
            }
        } else {
            for (std::uint32_t c : n.child) {
                if (c == kNone) {
                    continue;
                }
                summarize(c);
                const Node& ch = nodes_[c];
                sum = sum + ch.mass_center * ch.count;
                count += ch.count;
            }
        }
        Node& self = nodes_[node];
        self.count = count;
        self.mass_center = count > 0 ? sum * (1.0 / count) : Point{};
    }

    Point accumulate(std::uint32_t node, std::size_t i, double ck2) const {
        const Node& n = nodes_[node];
        const Point xi = pts_[i];
        if (n.leaf) {
            Point f;
            for (std::uint32_t j : n.points) {
                if (j == i) {
                    continue;
                }
                Point d = xi - pts_[j];
                double dist = norm(d);
                if (dist == 0.0) {
                    d = separation_direction(std::min<std::size_t>(i, j), std::max<std::size_t>(i, j));
                    if (j > i) {
                        d = d * -1.0;
                    }
                    dist = 1e-9;
                    f = f + d * (ck2 / dist);
                    continue;
                }
                f = f + d * (ck2 / (dist * dist));
            }
            return f;
        }
        const Point d = xi - n.mass_center;
        const double dist = norm(d);
        const bool inside = xi.x >= n.corner.x && xi.x <= n.corner.x + n.side && xi.y >= n.corner.y &&
                            xi.y <= n.corner.y + n.side;
        if (!inside && dist > 0.0 && n.side / dist < theta_) {
            return d * (n.count * ck2 / (dist * dist));
        }
        Point f;
        for (std::uint32_t c : n.child) {
            if (c != kNone) {
                f = f + accumulate(c, i, ck2);
            }
        }
        return f;
    }

    std::span<const Point> pts_;
    double theta_;
    std::vector<Node> nodes_;
};

Point exact_repulsion(std::span<const Point> pos, std::size_t i, double ck2) {
    Point f;
    const Point xi = pos[i];
    for (std::size_t j = 0; j < pos.size(); ++j) {
        if (j == i) {
            continue;
        }
        Point d = xi - pos[j];
        const double d2 = d.x * d.x + d.y * d.y;
        if (d2 == 0.0) {
            d = separation_direction(std::min(i, j), std::max(i, j));
            if (j > i) {
                d = d * -1.0;
            }
            f = f + d * (ck2 / 1e-9);
            continue;
        }
        f = f + d * (ck2 / d2);
    }
    return f;
}

struct Coarsening {
    Graph graph;
    std::vector<VertexId> parent;
};

// Heavy-edge maximal matching, visiting vertices by (degree, id).
Coarsening coarsen(const Graph& g) {
    const std::size_t n = g.num_vertices();
    std::vector<VertexId> order(n);
    for (VertexId v = 0; v < n; ++v) {
        order[v] = v;
    }
    std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
        return g.neighbors(a).size() < g.neighbors(b).size();
    });
    constexpr auto unset = std::numeric_limits<VertexId>::max();
    std::vector<VertexId> parent(n, unset);
    VertexId next = 0;
    for (VertexId v : order) {
        if (parent[v] != unset) {
            continue;
        }
        VertexId best = unset;
        double best_w = -1.0;
        for (const Neighbor& nb : g.neighbors(v)) {
            if (parent[nb.v] == unset && nb.w > best_w) {
                best = nb.v;
                best_w = nb.w;
            }
        }
        parent[v] = next;
        if (best != unset) {
            parent[best] = next;
        }
        ++next;
    }
    std::map<std::pair<VertexId, VertexId>, double> summed;
    for (const Edge& e : g.edges()) {
        VertexId a = parent[e.u];
        VertexId b = parent[e.v];
        if (a == b) {
            continue;
        }
        if (a > b) {
            std::swap(a, b);
        }
        summed[{a, b}] += e.w;
    }
    std::vector<Vertex> vertices(next);
    for (VertexId v = 0; v < n; ++v) {
        vertices[parent[v]].weight += g.vertex(v).weight;
    }
    std::vector<Edge> edges;
    edges.reserve(summed.size());
    for (const auto& [key, w] : summed) {
        edges.push_back({key.first, key.second, w});
    }
    return {Graph(std::move(vertices), std::move(edges)), std::move(parent)};
}

Layout multilevel_layout(const Graph& g, const LayoutParams& p, int depth) {
    const std::size_t n = g.num_vertices();
    if (n <= p.multilevel_threshold || depth > 40) {
        return force_layout_from(g, initial_placement(n, p), p);
    }
    Coarsening c = coarsen(g);
    if (c.graph.num_vertices() * 4 > n * 3) {
        // Matching stalled (star-like graph); lay out this level directly.
        return force_layout_from(g, initial_placement(n, p), p);
    }
    LayoutParams coarse_params = p;
    coarse_params.K = p.K * std::sqrt(7.0 / 4.0);
    coarse_params.initial_step = 0.0;
    const Layout coarse = multilevel_layout(c.graph, coarse_params, depth + 1);

    std::vector<Point> start(n);
    for (VertexId v = 0; v < n; ++v) {
        const double a = kGoldenAngle * static_cast<double>(v);
        start[v] = coarse.positions[c.parent[v]] + Point{std::cos(a), std::sin(a)} * (0.1 * p.K);
    }
    return force_layout_from(g, std::move(start), p);
}

}  // namespace

void validate(const LayoutParams& p) {
    if (!(p.K > 0.0) || !(p.C > 0.0)) {
        throw ValidationError("layout parameters K and C must be positive");
    }
    if (p.max_iterations < 1) {
        throw ValidationError("layout needs at least one iteration");
    }
    if (!(p.cooling > 0.0 && p.cooling < 1.0)) {
        throw ValidationError("layout cooling factor must lie in (0, 1)");
    }
    if (!(p.tolerance >= 0.0)) {
        throw ValidationError("layout tolerance must be non-negative");
    }
}

std::vector<Point> initial_placement(std::size_t n, const LayoutParams& p) {
    std::vector<Point> pos(n);
    if (n <= 1) {
        return pos;
    }
    Rng rng(derive_seed(p.seed, 11));
    const double radius = p.K * std::sqrt(static_cast<double>(n));
    for (Point& x : pos) {
        const double r = radius * std::sqrt(rng.uniform());
        const double a = 2.0 * std::numbers::pi * rng.uniform();
        x = {r * std::cos(a), r * std::sin(a)};
    }
    return pos;
}

double spring_electrical_energy(const Graph& g, std::span<const Point> pos, const LayoutParams& p) {
    const double wmax = g.max_edge_weight() > 0.0 ? g.max_edge_weight() : 1.0;
    double e = 0.0;
    for (const Edge& edge : g.edges()) {
        const double d = distance(pos[edge.u], pos[edge.v]);
        e += (edge.w / wmax) * d * d * d / (3.0 * p.K);
    }
    const double ck2 = p.C * p.K * p.K;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        for (std::size_t j = i + 1; j < pos.size(); ++j) {
            const double d = std::max(distance(pos[i], pos[j]), 1e-300);
            e -= ck2 * std::log(d);
        }
    }
    return e;
}

Layout force_layout_from(const Graph& g, std::vector<Point> start, const LayoutParams& p) {
    validate(p);
    const std::size_t n = g.num_vertices();
    Layout out;
    out.K = p.K;
    out.positions = std::move(start);
    if (n <= 1) {
        out.positions.assign(n, Point{});
        out.energy = 0.0;
        return out;
    }
    const double wmax = g.max_edge_weight() > 0.0 ? g.max_edge_weight() : 1.0;
    const double ck2 = p.C * p.K * p.K;
    const bool use_tree = n > p.barnes_hut_threshold;
    double step = p.initial_step > 0.0 ? p.initial_step : p.K;
    double force_energy = std::numeric_limits<double>::infinity();
    int progress = 0;
    std::vector<Point>& x = out.positions;

    for (int it = 0; it < p.max_iterations; ++it) {
        std::optional<QuadTree> tree;
        if (use_tree) {
            tree.emplace(x, p.barnes_hut_theta);
        }
        double next_energy = 0.0;
        double moved = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            Point f = use_tree ? tree->repulsion(i, ck2) : exact_repulsion(x, i, ck2);
            for (const Neighbor& nb : g.neighbors(static_cast<VertexId>(i))) {
                const Point d = x[nb.v] - x[i];
                const double dist = norm(d);
                // (w / wmax) * dist^2 / K along the unit direction.
                f = f + d * ((nb.w / wmax) * dist / p.K);
            }
            const double fn = norm(f);
            if (fn > 0.0 && std::isfinite(fn)) {
                x[i] = x[i] + f * (step / fn);
                moved += step;
            }
            next_energy += fn * fn;
        }
        if (next_energy < force_energy) {
            if (++progress >= 5) {
                progress = 0;
                step /= p.cooling;
            }
        } else {
            progress = 0;
            step *= p.cooling;
        }
        force_energy = next_energy;
        out.history.push_back(next_energy);
        out.iterations = it + 1;
        if (moved / static_cast<double>(n) < p.tolerance * p.K) {
            break;
        }
    }
    out.energy = spring_electrical_energy(g, x, p);
    return out;
}

Layout force_layout(const Graph& g, const LayoutParams& p) {
    validate(p);
    if (g.num_vertices() > p.multilevel_threshold) {
        return multilevel_layout(g, p, 0);
    }
    return force_layout_from(g, initial_placement(g.num_vertices(), p), p);
}

double layout_stress(std::span<const Point> pos, const std::vector<std::vector<double>>& dist) {
    double s = 0.0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        for (std::size_t j = i + 1; j < pos.size(); ++j) {
            const double d = dist[i][j];
            if (!std::isfinite(d) || d <= 0.0) {
                continue;
            }
            const double r = distance(pos[i], pos[j]) - d;
            s += r * r / (d * d);
        }
    }
    return s;
}

std::vector<std::vector<double>> graph_distances(const Graph& g, double K) {
    const std::size_t n = g.num_vertices();
    const double wmax = g.max_edge_weight() > 0.0 ? g.max_edge_weight() : 1.0;
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, inf));
    using Item = std::pair<double, VertexId>;
    for (VertexId s = 0; s < n; ++s) {
        auto& d = dist[s];
        d[s] = 0.0;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
        queue.emplace(0.0, s);
        while (!queue.empty()) {
            const auto [du, u] = queue.top();
            queue.pop();
            if (du > d[u]) {
                continue;
            }
            for (const Neighbor& nb : g.neighbors(u)) {
                const double nd = du + K * wmax / nb.w;
                if (nd < d[nb.v]) {
                    d[nb.v] = nd;
                    queue.emplace(nd, nb.v);
                }
            }
        }
    }
    return dist;
}

namespace {

// Classical scaling per component: top two eigenvectors of the
// double-centered squared distance matrix, by power iteration with
// deflation.
std::vector<Point> classical_mds(const std::vector<std::vector<double>>& dist, std::span<const std::uint32_t> comp,
                                 std::size_t comp_count) {
    const std::size_t n = dist.size();
    std::vector<Point> x(n);
    std::vector<std::vector<std::size_t>> members(comp_count);
    for (std::size_t i = 0; i < n; ++i) {
        members[comp[i]].push_back(i);
    }
    for (const auto& m : members) {
        const std::size_t k = m.size();
        if (k < 2) {
            continue;
        }
        std::vector<double> b(k * k);
        std::vector<double> row_mean(k, 0.0);
        double mean = 0.0;
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t c = 0; c < k; ++c) {
                const double d = dist[m[a]][m[c]];
                b[a * k + c] = d * d;
                row_mean[a] += d * d / static_cast<double>(k);
            }
            mean += row_mean[a] / static_cast<double>(k);
        }
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t c = 0; c < k; ++c) {
                b[a * k + c] = -0.5 * (b[a * k + c] - row_mean[a] - row_mean[c] + mean);
            }
        }
        std::vector<std::vector<double>> vecs;
        for (int axis = 0; axis < 2; ++axis) {
            std::vector<double> v(k);
            for (std::size_t a = 0; a < k; ++a) {
                v[a] = 1.0 + static_cast<double>((a * 7 + static_cast<std::size_t>(axis) * 3) % 11);
            }
            double lambda = 0.0;
            for (int it = 0; it < 300; ++it) {
                for (const auto& u : vecs) {
                    double proj = 0.0;
                    for (std::size_t a = 0; a < k; ++a) proj += u[a] * v[a];
                    for (std::size_t a = 0; a < k; ++a) v[a] -= proj * u[a];
                }
                std::vector<double> w(k, 0.0);
                for (std::size_t a = 0; a < k; ++a) {
                    for (std::size_t c = 0; c < k; ++c) w[a] += b[a * k + c] * v[c];
                }
                double len = 0.0;
                for (double t : w) len += t * t;
                len = std::sqrt(len);
                if (!(len > 0.0)) {
                    lambda = 0.0;
                    break;
                }
                double diff = 0.0;
                for (std::size_t a = 0; a < k; ++a) {
                    diff += std::abs(w[a] / len - v[a]);
                    v[a] = w[a] / len;
                }
                lambda = len;
                if (diff < 1e-12 * static_cast<double>(k)) {
                    break;
                }
            }
            const double scale = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
            for (std::size_t a = 0; a < k; ++a) {
                (axis == 0 ? x[m[a]].x : x[m[a]].y) = v[a] * scale;
            }
            vecs.push_back(std::move(v));
        }
    }
    return x;
}

}  // namespace

Layout stress_layout(const Graph& g, const LayoutParams& p) {
    validate(p);
    const std::size_t n = g.num_vertices();
    Layout out;
    out.K = p.K;
    if (n <= 1) {
        out.positions.assign(n, Point{});
        return out;
    }
    const auto dist = graph_distances(g, p.K);
    const auto comp = connected_components(g);
    const std::size_t comp_count = *std::max_element(comp.begin(), comp.end()) + 1;

    // Components are independent blocks of the stress sum, so one joint
    // Gauss-Seidel sweep majorizes each block separately.
    std::vector<Point> x = classical_mds(dist, comp, comp_count);
    {
        // Small seeded perturbation so symmetric or collinear starts can
        // still bend.
        Rng rng(derive_seed(p.seed, 13));
        for (Point& q : x) {
            const double r = 1e-3 * p.K * std::sqrt(rng.uniform());
            const double a = 2.0 * std::numbers::pi * rng.uniform();
            q = q + Point{r * std::cos(a), r * std::sin(a)};
        }
    }

    double stress = layout_stress(x, dist);
    out.history.push_back(stress);
    for (int it = 0; it < p.max_iterations; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            Point num;
            double den = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double d = dist[i][j];
                if (j == i || !std::isfinite(d) || d <= 0.0) {
                    continue;
                }
                const double w = 1.0 / (d * d);
                const Point diff = x[i] - x[j];
                const double len = norm(diff);
                const Point dir = len > 0.0 ? diff * (1.0 / len) : Point{1.0, 0.0};
                num = num + (x[j] + dir * d) * w;
                den += w;
            }
            if (den > 0.0) {
                x[i] = num * (1.0 / den);
            }
        }
        const double next = layout_stress(x, dist);
        out.history.push_back(next);
        out.iterations = it + 1;
        const double change = stress > 0.0 ? (stress - next) / stress : 0.0;
        stress = next;
        if (stress <= 0.0 || change < p.tolerance) {
            break;
        }
    }
    out.energy = stress;

    if (comp_count > 1) {
        std::vector<Rect> boxes(comp_count);
        std::vector<bool> seen(comp_count, false);
        for (std::size_t i = 0; i < n; ++i) {
            Rect& b = boxes[comp[i]];
            if (!seen[comp[i]]) {
                b = {x[i], x[i]};
                seen[comp[i]] = true;
            }
            b.min.x = std::min(b.min.x, x[i].x);
            b.min.y = std::min(b.min.y, x[i].y);
            b.max.x = std::max(b.max.x, x[i].x);
            b.max.y = std::max(b.max.y, x[i].y);
        }
        std::vector<Point> shift(comp_count);
        double cursor = 0.0;
        for (std::size_t c = 0; c < comp_count; ++c) {
            shift[c] = {cursor - boxes[c].min.x, -boxes[c].center().y};
            cursor += boxes[c].width() + 2.0 * p.K;
        }
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = x[i] + shift[comp[i]];
        }
    }
    out.positions = std::move(x);
    return out;
}

Layout center_and_scale(Layout l, double span) {
    if (l.positions.empty()) {
        return l;
    }
    Point c;
    for (const Point& p : l.positions) {
        c = c + p;
    }
    c = c * (1.0 / static_cast<double>(l.positions.size()));
    for (Point& p : l.positions) {
        p = p - c;
    }
    const Rect box = bounding_box(l.positions);
    const double longest = std::max(box.width(), box.height());
    if (longest <= 0.0) {
        for (Point& p : l.positions) {
            p = {};
        }
        return l;
    }
    const double scale = span / longest;
    for (Point& p : l.positions) {
        p = p * scale;
    }
    l.K *= scale;
    return l;
}

void write_layout(std::ostream& out, const Layout& l) {
    char buf[96];
    for (std::size_t i = 0; i < l.positions.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu %.6f %.6f\n", i, l.positions[i].x, l.positions[i].y);
        out << buf;
    }
}

}  // namespace graphmap
