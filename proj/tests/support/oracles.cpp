#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

namespace graphmap::oracle {

std::vector<std::uint32_t> topk_row(std::span<const double> row, std::uint32_t self, std::size_t k) {
    std::vector<std::uint32_t> cols;
    for (std::uint32_t j = 0; j < row.size(); ++j) {
        if (j != self && row[j] > 0.0) {
            cols.push_back(j);
        }
    }
    std::sort(cols.begin(), cols.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (row[a] != row[b]) return row[a] > row[b];
        return a < b;
    });
    if (cols.size() > k) {
        cols.resize(k);
    }
    return cols;
}

double modularity(const Graph& g, std::span<const std::uint32_t> part) {
    const std::size_t n = g.num_vertices();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (const Edge& e : g.edges()) {
        a[e.u][e.v] = e.w;
        a[e.v][e.u] = e.w;
    }
    std::vector<double> k(n, 0.0);
    double two_m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            k[i] += a[i][j];
        }
        two_m += k[i];
    }
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (part[i] == part[j]) {
                q += a[i][j] - k[i] * k[j] / two_m;
            }
        }
    }
    return q / two_m;
}

BestPartition best_partition(const Graph& g) {
    const std::size_t n = g.num_vertices();
    BestPartition best;
    best.q = -std::numeric_limits<double>::infinity();
    std::vector<std::uint32_t> rgs(n, 0);
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t blocks) {
        if (i == n) {
            const double q = modularity(g, rgs);
            if (q > best.q + 1e-12) {
                best.q = q;
                best.part = rgs;
            }
            return;
        }
        for (std::uint32_t b = 0; b <= blocks; ++b) {
            rgs[i] = b;
            rec(i + 1, std::max(blocks, b + 1));
        }
    };
    if (n == 0) {
        return best;
    }
    rgs[0] = 0;
    rec(1, 1);
    return best;
}

bool same_partition(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            if ((a[i] == a[j]) != (b[i] == b[j])) {
                return false;
            }
        }
    }
    return true;
}

double adjusted_rand_index(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    // Pair counts: both together, together in a, together in b.
    double both = 0.0;
    double in_a = 0.0;
    double in_b = 0.0;
    double pairs = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            const bool sa = a[i] == a[j];
            const bool sb = b[i] == b[j];
            both += sa && sb ? 1.0 : 0.0;
            in_a += sa ? 1.0 : 0.0;
            in_b += sb ? 1.0 : 0.0;
            pairs += 1.0;
        }
    }
    const double expected = in_a * in_b / pairs;
    const double max_index = 0.5 * (in_a + in_b);
    if (max_index == expected) {
        return 1.0;
    }
    return (both - expected) / (max_index - expected);
}

std::vector<std::uint32_t> components(const Graph& g) {
    std::vector<std::uint32_t> parent(g.num_vertices());
    std::iota(parent.begin(), parent.end(), 0u);
    const std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (const Edge& e : g.edges()) {
        const std::uint32_t a = find(e.u);
        const std::uint32_t b = find(e.v);
        parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::uint32_t> out(g.num_vertices());
    for (std::uint32_t v = 0; v < out.size(); ++v) {
        out[v] = find(v);
    }
    return out;
}

std::uint32_t nearest_site(std::span<const Point> sites, Point q) {
    std::uint32_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::uint32_t i = 0; i < sites.size(); ++i) {
        const double d = std::hypot(sites[i].x - q.x, sites[i].y - q.y);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

bool empty_circumcircles(std::span<const Point> pts, const Triangulation& t) {
    for (const auto& tri : t.triangles) {
        const Point a = pts[tri[0]];
        const Point b = pts[tri[1]];
        const Point c = pts[tri[2]];
        const double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
        if (d == 0.0) {
            return false;
        }
        const double a2 = a.x * a.x + a.y * a.y;
        const double b2 = b.x * b.x + b.y * b.y;
        const double c2 = c.x * c.x + c.y * c.y;
        const Point center{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
                           (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
        const double r = std::hypot(a.x - center.x, a.y - center.y);
        for (std::uint32_t i = 0; i < pts.size(); ++i) {
            if (i == tri[0] || i == tri[1] || i == tri[2]) {
                continue;
            }
            if (std::hypot(pts[i].x - center.x, pts[i].y - center.y) < r * (1.0 - 1e-9)) {
                return false;
            }
        }
    }
    return true;
}

std::vector<Quad> trapezoids(const MultiPolygon& mp) { return trapezoids(mp, {}); }

std::vector<Quad> trapezoids(const MultiPolygon& mp, std::span<const double> extra_xs) {
    struct Seg {
        Point a;
        Point b;  // a.x < b.x
    };
    std::vector<Seg> segs;
    std::vector<double> xs;
    const auto add_ring = [&](const Ring& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            Point p = r[i];
            Point q = r[(i + 1) % r.size()];
            xs.push_back(p.x);
            if (p.x == q.x) {
                continue;
            }
            if (p.x > q.x) {
                std::swap(p, q);
            }
            segs.push_back({p, q});
        }
    };
    for (const Polygon& poly : mp) {
        add_ring(poly.outer);
        for (const Ring& h : poly.holes) {
            add_ring(h);
        }
    }
    xs.insert(xs.end(), extra_xs.begin(), extra_xs.end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(segs.begin(), segs.end(), [](const Seg& s, const Seg& t) { return s.a.x < t.a.x; });

    const auto y_at = [](const Seg& s, double x) {
        if (x <= s.a.x) return s.a.y;
        if (x >= s.b.x) return s.b.y;
        return s.a.y + (s.b.y - s.a.y) * (x - s.a.x) / (s.b.x - s.a.x);
    };

    std::vector<Quad> out;
    std::vector<const Seg*> active;
    std::size_t next = 0;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        const double x0 = xs[k];
        const double x1 = xs[k + 1];
        const double xm = 0.5 * (x0 + x1);
        while (next < segs.size() && segs[next].a.x <= x0) {
            active.push_back(&segs[next++]);
        }
        std::erase_if(active, [&](const Seg* s) { return s->b.x <= x0; });
        std::vector<const Seg*> crossing;
        for (const Seg* s : active) {
            if (s->a.x <= x0 && s->b.x >= x1) {
                crossing.push_back(s);
            }
        }
        std::sort(crossing.begin(), crossing.end(),
                  [&](const Seg* s, const Seg* t) { return y_at(*s, xm) < y_at(*t, xm); });
        for (std::size_t i = 0; i + 1 < crossing.size(); i += 2) {
            const Seg& lo = *crossing[i];
            const Seg& hi = *crossing[i + 1];
            out.push_back(Quad{Point{x0, y_at(lo, x0)}, Point{x1, y_at(lo, x1)}, Point{x1, y_at(hi, x1)},
                               Point{x0, y_at(hi, x0)}});
        }
    }
    return out;
}

double convex_intersection_area(std::span<const Point> a, std::span<const Point> b) {
    std::vector<Point> poly(a.begin(), a.end());
    for (std::size_t i = 0; i < b.size() && !poly.empty(); ++i) {
        const Point p = b[i];
        const Point q = b[(i + 1) % b.size()];
        const auto side = [&](Point r) { return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x); };
        std::vector<Point> next;
        for (std::size_t j = 0; j < poly.size(); ++j) {
            const Point s = poly[j];
            const Point e = poly[(j + 1) % poly.size()];
            const double ds = side(s);
            const double de = side(e);
            if (ds >= 0.0) {
                next.push_back(s);
            }
            if ((ds >= 0.0) != (de >= 0.0)) {
                const double t = ds / (ds - de);
                next.push_back({s.x + t * (e.x - s.x), s.y + t * (e.y - s.y)});
            }
        }
        poly = std::move(next);
    }
    double area2 = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point s = poly[i];
        const Point e = poly[(i + 1) % poly.size()];
        area2 += s.x * e.y - e.x * s.y;
    }
    return std::abs(area2) / 2.0;
}

double intersection_area(const MultiPolygon& a, const MultiPolygon& b) {
    // Decompose both on the union of their slab boundaries so only
    // trapezoids in the same slab can meet.
    std::vector<double> xs;
    for (const MultiPolygon* mp : {&a, &b}) {
        for (const Polygon& poly : *mp) {
            for (const Point& p : poly.outer) xs.push_back(p.x);
            for (const Ring& h : poly.holes) {
                for (const Point& p : h) xs.push_back(p.x);
            }
        }
    }
    std::map<double, std::vector<Quad>> slabs_b;
    for (const Quad& q : trapezoids(b, xs)) {
        slabs_b[q[0].x].push_back(q);
    }
    double total = 0.0;
    for (const Quad& s : trapezoids(a, xs)) {
        const auto it = slabs_b.find(s[0].x);
        if (it == slabs_b.end()) {
            continue;
        }
        for (const Quad& t : it->second) {
            total += convex_intersection_area(s, t);
        }
    }
    return total;
}

}  // namespace graphmap::oracle
