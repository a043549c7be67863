#include "graphmap/mapgeom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <unordered_map>

#include "graphmap/rng.hpp"

namespace graphmap {

namespace {

constexpr double kGoldenAngle = 2.39996322972865332;

// Uniform bucket grid over a point set.
class GridIndex {
public:
    GridIndex(std::span<const Point> pts, const Rect& bounds, double cell) : pts_(pts), origin_(bounds.min) {
        cell_ = cell > 0.0 ? cell : 1.0;
        cols_ = std::max<long>(1, static_cast<long>(std::ceil(bounds.width() / cell_)));
        rows_ = std::max<long>(1, static_cast<long>(std::ceil(bounds.height() / cell_)));
        buckets_.resize(static_cast<std::size_t>(cols_ * rows_));
        for (std::uint32_t i = 0; i < pts.size(); ++i) {
            const auto [c, r] = bucket_of(pts[i]);
            buckets_[static_cast<std::size_t>(r * cols_ + c)].push_back(i);
        }
    }

    std::pair<long, long> bucket_of(Point p) const {
        const long c = std::clamp(static_cast<long>(std::floor((p.x - origin_.x) / cell_)), 0L, cols_ - 1);
        const long r = std::clamp(static_cast<long>(std::floor((p.y - origin_.y) / cell_)), 0L, rows_ - 1);
        return {c, r};
    }

    double cell() const { return cell_; }
    long max_ring() const { return std::max(cols_, rows_); }

    // Indices in the square ring at Chebyshev distance `ring` from bucket
    // (c, r).
    template <typename F>
    void for_ring(long c, long r, long ring, F&& f) const {
        for (long rr = r - ring; rr <= r + ring; ++rr) {
            if (rr < 0 || rr >= rows_) {
                continue;
            }
            const bool edge_row = rr == r - ring || rr == r + ring;
            for (long cc = c - ring; cc <= c + ring; ++cc) {
                if (cc < 0 || cc >= cols_) {
                    continue;
                }
                if (!edge_row && cc != c - ring && cc != c + ring) {
                    continue;
                }
                for (std::uint32_t idx : buckets_[static_cast<std::size_t>(rr * cols_ + cc)]) {
                    f(idx);
                }
            }
        }
    }

    // Lower bound on the distance from p to any point outside the block of
    // rings 0..ring around p's bucket.
    double clearance(Point p, long ring) const {
        const auto [c, r] = bucket_of(p);
        const double x0 = origin_.x + static_cast<double>(c - ring) * cell_;
        const double x1 = origin_.x + static_cast<double>(c + ring + 1) * cell_;
        const double y0 = origin_.y + static_cast<double>(r - ring) * cell_;
        const double y1 = origin_.y + static_cast<double>(r + ring + 1) * cell_;
        double d = std::numeric_limits<double>::infinity();
        if (c - ring > 0) d = std::min(d, p.x - x0);
        if (c + ring < cols_ - 1) d = std::min(d, x1 - p.x);
        if (r - ring > 0) d = std::min(d, p.y - y0);
        if (r + ring < rows_ - 1) d = std::min(d, y1 - p.y);
        return std::max(d, 0.0);
    }

    double nearest_distance(Point p) const {
        const auto [c, r] = bucket_of(p);
        double best = std::numeric_limits<double>::infinity();
        for (long ring = 0; ring <= max_ring(); ++ring) {
            for_ring(c, r, ring, [&](std::uint32_t idx) { best = std::min(best, distance(p, pts_[idx])); });
            if (best <= clearance(p, ring)) {
                break;
            }
        }
        return best;
    }

private:
    std::span<const Point> pts_;
    Point origin_;
    double cell_ = 1.0;
    long cols_ = 1;
    long rows_ = 1;
    std::vector<std::vector<std::uint32_t>> buckets_;
};

std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) {
        return pts;
    }
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Point& p : pts) {
        while (k >= 2 && orient2d(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && orient2d(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

// Nudges exact duplicates apart so Voronoi generators are pairwise distinct.
void separate_duplicates(std::vector<Site>& sites, double radius) {
    std::map<Point, std::uint32_t> seen;
    for (std::uint32_t i = 0; i < sites.size(); ++i) {
        Point p = sites[i].pos;
        const double a = kGoldenAngle * static_cast<double>(i);
        while (seen.contains(p)) {
            p = p + Point{std::cos(a), std::sin(a)} * radius;
        }
        sites[i].pos = p;
        seen.emplace(p, i);
    }
}

// Canonical vertex ids: points closer than eps share an id, so copies of a
// Voronoi vertex computed independently by neighboring cells coincide.
class VertexPool {
public:
    explicit VertexPool(double eps) : eps_(eps) {}

    std::uint32_t id(Point p) {
        const auto kx = static_cast<std::int64_t>(std::floor(p.x / eps_));
        const auto ky = static_cast<std::int64_t>(std::floor(p.y / eps_));
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                const auto it = buckets_.find(key(kx + dx, ky + dy));
                if (it == buckets_.end()) {
                    continue;
                }
                for (std::uint32_t idx : it->second) {
                    if (std::abs(points_[idx].x - p.x) <= eps_ && std::abs(points_[idx].y - p.y) <= eps_) {
                        return idx;
                    }
                }
            }
        }
        const auto idx = static_cast<std::uint32_t>(points_.size());
        points_.push_back(p);
        buckets_[key(kx, ky)].push_back(idx);
        return idx;
    }

    Point at(std::uint32_t idx) const { return points_[idx]; }

private:
    static std::uint64_t key(std::int64_t x, std::int64_t y) {
        return (static_cast<std::uint64_t>(x) * 0x9E3779B97F4A7C15ULL) ^ static_cast<std::uint64_t>(y);
    }

    double eps_;
    std::vector<Point> points_;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets_;
};

using IndexRing = std::vector<std::uint32_t>;

IndexRing index_ring(VertexPool& pool, const Ring& ring) {
    IndexRing out;
    out.reserve(ring.size());
    for (const Point& p : ring) {
        const std::uint32_t id = pool.id(p);
        if (out.empty() || out.back() != id) {
            out.push_back(id);
        }
    }
    while (out.size() > 1 && out.front() == out.back()) {
        out.pop_back();
    }
    if (out.size() < 3) {
        out.clear();
    }
    return out;
}

std::uint64_t edge_key(std::uint32_t u, std::uint32_t v) {
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

void drop_collinear(Ring& ring) {
    bool changed = true;
    while (changed && ring.size() > 3) {
        changed = false;
        for (std::size_t i = 0; i < ring.size() && ring.size() > 3; ++i) {
            const Point a = ring[(i + ring.size() - 1) % ring.size()];
            const Point b = ring[i];
            const Point c = ring[(i + 1) % ring.size()];
            if (orient2d(a, b, c) == 0.0 && dot(a - b, c - b) < 0.0) {
                ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                --i;
            }
        }
    }
}

// Union of a group of indexed cells: interior edges cancel against their
// reverse, the remaining boundary is traced into rings.
MultiPolygon union_indexed(const VertexPool& pool, std::span<const IndexRing* const> group, double min_area) {
    std::unordered_map<std::uint64_t, int> count;
    for (const IndexRing* ring : group) {
        const std::size_t n = ring->size();
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t u = (*ring)[i];
            const std::uint32_t v = (*ring)[(i + 1) % n];
            auto rev = count.find(edge_key(v, u));
            if (rev != count.end() && rev->second > 0) {
                --rev->second;
            } else {
                ++count[edge_key(u, v)];
            }
        }
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> boundary;
    for (const auto& [key, c] : count) {
        for (int k = 0; k < c; ++k) {
            boundary.emplace_back(static_cast<std::uint32_t>(key >> 32), static_cast<std::uint32_t>(key));
        }
    }
    std::sort(boundary.begin(), boundary.end());

    struct Out {
        std::uint32_t to;
        std::size_t edge;
    };
    std::map<std::uint32_t, std::vector<Out>> outgoing;
    for (std::size_t e = 0; e < boundary.size(); ++e) {
        outgoing[boundary[e].first].push_back({boundary[e].second, e});
    }
    std::vector<bool> used(boundary.size(), false);

    std::vector<Ring> rings;
    for (std::size_t start = 0; start < boundary.size(); ++start) {
        if (used[start]) {
            continue;
        }
        used[start] = true;
        IndexRing ids{boundary[start].first};
        std::uint32_t prev = boundary[start].first;
        std::uint32_t cur = boundary[start].second;
        for (std::size_t guard = 0; guard <= boundary.size(); ++guard) {
            const auto& outs = outgoing[cur];
            // Tightest left turn: smallest clockwise angle from the reversed
            // incoming direction keeps pinched regions in separate rings.
            const Point c = pool.at(cur);
            const Point back = pool.at(prev) - c;
            const double ref = std::atan2(back.y, back.x);
            std::size_t pick = std::numeric_limits<std::size_t>::max();
            double best = std::numeric_limits<double>::infinity();
            for (const Out& o : outs) {
                if (used[o.edge] && o.edge != start) {
                    continue;
                }
                const Point d = pool.at(o.to) - c;
                double cw = ref - std::atan2(d.y, d.x);
                while (cw <= 0.0) cw += 2.0 * std::numbers::pi;
                while (cw > 2.0 * std::numbers::pi) cw -= 2.0 * std::numbers::pi;
                if (cw < best) {
                    best = cw;
                    pick = o.edge;
                }
            }
            if (pick == std::numeric_limits<std::size_t>::max() || pick == start) {
                break;
            }
            used[pick] = true;
            ids.push_back(cur);
            prev = cur;
            cur = boundary[pick].second;
        }
        Ring ring;
        ring.reserve(ids.size());
        for (std::uint32_t id : ids) {
            ring.push_back(pool.at(id));
        }
        drop_collinear(ring);
        if (ring.size() >= 3 && std::abs(signed_area(ring)) >= min_area) {
            rings.push_back(std::move(ring));
        }
    }

    MultiPolygon out;
    std::vector<Ring> holes;
    for (Ring& r : rings) {
        if (signed_area(r) > 0.0) {
            canonicalize_ring(r, true);
            out.push_back(Polygon{std::move(r), {}});
        } else {
            canonicalize_ring(r, false);
            holes.push_back(std::move(r));
        }
    }
    std::sort(out.begin(), out.end(), [](const Polygon& a, const Polygon& b) { return a.outer < b.outer; });
    for (Ring& h : holes) {
        // A point just inside the hole: off the first edge on its right side
        // (holes run clockwise).
        const Point a = h[0];
        const Point b = h[1];
        const Point e = b - a;
        const Point probe = (a + b) * 0.5 + Point{e.y, -e.x} * 1e-6;
        std::size_t owner = out.size();
        double owner_area = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (point_in_ring(probe, out[i].outer)) {
                const double a_i = std::abs(signed_area(out[i].outer));
                if (a_i < owner_area) {
                    owner_area = a_i;
                    owner = i;
                }
            }
        }
        if (owner < out.size()) {
            out[owner].holes.push_back(std::move(h));
        }
    }
    for (Polygon& p : out) {
        std::sort(p.holes.begin(), p.holes.end());
    }
    return out;
}

double pool_eps(const Rect& frame) {
    return 1e-8 * std::max({frame.width(), frame.height(), 1e-300});
}

}  // namespace

std::vector<std::uint32_t> PolygonMap::neighbors(std::uint32_t c) const {
    std::vector<std::uint32_t> out;
    for (const CountryAdjacency& adj : adjacency) {
        if (adj.a == c) out.push_back(adj.b);
        if (adj.b == c) out.push_back(adj.a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

SiteSet generate_sites(std::span<const LabelBox> boxes, const MapParams& p) {
    SiteSet s;
    if (boxes.empty()) {
        s.frame = {{-1.0, -1.0}, {1.0, 1.0}};
        s.radius = 1.0;
        return s;
    }
    for (const LabelBox& b : boxes) {
        s.centroid = s.centroid + b.center;
    }
    s.centroid = s.centroid * (1.0 / static_cast<double>(boxes.size()));
    for (const LabelBox& b : boxes) {
        for (const double sx : {-1.0, 1.0}) {
            for (const double sy : {-1.0, 1.0}) {
                const Point corner = b.center + Point{sx * b.half_width, sy * b.half_height};
                s.radius = std::max(s.radius, distance(corner, s.centroid));
            }
        }
    }
    if (!(s.radius > 0.0)) {
        s.radius = 1.0;
    }
    const double half = p.frame_factor * s.radius;
    s.frame = {s.centroid - Point{half, half}, s.centroid + Point{half, half}};

    Rng jitter(derive_seed(p.seed, 101));
    for (const LabelBox& b : boxes) {
        s.label_boxes.push_back(
            {b.center - Point{b.half_width, b.half_height}, b.center + Point{b.half_width, b.half_height}});
        s.sites.push_back({b.center, SiteKind::Vertex, b.vertex});
        const double w = 2.0 * b.half_width;
        const double h = 2.0 * b.half_height;
        const double spacing_max = std::min(w, h) / p.spacing_divisor;
        if (!(spacing_max > 0.0)) {
            continue;
        }
        const double perim = 2.0 * (w + h);
        const auto count = static_cast<std::size_t>(std::ceil(perim / spacing_max - 1e-9));
        const double spacing = perim / static_cast<double>(count);
        const Point origin = b.center - Point{b.half_width, b.half_height};
        const double amp = p.jitter * spacing_max;
        for (std::size_t k = 0; k < count; ++k) {
            double t = static_cast<double>(k) * spacing;
            Point q;
            if (t < w) {
                q = origin + Point{t, 0.0};
            } else if ((t -= w) < h) {
                q = origin + Point{w, t};
            } else if ((t -= h) < w) {
                q = origin + Point{w - t, h};
            } else {
                t -= w;
                q = origin + Point{0.0, h - t};
            }
            const double jx = jitter.uniform(-amp, amp);
            const double jy = jitter.uniform(-amp, amp);
            s.sites.push_back({q + Point{jx, jy}, SiteKind::Vertex, b.vertex});
        }
    }

    Rng outskirts(derive_seed(p.seed, 102));
    const auto outer_count = static_cast<std::size_t>(
        p.outer_count_factor * std::ceil(std::sqrt(static_cast<double>(boxes.size()))));
    const double r0 = p.outer_inner * s.radius;
    const double r1 = p.outer_outer * s.radius;
    for (std::size_t k = 0; k < outer_count; ++k) {
        const double r = std::sqrt(outskirts.uniform(r0 * r0, r1 * r1));
        const double a = outskirts.uniform(0.0, 2.0 * std::numbers::pi);
        s.sites.push_back({s.centroid + Point{r * std::cos(a), r * std::sin(a)}, SiteKind::Outer, 0});
    }
    separate_duplicates(s.sites, 1e-9 * s.radius);
    return s;
}

SiteSet naive_sites(std::span<const LabelBox> boxes) {
    SiteSet s;
    std::vector<Point> extents;
    for (const LabelBox& b : boxes) {
        s.sites.push_back({b.center, SiteKind::Vertex, b.vertex});
        extents.push_back(b.center - Point{b.half_width, b.half_height});
        extents.push_back(b.center + Point{b.half_width, b.half_height});
        s.label_boxes.push_back({extents[extents.size() - 2], extents.back()});
        s.centroid = s.centroid + b.center;
    }
    if (boxes.empty()) {
        s.frame = {{-1.0, -1.0}, {1.0, 1.0}};
        s.radius = 1.0;
        return s;
    }
    s.centroid = s.centroid * (1.0 / static_cast<double>(boxes.size()));
    s.frame = bounding_box(extents);
    s.radius = 0.5 * std::hypot(s.frame.width(), s.frame.height());
    for (const Point& corner : rect_ring(s.frame)) {
        s.sites.push_back({corner, SiteKind::Outer, 0});
    }
    separate_duplicates(s.sites, 1e-9 * std::max(s.radius, 1e-300));
    return s;
}

SiteSet insert_lakes(SiteSet s, const MapParams& p) {
    if (!p.lakes) {
        return s;
    }
    std::vector<Point> vertex_pts;
    for (const Site& site : s.sites) {
        if (site.kind == SiteKind::Vertex) {
            vertex_pts.push_back(site.pos);
        }
    }
    if (vertex_pts.size() < 3) {
        return s;
    }
    const double g = p.lake_cell > 0.0 ? p.lake_cell : s.radius / 25.0;
    const double threshold = p.lake_theta * g;
    const std::vector<Point> hull = convex_hull(vertex_pts);
    if (hull.size() < 3) {
        return s;
    }
    const Rect hull_box = bounding_box(hull);
    const GridIndex index(vertex_pts, s.frame,
                          std::sqrt(s.frame.area() / static_cast<double>(vertex_pts.size())));
    const auto cols = static_cast<long>(std::floor(s.frame.width() / g));
    const auto rows = static_cast<long>(std::floor(s.frame.height() / g));
    // Grid points within the threshold of a label box.
    std::vector<bool> blocked(static_cast<std::size_t>(std::max(rows * cols, 0L)), false);
    for (const Rect& box : s.label_boxes) {
        const auto index_range = [&](double lo, double hi, double origin, long count) {
            const long first = std::max(0L, static_cast<long>(std::ceil((lo - origin) / g - 0.5)));
            const long last = std::min(count - 1, static_cast<long>(std::floor((hi - origin) / g - 0.5)));
            return std::pair(first, last);
        };
        const auto [c0, c1] = index_range(box.min.x - threshold, box.max.x + threshold, s.frame.min.x, cols);
        const auto [r0, r1] = index_range(box.min.y - threshold, box.max.y + threshold, s.frame.min.y, rows);
        for (long r = r0; r <= r1; ++r) {
            for (long c = c0; c <= c1; ++c) {
                const Point q{s.frame.min.x + (static_cast<double>(c) + 0.5) * g,
                              s.frame.min.y + (static_cast<double>(r) + 0.5) * g};
                const double dx = std::max({box.min.x - q.x, 0.0, q.x - box.max.x});
                const double dy = std::max({box.min.y - q.y, 0.0, q.y - box.max.y});
                if (std::hypot(dx, dy) <= threshold) {
                    blocked[static_cast<std::size_t>(r * cols + c)] = true;
                }
            }
        }
    }
    for (long r = 0; r < rows; ++r) {
        for (long c = 0; c < cols; ++c) {
            if (blocked[static_cast<std::size_t>(r * cols + c)]) {
                continue;
            }
            const Point q{s.frame.min.x + (static_cast<double>(c) + 0.5) * g,
                          s.frame.min.y + (static_cast<double>(r) + 0.5) * g};
            if (!hull_box.contains(q) || !point_in_convex(q, hull)) {
                continue;
            }
            if (index.nearest_distance(q) > threshold) {
                s.sites.push_back({q, SiteKind::Water, 0});
            }
        }
    }
    separate_duplicates(s.sites, 1e-9 * s.radius);
    return s;
}

std::vector<Ring> voronoi_cells(std::span<const Point> sites, const Rect& frame) {
    const std::size_t n = sites.size();
    std::vector<Ring> cells(n);
    if (n == 0) {
        return cells;
    }
    const double cell = std::sqrt(frame.area() / static_cast<double>(n)) * 1.5;
    const GridIndex index(sites, frame, cell);
    const Ring frame_ring = rect_ring(frame);

    std::vector<std::pair<double, std::uint32_t>> ring_sites;
    for (std::uint32_t i = 0; i < n; ++i) {
        const Point s = sites[i];
        Ring poly = frame_ring;
        const auto [c, r] = index.bucket_of(s);
        for (long ring = 0; ring <= index.max_ring() && !poly.empty(); ++ring) {
            ring_sites.clear();
            index.for_ring(c, r, ring, [&](std::uint32_t j) {
                if (j != i) {
                    ring_sites.emplace_back(squared_distance(s, sites[j]), j);
                }
            });
            std::sort(ring_sites.begin(), ring_sites.end());
            for (const auto& [d2, j] : ring_sites) {
                const Point other = sites[j];
                if (other == s) {
                    continue;
                }
                poly = clip_halfplane(poly, (s + other) * 0.5, other - s);
                if (poly.empty()) {
                    break;
                }
            }
            double reach = 0.0;
            for (const Point& v : poly) {
                reach = std::max(reach, distance(v, s));
            }
            // A site at distance D has its bisector D/2 away; nothing beyond
            // twice the cell's reach can cut it.
            if (2.0 * reach <= index.clearance(s, ring)) {
                break;
            }
        }
        cells[i] = std::move(poly);
    }
    return cells;
}

std::vector<Ring> voronoi_cells(std::span<const Site> sites, const Rect& frame) {
    std::vector<Point> pts;
    pts.reserve(sites.size());
    for (const Site& s : sites) {
        pts.push_back(s.pos);
    }
    return voronoi_cells(pts, frame);
}

MultiPolygon union_cells(std::span<const Ring> cells) {
    std::vector<Point> all;
    for (const Ring& r : cells) {
        all.insert(all.end(), r.begin(), r.end());
    }
    const Rect box = bounding_box(all);
    VertexPool pool(pool_eps(box));
    std::vector<IndexRing> indexed;
    indexed.reserve(cells.size());
    for (const Ring& r : cells) {
        indexed.push_back(index_ring(pool, r));
    }
    std::vector<const IndexRing*> group;
    for (const IndexRing& r : indexed) {
        if (!r.empty()) {
            group.push_back(&r);
        }
    }
    return union_indexed(pool, group, 1e-12 * std::max(box.area(), 1e-300));
}

PolygonMap merge_regions(std::span<const Ring> cells, std::span<const Site> sites,
                         std::span<const std::uint32_t> cluster_of_vertex, std::uint32_t cluster_count,
                         const Rect& frame) {
    PolygonMap out;
    out.frame = frame;
    const std::size_t vertex_count = cluster_of_vertex.size();
    out.vertex_regions.resize(vertex_count);
    out.countries.resize(cluster_count);

    VertexPool pool(pool_eps(frame));
    std::vector<IndexRing> indexed(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        out.cell_area += std::abs(signed_area(cells[i]));
        indexed[i] = index_ring(pool, cells[i]);
        if (sites[i].kind == SiteKind::Outer) {
            out.outer_area += std::abs(signed_area(cells[i]));
        }
    }

    std::vector<std::vector<const IndexRing*>> by_vertex(vertex_count);
    std::vector<std::vector<const IndexRing*>> by_country(cluster_count);
    std::vector<const IndexRing*> water;
    // Country of each cell, -1 for outskirts and water.
    std::vector<std::int64_t> country(cells.size(), -1);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (indexed[i].empty()) {
            continue;
        }
        switch (sites[i].kind) {
        case SiteKind::Vertex: {
            const VertexId v = sites[i].vertex;
            by_vertex.at(v).push_back(&indexed[i]);
            country[i] = cluster_of_vertex[v];
            by_country.at(cluster_of_vertex[v]).push_back(&indexed[i]);
            break;
        }
        case SiteKind::Water:
            water.push_back(&indexed[i]);
            break;
        case SiteKind::Outer:
            break;
        }
    }

    const double min_area = 1e-12 * frame.area();
    for (std::size_t v = 0; v < vertex_count; ++v) {
        out.vertex_regions[v] = union_indexed(pool, by_vertex[v], min_area);
    }
    for (std::size_t c = 0; c < cluster_count; ++c) {
        out.countries[c] = union_indexed(pool, by_country[c], min_area);
    }
    out.water = union_indexed(pool, water, min_area);

    // Each undirected Voronoi edge is shared by at most two cells.
    struct Sides {
        std::int64_t first = -2;
        std::int64_t second = -2;
    };
    std::unordered_map<std::uint64_t, Sides> sides;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const IndexRing& r = indexed[i];
        for (std::size_t k = 0; k < r.size(); ++k) {
            const std::uint32_t a = std::min(r[k], r[(k + 1) % r.size()]);
            const std::uint32_t b = std::max(r[k], r[(k + 1) % r.size()]);
            Sides& s = sides[edge_key(a, b)];
            (s.first == -2 ? s.first : s.second) = country[i];
        }
    }
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> borders;
    for (const auto& [key, s] : sides) {
        if (s.first < 0 || s.second < 0 || s.first == s.second) {
            continue;
        }
        const auto a = static_cast<std::uint32_t>(std::min(s.first, s.second));
        const auto b = static_cast<std::uint32_t>(std::max(s.first, s.second));
        borders[{a, b}] +=
            distance(pool.at(static_cast<std::uint32_t>(key >> 32)), pool.at(static_cast<std::uint32_t>(key)));
    }
    for (const auto& [pair, len] : borders) {
        out.adjacency.push_back({pair.first, pair.second, len});
    }
    return out;
}

MapBuild build_map(std::span<const LabelBox> boxes, std::span<const std::uint32_t> cluster_of_vertex,
                   std::uint32_t cluster_count, const MapParams& p) {
    MapBuild out;
    if (p.naive_corners) {
        out.sites = naive_sites(boxes);
    } else {
        out.sites = insert_lakes(generate_sites(boxes, p), p);
    }
    out.cells = voronoi_cells(std::span<const Site>(out.sites.sites), out.sites.frame);
    out.map = merge_regions(out.cells, out.sites.sites, cluster_of_vertex, cluster_count, out.sites.frame);
    return out;
}

}  // namespace graphmap
