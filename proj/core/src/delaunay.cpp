#include "graphmap/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace graphmap {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

struct Tri {
    std::uint32_t v[3];
    std::uint32_t nb[3];  // nb[i] lies across the edge opposite v[i]
    bool alive = true;
};

class Builder {
public:
    explicit Builder(std::span<const Point> pts) : pts_(pts.begin(), pts.end()) {
        const Rect box = bounding_box(pts);
        const double span = std::max({box.width(), box.height(), 1.0});
        const Point c = box.center();
        const double m = span * 1e3;
        super_ = static_cast<std::uint32_t>(pts_.size());
        pts_.push_back({c.x - 3 * m, c.y - 3 * m});
        pts_.push_back({c.x + 3 * m, c.y - 3 * m});
        pts_.push_back({c.x, c.y + 3 * m});
        tris_.push_back(Tri{{super_, super_ + 1, super_ + 2}, {kNone, kNone, kNone}});
    }

    bool insert(std::uint32_t p) {
        const std::uint32_t start = locate(pts_[p]);
        if (start == kNone) {
            return false;
        }
        for (std::uint32_t k = 0; k < 3; ++k) {
            if (pts_[tris_[start].v[k]] == pts_[p]) {
                return false;  // duplicate
            }
        }

        cavity_.clear();
        stack_.clear();
        stack_.push_back(start);
        tris_[start].alive = false;
        while (!stack_.empty()) {
            const std::uint32_t t = stack_.back();
            stack_.pop_back();
            cavity_.push_back(t);
            for (std::uint32_t nb : tris_[t].nb) {
                if (nb != kNone && tris_[nb].alive && in_circle(nb, pts_[p])) {
                    tris_[nb].alive = false;
                    stack_.push_back(nb);
                }
            }
        }

        // Re-triangulate the cavity boundary as a fan around p.
        by_start_.clear();
        by_end_.clear();
        std::vector<std::uint32_t> created;
        for (std::uint32_t t : cavity_) {
            for (int i = 0; i < 3; ++i) {
                const std::uint32_t nb = tris_[t].nb[i];
                if (nb != kNone && !tris_[nb].alive) {
                    continue;
                }
                const std::uint32_t a = tris_[t].v[(i + 1) % 3];
                const std::uint32_t b = tris_[t].v[(i + 2) % 3];
                const auto idx = static_cast<std::uint32_t>(tris_.size());
                tris_.push_back(Tri{{a, b, p}, {kNone, kNone, nb}});
                if (nb != kNone) {
                    for (auto& back : tris_[nb].nb) {
                        if (back == t) {
                            back = idx;
                        }
                    }
                }
                by_start_[a] = idx;
                by_end_[b] = idx;
                created.push_back(idx);
            }
        }
        for (std::uint32_t idx : created) {
            Tri& t = tris_[idx];
            // Edge (b, p) opposite a pairs with the fan triangle starting at b.
            t.nb[0] = by_start_.at(t.v[1]);
            // Edge (p, a) opposite b pairs with the fan triangle ending at a.
            t.nb[1] = by_end_.at(t.v[0]);
        }
        last_ = created.empty() ? last_ : created.back();
        return true;
    }

    Triangulation finish() const {
        Triangulation out;
        for (const Tri& t : tris_) {
            if (!t.alive || t.v[0] >= super_ || t.v[1] >= super_ || t.v[2] >= super_) {
                continue;
            }
            out.triangles.push_back({t.v[0], t.v[1], t.v[2]});
            for (int i = 0; i < 3; ++i) {
                std::uint32_t a = t.v[i];
                std::uint32_t b = t.v[(i + 1) % 3];
                if (a > b) {
                    std::swap(a, b);
                }
                out.edges.emplace_back(a, b);
            }
        }
        std::sort(out.edges.begin(), out.edges.end());
        out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
        return out;
    }

private:
    bool in_circle(std::uint32_t t, Point p) const {
        const Tri& tri = tris_[t];
        return incircle(pts_[tri.v[0]], pts_[tri.v[1]], pts_[tri.v[2]], p) > 0.0;
    }

    bool contains(std::uint32_t t, Point p) const {
        const Tri& tri = tris_[t];
        for (int i = 0; i < 3; ++i) {
            if (orient2d(pts_[tri.v[(i + 1) % 3]], pts_[tri.v[(i + 2) % 3]], p) < 0.0) {
                return false;
            }
        }
        return true;
    }

    std::uint32_t locate(Point p) const {
        std::uint32_t t = last_;
        if (!tris_[t].alive) {
            t = first_alive();
        }
        // Visibility walk; bounded to stay safe under round-off.
        const std::size_t limit = 4 * tris_.size() + 16;
        for (std::size_t steps = 0; steps < limit; ++steps) {
            const Tri& tri = tris_[t];
            std::uint32_t next = kNone;
            for (int i = 0; i < 3; ++i) {
                if (orient2d(pts_[tri.v[(i + 1) % 3]], pts_[tri.v[(i + 2) % 3]], p) < 0.0) {
                    next = tri.nb[i];
                    break;
                }
            }
            if (next == kNone) {
                return contains(t, p) ? t : scan(p);
            }
            t = next;
        }
        return scan(p);
    }

    std::uint32_t scan(Point p) const {
        for (std::uint32_t t = 0; t < tris_.size(); ++t) {
            if (tris_[t].alive && contains(t, p)) {
                return t;
            }
        }
        return kNone;
    }

    std::uint32_t first_alive() const {
        for (std::uint32_t t = static_cast<std::uint32_t>(tris_.size()); t-- > 0;) {
            if (tris_[t].alive) {
                return t;
            }
        }
        return 0;
    }

    std::vector<Point> pts_;
    std::vector<Tri> tris_;
    std::uint32_t super_ = 0;
    std::uint32_t last_ = 0;
    std::vector<std::uint32_t> cavity_;
    std::vector<std::uint32_t> stack_;
    std::unordered_map<std::uint32_t, std::uint32_t> by_start_;
    std::unordered_map<std::uint32_t, std::uint32_t> by_end_;
};

// Snake order over a coarse grid keeps consecutive insertions close, which
// keeps the point-location walks short.
std::vector<std::uint32_t> insertion_order(std::span<const Point> pts) {
    std::vector<std::uint32_t> order(pts.size());
    std::iota(order.begin(), order.end(), 0u);
    if (pts.empty()) {
        return order;
    }
    const Rect box = bounding_box(pts);
    const double cells = std::max(1.0, std::floor(std::sqrt(static_cast<double>(pts.size()) / 4.0)));
    const double w = std::max(box.width(), 1e-300) / cells;
    const double h = std::max(box.height(), 1e-300) / cells;
    const auto key = [&](std::uint32_t i) {
        const auto row = static_cast<long>(std::min(cells - 1, std::floor((pts[i].y - box.min.y) / h)));
        auto col = static_cast<long>(std::min(cells - 1, std::floor((pts[i].x - box.min.x) / w)));
        if (row % 2 == 1) {
            col = static_cast<long>(cells) - 1 - col;
        }
        return std::pair{row, col};
    };
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return key(a) < key(b);
    });
    return order;
}

bool all_collinear(std::span<const Point> pts) {
    std::size_t second = 1;
    while (second < pts.size() && pts[second] == pts[0]) {
        ++second;
    }
    for (std::size_t i = second + 1; i < pts.size(); ++i) {
        if (orient2d(pts[0], pts[second], pts[i]) != 0.0) {
            return false;
        }
    }
    return true;
}

}  // namespace

Triangulation delaunay(std::span<const Point> pts) {
    Triangulation out;
    if (pts.size() < 3 || all_collinear(pts)) {
        std::vector<std::uint32_t> order(pts.size());
        std::iota(order.begin(), order.end(), 0u);
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            return pts[a] != pts[b] ? pts[a] < pts[b] : a < b;
        });
        for (std::size_t i = 1; i < order.size(); ++i) {
            if (pts[order[i - 1]] == pts[order[i]]) {
                continue;
            }
            auto e = std::minmax(order[i - 1], order[i]);
            out.edges.emplace_back(e.first, e.second);
        }
        std::sort(out.edges.begin(), out.edges.end());
        return out;
    }
    Builder builder(pts);
    for (std::uint32_t idx : insertion_order(pts)) {
        builder.insert(idx);
    }
    return builder.finish();
}

}  // namespace graphmap
