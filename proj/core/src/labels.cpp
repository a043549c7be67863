#include "graphmap/labels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "graphmap/delaunay.hpp"
#include "graphmap/error.hpp"

namespace graphmap {

namespace {

constexpr double kGoldenAngle = 2.39996322972865332;

// Expansion factor that just separates boxes i and j along the cheaper axis.
double separation_factor(Point ci, const LabelBox& bi, Point cj, const LabelBox& bj) {
    const double dx = std::abs(ci.x - cj.x);
    const double dy = std::abs(ci.y - cj.y);
    const double sx = bi.half_width + bj.half_width;
    const double sy = bi.half_height + bj.half_height;
    const double rx = dx > 0.0 ? sx / dx : std::numeric_limits<double>::infinity();
    const double ry = dy > 0.0 ? sy / dy : std::numeric_limits<double>::infinity();
    return std::min(rx, ry);
}

void perturb_coincident(std::vector<Point>& x, double radius) {
    std::map<Point, std::uint32_t> seen;
    for (std::uint32_t i = 0; i < x.size(); ++i) {
        auto [it, inserted] = seen.emplace(x[i], i);
        if (inserted) {
            continue;
        }
        const double a = kGoldenAngle * static_cast<double>(i);
        Point moved = x[i] + Point{std::cos(a), std::sin(a)} * radius;
        while (seen.contains(moved)) {
            moved = moved + Point{std::cos(a), std::sin(a)} * radius;
        }
        x[i] = moved;
        seen.emplace(moved, i);
    }
}

// One round of proximity stress: targets on Delaunay edges stretch
// overlapping neighbors by their separation factor. Returns false when no
// Delaunay neighbors overlap.
bool proximity_round(std::vector<Point>& x, std::span<const LabelBox> boxes, const OverlapParams& p,
                     bool apply) {
    const Triangulation tri = delaunay(x);
    struct Target {
        std::uint32_t j;
        double d;
    };
    std::vector<std::vector<Target>> adj(x.size());
    bool any = false;
    for (const auto& [i, j] : tri.edges) {
        const double len = distance(x[i], x[j]);
        double t = 1.0;
        if (boxes_overlap(x[i], boxes[i], x[j], boxes[j])) {
            any = true;
            t = std::min(p.max_expansion, 1.01 * separation_factor(x[i], boxes[i], x[j], boxes[j]));
        }
        adj[i].push_back({j, t * len});
        adj[j].push_back({i, t * len});
    }
    if (!any || !apply) {
        return any;
    }
    for (int sweep = 0; sweep < p.stress_sweeps; ++sweep) {
        double moved = 0.0;
        double scale = 0.0;
        for (std::uint32_t i = 0; i < x.size(); ++i) {
            Point num;
            double den = 0.0;
            for (const Target& t : adj[i]) {
                if (t.d <= 0.0) {
                    continue;
                }
                const double w = 1.0 / (t.d * t.d);
                const Point diff = x[i] - x[t.j];
                const double len = norm(diff);
                const Point dir = len > 0.0 ? diff * (1.0 / len) : Point{1.0, 0.0};
                num = num + (x[t.j] + dir * t.d) * w;
                den += w;
                scale = std::max(scale, t.d);
            }
            if (den > 0.0) {
                const Point next = num * (1.0 / den);
                moved = std::max(moved, distance(next, x[i]));
                x[i] = next;
            }
        }
        if (moved <= 1e-6 * scale) {
            break;
        }
    }
    return true;
}

bool residual_pass(std::vector<Point>& x, std::span<const LabelBox> boxes) {
    const auto pairs = overlapping_pairs(x, boxes);
    if (pairs.empty()) {
        return false;
    }
    for (const auto& [i, j] : pairs) {
        if (!boxes_overlap(x[i], boxes[i], x[j], boxes[j])) {
            continue;  // already fixed earlier in this pass
        }
        const double ox = boxes[i].half_width + boxes[j].half_width - std::abs(x[i].x - x[j].x);
        const double oy = boxes[i].half_height + boxes[j].half_height - std::abs(x[i].y - x[j].y);
        if (ox <= oy) {
            const double s = x[i].x < x[j].x || (x[i].x == x[j].x && i < j) ? -1.0 : 1.0;
            const double push = 0.5 * ox * (1.0 + 1e-6) + 1e-9;
            x[i].x += s * push;
            x[j].x -= s * push;
        } else {
            const double s = x[i].y < x[j].y || (x[i].y == x[j].y && i < j) ? -1.0 : 1.0;
            const double push = 0.5 * oy * (1.0 + 1e-6) + 1e-9;
            x[i].y += s * push;
            x[j].y -= s * push;
        }
    }
    return true;
}

// Uniform scaling about the centroid until nothing overlaps. Scaling by the
// largest pairwise separation factor separates every pair at once; the loop
// only absorbs round-off.
void scale_apart(std::vector<Point>& x, std::span<const LabelBox> boxes) {
    Point c;
    for (const Point& p : x) {
        c = c + p;
    }
    c = c * (1.0 / static_cast<double>(x.size()));
    for (int guard = 0; guard < 64; ++guard) {
        const auto pairs = overlapping_pairs(x, boxes);
        if (pairs.empty()) {
            return;
        }
        double s = 1.0;
        for (const auto& [i, j] : pairs) {
            s = std::max(s, separation_factor(x[i], boxes[i], x[j], boxes[j]));
        }
        s = std::isfinite(s) ? s * (1.0 + 1e-9) + 1e-12 : 2.0;
        for (Point& p : x) {
            p = c + (p - c) * s;
        }
    }
}

}  // namespace

std::size_t glyph_count(std::string_view text) {
    return static_cast<std::size_t>(std::count_if(text.begin(), text.end(), [](char ch) {
        return (static_cast<unsigned char>(ch) & 0xC0) != 0x80;
    }));
}

std::vector<double> scale_fonts(std::span<const double> values, const LabelParams& p) {
    if (!(p.font_min > 0.0) || !(p.font_max >= p.font_min)) {
        throw ValidationError("font sizes need 0 < f_min <= f_max");
    }
    if (!(p.exponent > 0.0)) {
        throw ValidationError("font exponent must be positive");
    }
    std::vector<double> fonts(values.size(), p.font_max);
    if (values.empty()) {
        return fonts;
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double range = *hi - *lo;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double t = range > 0.0 ? (values[i] - *lo) / range : 1.0;
        fonts[i] = std::clamp(p.font_min + (p.font_max - p.font_min) * std::pow(t, p.exponent), p.font_min,
                              p.font_max);
    }
    return fonts;
}

LabelBox make_box(VertexId v, std::string text, double font) {
    LabelBox b;
    b.vertex = v;
    b.font = font;
    b.half_height = 0.6 * font;
    b.half_width = std::max(0.3 * font * static_cast<double>(glyph_count(text)), b.half_height);
    b.text = std::move(text);
    return b;
}

std::vector<LabelBox> size_labels(const Graph& g, const LabelParams& p) {
    std::vector<double> weights;
    weights.reserve(g.num_vertices());
    for (const Vertex& v : g.vertices()) {
        weights.push_back(v.weight);
    }
    const auto fonts = scale_fonts(weights, p);
    std::vector<LabelBox> boxes;
    boxes.reserve(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        boxes.push_back(make_box(v, g.vertex(v).label, fonts[v]));
    }
    return boxes;
}

void place_labels(std::span<LabelBox> boxes, const Layout& l) {
    for (LabelBox& b : boxes) {
        b.center = l.positions.at(b.vertex);
    }
}

bool boxes_overlap(Point ca, const LabelBox& a, Point cb, const LabelBox& b) {
    return std::abs(ca.x - cb.x) < a.half_width + b.half_width &&
           std::abs(ca.y - cb.y) < a.half_height + b.half_height;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> overlapping_pairs(std::span<const Point> centers,
                                                                        std::span<const LabelBox> boxes) {
    const std::size_t n = centers.size();
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        const double la = centers[a].x - boxes[a].half_width;
        const double lb = centers[b].x - boxes[b].half_width;
        return la != lb ? la < lb : a < b;
    });
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::size_t s = 0; s < n; ++s) {
        const std::uint32_t i = order[s];
        const double right = centers[i].x + boxes[i].half_width;
        for (std::size_t t = s + 1; t < n; ++t) {
            const std::uint32_t j = order[t];
            if (centers[j].x - boxes[j].half_width >= right) {
                break;
            }
            if (boxes_overlap(centers[i], boxes[i], centers[j], boxes[j])) {
                out.emplace_back(std::min(i, j), std::max(i, j));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

OverlapResult remove_overlaps(const Layout& l, std::span<const LabelBox> boxes, const OverlapParams& p) {
    if (boxes.size() != l.positions.size()) {
        throw ValidationError("need exactly one label box per layout position");
    }
    OverlapResult out;
    out.layout = l;
    std::vector<Point>& x = out.layout.positions;
    if (x.size() < 2 || overlapping_pairs(x, boxes).empty()) {
        return out;
    }
    out.changed = true;

    perturb_coincident(x, 1e-3 * (l.K > 0.0 ? l.K : 1.0));

    bool clean = false;
    for (int it = 0;; ++it) {
        if (!proximity_round(x, boxes, p, false)) {
            clean = true;
            break;
        }
        if (it >= p.max_iterations) {
            break;
        }
        proximity_round(x, boxes, p, true);
        out.iterations = it + 1;
    }

    if (clean) {
        for (int pass = 0; pass < p.residual_passes; ++pass) {
            if (!residual_pass(x, boxes)) {
                break;
            }
        }
    }
    if (!overlapping_pairs(x, boxes).empty()) {
        out.used_fallback = true;
        scale_apart(x, boxes);
    }
    return out;
}

}  // namespace graphmap
