#include "graphmap/geometry.hpp"

#include <algorithm>
#include <limits>

namespace graphmap {

double orient2d(Point a, Point b, Point c) {
    const double detleft = (a.x - c.x) * (b.y - c.y);
    const double detright = (a.y - c.y) * (b.x - c.x);
    const double det = detleft - detright;
    // Static filter from the standard floating-point error analysis; only
    // near-degenerate triples pay for the extended-precision recompute.
    const double bound = 3.3306690738754716e-16 * (std::abs(detleft) + std::abs(detright));
    if (std::abs(det) > bound) {
        return det;
    }
    using ld = long double;
    const ld l = (ld(a.x) - ld(c.x)) * (ld(b.y) - ld(c.y));
    const ld r = (ld(a.y) - ld(c.y)) * (ld(b.x) - ld(c.x));
    return static_cast<double>(l - r);
}

double incircle(Point a, Point b, Point c, Point d) {
    using ld = long double;
    const ld adx = ld(a.x) - ld(d.x), ady = ld(a.y) - ld(d.y);
    const ld bdx = ld(b.x) - ld(d.x), bdy = ld(b.y) - ld(d.y);
    const ld cdx = ld(c.x) - ld(d.x), cdy = ld(c.y) - ld(d.y);
    const ld alift = adx * adx + ady * ady;
    const ld blift = bdx * bdx + bdy * bdy;
    const ld clift = cdx * cdx + cdy * cdy;
    const ld det = alift * (bdx * cdy - bdy * cdx) + blift * (cdx * ady - cdy * adx) +
                   clift * (adx * bdy - ady * bdx);
    return static_cast<double>(det);
}

Point circumcenter(Point a, Point b, Point c) {
    const Point ab = b - a;
    const Point ac = c - a;
    const double d = 2.0 * cross(ab, ac);
    const double ab2 = dot(ab, ab);
    const double ac2 = dot(ac, ac);
    return {a.x + (ac.y * ab2 - ab.y * ac2) / d, a.y + (ab.x * ac2 - ac.x * ab2) / d};
}

Rect bounding_box(std::span<const Point> pts) {
    if (pts.empty()) {
        return {};
    }
    Rect r{pts[0], pts[0]};
    for (const Point& p : pts) {
        r.min.x = std::min(r.min.x, p.x);
        r.min.y = std::min(r.min.y, p.y);
        r.max.x = std::max(r.max.x, p.x);
        r.max.y = std::max(r.max.y, p.y);
    }
    return r;
}

double signed_area(std::span<const Point> ring) {
    const std::size_t n = ring.size();
    if (n < 3) {
        return 0.0;
    }
    // Shoelace relative to the first vertex to limit cancellation.
    const Point o = ring[0];
    double sum = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        sum += cross(ring[i] - o, ring[i + 1] - o);
    }
    return 0.5 * sum;
}

double area(const Polygon& poly) {
    double a = std::abs(signed_area(poly.outer));
    for (const Ring& h : poly.holes) {
        a -= std::abs(signed_area(h));
    }
    return a;
}

double area(const MultiPolygon& mp) {
    double a = 0.0;
    for (const Polygon& p : mp) {
        a += area(p);
    }
    return a;
}

double perimeter(std::span<const Point> ring) {
    double len = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        len += distance(ring[i], ring[(i + 1) % ring.size()]);
    }
    return len;
}

bool point_in_ring(Point p, std::span<const Point> ring) {
    bool inside = false;
    const std::size_t n = ring.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point a = ring[i];
        const Point b = ring[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x) {
                inside = !inside;
            }
        }
    }
    return inside;
}

bool point_in_polygon(Point p, const Polygon& poly) {
    if (!point_in_ring(p, poly.outer)) {
        return false;
    }
    return std::none_of(poly.holes.begin(), poly.holes.end(),
                        [&](const Ring& h) { return point_in_ring(p, h); });
}

bool point_in_multipolygon(Point p, const MultiPolygon& mp) {
    return std::any_of(mp.begin(), mp.end(),
                       [&](const Polygon& poly) { return point_in_polygon(p, poly); });
}

bool point_in_convex(Point p, std::span<const Point> ring, double tol) {
    const std::size_t n = ring.size();
    if (n < 3) {
        return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = ring[i];
        const Point b = ring[(i + 1) % n];
        const Point e = b - a;
        const double len = norm(e);
        if (len == 0.0) {
            continue;
        }
        // Signed distance of p to the edge line, positive on the inner side.
        if (cross(e, p - a) / len < -tol) {
            return false;
        }
    }
    return true;
}

Ring rect_ring(const Rect& r) {
    return {r.min, {r.max.x, r.min.y}, r.max, {r.min.x, r.max.y}};
}

Ring clip_halfplane(std::span<const Point> poly, Point origin, Point normal) {
    Ring out;
    const std::size_t n = poly.size();
    if (n == 0) {
        return out;
    }
    out.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = poly[i];
        const Point b = poly[(i + 1) % n];
        const double fa = dot(a - origin, normal);
        const double fb = dot(b - origin, normal);
        if (fa <= 0.0) {
            out.push_back(a);
        }
        if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
            const double t = fa / (fa - fb);
            out.push_back(a + (b - a) * t);
        }
    }
    if (out.size() < 3) {
        out.clear();
    }
    return out;
}

Ring clip_to_convex(std::span<const Point> subject, std::span<const Point> window) {
    Ring out(subject.begin(), subject.end());
    const std::size_t n = window.size();
    for (std::size_t i = 0; i < n && !out.empty(); ++i) {
        const Point a = window[i];
        const Point b = window[(i + 1) % n];
        const Point e = b - a;
        // Inside is the left side of a counter-clockwise window edge.
        const Point outward{e.y, -e.x};
        Ring next;
        next.reserve(out.size() + 1);
        const std::size_t m = out.size();
        for (std::size_t j = 0; j < m; ++j) {
            const Point p = out[j];
            const Point q = out[(j + 1) % m];
            const double fp = dot(p - a, outward);
            const double fq = dot(q - a, outward);
            if (fp <= 0.0) {
                next.push_back(p);
            }
            if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
                next.push_back(p + (q - p) * (fp / (fp - fq)));
            }
        }
        out = std::move(next);
    }
    return out;
}

void canonicalize_ring(Ring& ring, bool ccw) {
    if (ring.size() < 2) {
        return;
    }
    const bool is_ccw = signed_area(ring) > 0.0;
    if (is_ccw != ccw) {
        std::reverse(ring.begin(), ring.end());
    }
    const auto smallest = std::min_element(ring.begin(), ring.end());
    std::rotate(ring.begin(), smallest, ring.end());
}

}  // namespace graphmap
