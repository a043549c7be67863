#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace graphmap {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
    friend Point operator*(double s, Point a) { return {a.x * s, a.y * s}; }
    friend bool operator==(Point a, Point b) = default;
    friend auto operator<=>(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline double squared_distance(Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// Twice the signed area of triangle abc; positive when counter-clockwise.
double orient2d(Point a, Point b, Point c);

// Positive when d lies strictly inside the circumcircle of the
// counter-clockwise triangle abc.
double incircle(Point a, Point b, Point c, Point d);

Point circumcenter(Point a, Point b, Point c);

struct Rect {
    Point min;
    Point max;

    double width() const { return max.x - min.x; }
    double height() const { return max.y - min.y; }
    double area() const { return width() * height(); }
    Point center() const { return {(min.x + max.x) / 2, (min.y + max.y) / 2}; }
    bool contains(Point p) const {
        return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
    }
};

Rect bounding_box(std::span<const Point> pts);

// A closed ring; the closing edge back to front() is implicit.
using Ring = std::vector<Point>;

struct Polygon {
    Ring outer;               // counter-clockwise
    std::vector<Ring> holes;  // clockwise
};

using MultiPolygon = std::vector<Polygon>;

double signed_area(std::span<const Point> ring);
double area(const Polygon& poly);
double area(const MultiPolygon& mp);
double perimeter(std::span<const Point> ring);

// Even-odd point-in-ring test. Points exactly on the boundary may go either
// way.
bool point_in_ring(Point p, std::span<const Point> ring);
bool point_in_polygon(Point p, const Polygon& poly);
bool point_in_multipolygon(Point p, const MultiPolygon& mp);

// Inclusive containment in a convex counter-clockwise ring, with an absolute
// tolerance on the edge-side test.
bool point_in_convex(Point p, std::span<const Point> ring, double tol = 0.0);

Ring rect_ring(const Rect& r);

// Keeps the part of a convex counter-clockwise polygon where
// dot(p - origin, normal) <= 0.
Ring clip_halfplane(std::span<const Point> poly, Point origin, Point normal);

// Sutherland-Hodgman clip of an arbitrary ring against a convex
// counter-clockwise window. The signed area of the result equals the signed
// area of the intersection even when the output has degenerate bridges.
Ring clip_to_convex(std::span<const Point> subject, std::span<const Point> window);

// Rotates to start at the lexicographically smallest vertex and reverses if
// the orientation does not match `ccw`.
void canonicalize_ring(Ring& ring, bool ccw);

}  // namespace graphmap
