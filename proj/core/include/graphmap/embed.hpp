#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "graphmap/geometry.hpp"
#include "graphmap/graph.hpp"

namespace graphmap {

struct LayoutParams {
    double K = 1.0;  // natural edge length
    double C = 0.2;  // repulsion strength
    int max_iterations = 500;
    // Stop once the mean per-vertex movement in a sweep drops below
    // tolerance * K (force layout) or the relative stress change drops below
    // tolerance (stress layout).
    double tolerance = 1e-3;
    double initial_step = 0.0;  // <= 0 selects K
    double cooling = 0.9;
    std::uint64_t seed = 1;
    std::size_t multilevel_threshold = 500;
    std::size_t barnes_hut_threshold = 2000;
    double barnes_hut_theta = 0.7;
};

// Throws ValidationError when a field is out of range.
void validate(const LayoutParams& p);

struct Layout {
    std::vector<Point> positions;
    double K = 1.0;
    // Final value of the objective: spring-electrical potential for
    // force_layout, weighted stress for stress_layout.
    double energy = 0.0;
    // Per sweep: squared force norm summed over vertices for force layouts
    // (finest level only on the multilevel path), stress for stress layouts.
    std::vector<double> history;
    int iterations = 0;
};

// Deterministic pseudo-random placement in a disk of radius K * sqrt(n).
std::vector<Point> initial_placement(std::size_t n, const LayoutParams& p);

// Potential whose negative gradient is the force model: attraction
// (w / w_max) * d^2 / K along edges, repulsion C * K^2 / d between all pairs.
double spring_electrical_energy(const Graph& g, std::span<const Point> pos, const LayoutParams& p);

// Spring-electrical layout with adaptive step length. Multilevel above
// p.multilevel_threshold vertices, Barnes-Hut repulsion above
// p.barnes_hut_threshold.
Layout force_layout(const Graph& g, const LayoutParams& p);

// Same model from the given start positions, single level.
Layout force_layout_from(const Graph& g, std::vector<Point> start, const LayoutParams& p);

// Weighted stress sum_{i<j} d_ij^-2 (|x_i - x_j| - d_ij)^2.
double layout_stress(std::span<const Point> pos, const std::vector<std::vector<double>>& dist);

// Shortest-path distances with edge length K * w_max / w.
std::vector<std::vector<double>> graph_distances(const Graph& g, double K);

// Stress majorization over graph distances, one component at a time;
// components are placed side by side 2K apart.
Layout stress_layout(const Graph& g, const LayoutParams& p);

// Centroid to the origin and the longer bounding-box side to `span`.
Layout center_and_scale(Layout l, double span = 1000.0);

// `id x y` per line.
void write_layout(std::ostream& out, const Layout& l);

}  // namespace graphmap
