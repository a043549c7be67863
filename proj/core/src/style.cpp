#include "graphmap/style.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <set>

#include "graphmap/error.hpp"

namespace graphmap {

namespace {

constexpr std::array<Rgb, 12> kSet3{{
    {0x8d, 0xd3, 0xc7},
    {0xff, 0xff, 0xb3},
    {0xbe, 0xba, 0xda},
    {0xfb, 0x80, 0x72},
    {0x80, 0xb1, 0xd3},
    {0xfd, 0xb4, 0x62},
    {0xb3, 0xde, 0x69},
    {0xfc, 0xcd, 0xe5},
    {0xd9, 0xd9, 0xd9},
    {0xbc, 0x80, 0xbd},
    {0xcc, 0xeb, 0xc5},
    {0xff, 0xed, 0x6f},
}};

std::uint8_t lerp_channel(std::uint8_t a, std::uint8_t b, double t) {
    return static_cast<std::uint8_t>(std::lround(a + (static_cast<double>(b) - a) * t));
}

}  // namespace

std::string to_hex(Rgb c) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
    return buf;
}

double rgb_distance(Rgb a, Rgb b) {
    const double dr = static_cast<double>(a.r) - b.r;
    const double dg = static_cast<double>(a.g) - b.g;
    const double db = static_cast<double>(a.b) - b.b;
    return std::sqrt(dr * dr + dg * dg + db * db);
}

Rgb blend(Rgb a, Rgb b) {
    return {static_cast<std::uint8_t>((a.r + b.r + 1) / 2), static_cast<std::uint8_t>((a.g + b.g + 1) / 2),
            static_cast<std::uint8_t>((a.b + b.b + 1) / 2)};
}

std::span<const Rgb> default_palette() { return kSet3; }

std::vector<Rgb> candidate_colors(std::span<const Rgb> palette) {
    std::vector<Rgb> out;
    const auto add = [&](Rgb c) {
        if (std::find(out.begin(), out.end(), c) == out.end()) {
            out.push_back(c);
        }
    };
    for (Rgb c : palette) {
        add(c);
    }
    for (std::size_t i = 0; i < palette.size(); ++i) {
        for (std::size_t j = i + 1; j < palette.size(); ++j) {
            add(blend(palette[i], palette[j]));
        }
    }
    return out;
}

StyleSheet assign_colors(std::span<const CountryAdjacency> adjacency, std::uint32_t count,
                         std::span<const double> areas, std::span<const Rgb> palette) {
    if (palette.size() < 2) {
        throw ValidationError("palette needs at least 2 base colors");
    }
    if (!areas.empty() && areas.size() != count) {
        throw ValidationError("need one area per country");
    }
    std::vector<std::vector<std::uint32_t>> nbrs(count);
    for (const CountryAdjacency& a : adjacency) {
        if (a.a >= count || a.b >= count) {
            throw ValidationError("adjacency references an unknown country");
        }
        if (a.a != a.b) {
            nbrs[a.a].push_back(a.b);
            nbrs[a.b].push_back(a.a);
        }
    }
    std::vector<std::uint32_t> order(count);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
        const double ax = areas.empty() ? 0.0 : areas[x];
        const double ay = areas.empty() ? 0.0 : areas[y];
        return ax != ay ? ax > ay : x < y;
    });

    const std::vector<Rgb> candidates = candidate_colors(palette);
    std::vector<std::size_t> uses(candidates.size(), 0);
    std::vector<std::optional<std::size_t>> chosen(count);
    for (std::uint32_t c : order) {
        std::size_t best = candidates.size();
        double best_gap = -1.0;
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            double gap = std::numeric_limits<double>::infinity();
            for (std::uint32_t nb : nbrs[c]) {
                if (chosen[nb]) {
                    gap = std::min(gap, rgb_distance(candidates[k], candidates[*chosen[nb]]));
                }
            }
            if (gap > best_gap || (gap == best_gap && uses[k] < uses[best])) {
                best = k;
                best_gap = gap;
            }
        }
        if (!(best_gap > 0.0)) {
            throw ValidationError("country " + std::to_string(c) + " has more neighbors than available colors");
        }
        chosen[c] = best;
        ++uses[best];
    }

    StyleSheet s;
    s.country.reserve(count);
    for (std::uint32_t c = 0; c < count; ++c) {
        s.country.push_back(candidates[*chosen[c]]);
    }
    return s;
}

Rgb heat_color(double t) {
    t = std::isnan(t) ? 0.0 : std::clamp(t, 0.0, 1.0);
    return {lerp_channel(kHeatLow.r, kHeatHigh.r, t), lerp_channel(kHeatLow.g, kHeatHigh.g, t),
            lerp_channel(kHeatLow.b, kHeatHigh.b, t)};
}

HeatScores normalize_scores(std::span<const double> raw) {
    if (raw.empty()) {
        throw ValidationError("no scores to normalize");
    }
    for (double v : raw) {
        if (!std::isfinite(v)) {
            throw ValidationError("score is not a finite number");
        }
    }
    HeatScores h;
    h.raw.assign(raw.begin(), raw.end());
    h.present.assign(raw.size(), true);
    const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
    const double range = *hi - *lo;
    h.normalized.reserve(raw.size());
    for (double v : raw) {
        h.normalized.push_back(range > 0.0 ? std::clamp((v - *lo) / range, 0.0, 1.0) : 0.5);
    }
    return h;
}

HeatScores heat_from_labels(const Graph& g, std::span<const std::pair<std::string, double>> scores,
                            std::size_t* unknown) {
    std::vector<double> given;
    std::vector<VertexId> ids;
    std::vector<bool> seen(g.num_vertices(), false);
    std::size_t skipped = 0;
    for (const auto& [label, value] : scores) {
        const auto v = g.find(label);
        if (!v) {
            ++skipped;
            continue;
        }
        if (seen[*v]) {
            throw ValidationError("duplicate score for '" + label + "'");
        }
        seen[*v] = true;
        ids.push_back(*v);
        given.push_back(value);
    }
    if (unknown) {
        *unknown = skipped;
    }
    if (ids.empty()) {
        throw ValidationError("no score matches a vertex of the map");
    }
    const HeatScores partial = normalize_scores(given);
    HeatScores h;
    h.raw.assign(g.num_vertices(), 0.0);
    h.normalized.assign(g.num_vertices(), 0.0);
    h.present.assign(g.num_vertices(), false);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        h.raw[ids[i]] = partial.raw[i];
        h.normalized[ids[i]] = partial.normalized[i];
        h.present[ids[i]] = true;
    }
    return h;
}

OverlaySpec build_overlay(std::span<const std::pair<VertexId, double>> watched,
                          std::optional<VertexId> recommended, std::span<const LabelBox> boxes,
                          const LabelParams& p) {
    OverlaySpec o;
    std::set<VertexId> ids;
    std::vector<double> durations;
    for (const auto& [v, d] : watched) {
        if (v >= boxes.size()) {
            throw ValidationError("watched vertex " + std::to_string(v) + " is not on the map");
        }
        if (!std::isfinite(d) || d < 0.0) {
            throw ValidationError("watched duration must be finite and non-negative");
        }
        if (!ids.insert(v).second) {
            throw ValidationError("vertex '" + boxes[v].text + "' is watched twice");
        }
        durations.push_back(d);
    }
    if (recommended) {
        if (*recommended >= boxes.size()) {
            throw ValidationError("recommended vertex " + std::to_string(*recommended) + " is not on the map");
        }
        if (ids.contains(*recommended)) {
            throw ValidationError("recommended item '" + boxes[*recommended].text + "' is already watched");
        }
    }
    const std::vector<double> fonts = scale_fonts(durations, p);
    for (std::size_t i = 0; i < watched.size(); ++i) {
        o.watched.push_back({watched[i].first, watched[i].second, fonts[i]});
    }
    o.recommended = recommended;
    return o;
}

}  // namespace graphmap
