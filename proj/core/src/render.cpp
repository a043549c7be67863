#include "graphmap/render.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include <nlohmann/json.hpp>

namespace graphmap {

namespace {

using nlohmann::json;

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

void append_ring(std::string& d, const Ring& ring) {
    for (std::size_t i = 0; i < ring.size(); ++i) {
        d += i == 0 ? "M" : "L";
        d += format_coord(ring[i].x);
        d += ' ';
        d += format_coord(-ring[i].y);
    }
    d += 'Z';
}

std::string polygon_path(const Polygon& poly) {
    std::string d;
    append_ring(d, poly.outer);
    for (const Ring& h : poly.holes) {
        append_ring(d, h);
    }
    return d;
}

void emit_polygons(std::string& out, const MultiPolygon& mp, const std::string& attrs) {
    for (const Polygon& poly : mp) {
        out += "<path d=\"" + polygon_path(poly) + "\" " + attrs + "/>\n";
    }
}

void emit_text(std::string& out, const LabelBox& b, double font, Rgb fill, const std::string& cls) {
    out += "<text";
    if (!cls.empty()) {
        out += " class=\"" + cls + "\"";
    }
    out += " x=\"" + format_coord(b.center.x) + "\" y=\"" + format_coord(-b.center.y) + "\" font-size=\"" +
           format_coord(font) + "\" fill=\"" + to_hex(fill) + "\">" + xml_escape(b.text) + "</text>\n";
}

double round3(double v) {
    const double r = std::round(v * 1000.0) / 1000.0;
    return r == 0.0 ? 0.0 : r;
}

json ring_json(const Ring& ring) {
    json out = json::array();
    for (const Point& p : ring) {
        out.push_back({round3(p.x), round3(p.y)});
    }
    return out;
}

json rings_json(const MultiPolygon& mp) {
    json out = json::array();
    for (const Polygon& poly : mp) {
        out.push_back(ring_json(poly.outer));
        for (const Ring& h : poly.holes) {
            out.push_back(ring_json(h));
        }
    }
    return out;
}

json rgb_json(Rgb c) { return {c.r, c.g, c.b}; }

}  // namespace

std::string format_coord(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    if (s == "-0.000") {
        s = "0.000";
    }
    return s;
}

Rect overlay_frame(const LabelBox& box, double font) {
    const LabelBox sized = make_box(box.vertex, box.text, font);
    const double pad = 0.15 * font;
    const Point half{sized.half_width + pad, sized.half_height + pad};
    return {box.center - half, box.center + half};
}

std::string emit_svg(const PolygonMap& map, std::span<const LabelBox> boxes, const StyleSheet& style,
                     const HeatScores* heat, const OverlaySpec* overlay) {
    const Rect& f = map.frame;
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + format_coord(f.min.x) + " " +
           format_coord(-f.max.y) + " " + format_coord(f.width()) + " " + format_coord(f.height()) +
           "\" width=\"" + format_coord(f.width()) + "\" height=\"" + format_coord(f.height()) + "\">\n";
    out += "<rect id=\"frame\" x=\"" + format_coord(f.min.x) + "\" y=\"" + format_coord(-f.max.y) + "\" width=\"" +
           format_coord(f.width()) + "\" height=\"" + format_coord(f.height()) + "\" fill=\"" + to_hex(style.sea) +
           "\"/>\n";

    bool any_country = false;
    for (const MultiPolygon& mp : map.countries) {
        any_country = any_country || !mp.empty();
    }
    if (any_country) {
        out += "<g id=\"countries\" stroke=\"none\" fill-rule=\"evenodd\">\n";
        for (std::size_t c = 0; c < map.countries.size(); ++c) {
            const Rgb fill = c < style.country.size() ? style.country[c] : Rgb{0xcc, 0xcc, 0xcc};
            emit_polygons(out, map.countries[c], "class=\"country c" + std::to_string(c) + "\" fill=\"" +
                                                     to_hex(fill) + "\"");
        }
        out += "</g>\n";
    }

    if (heat != nullptr && !map.vertex_regions.empty()) {
        out += "<g id=\"heat\" stroke=\"none\" fill-rule=\"evenodd\">\n";
        for (std::size_t v = 0; v < map.vertex_regions.size(); ++v) {
            const double t = v < heat->normalized.size() ? heat->normalized[v] : 0.0;
            emit_polygons(out, map.vertex_regions[v],
                          "class=\"heat v" + std::to_string(v) + "\" fill=\"" + to_hex(heat_color(t)) + "\"");
        }
        out += "</g>\n";
    }

    if (any_country) {
        char width[32];
        std::snprintf(width, sizeof width, "%.3f", style.boundary_width);
        out += "<g id=\"boundaries\" fill=\"none\" stroke=\"" + to_hex(style.boundary) + "\" stroke-width=\"" +
               width + "\" stroke-linejoin=\"round\">\n";
        for (const MultiPolygon& mp : map.countries) {
            emit_polygons(out, mp, "class=\"boundary\"");
        }
        out += "</g>\n";
    }

    if (!map.water.empty()) {
        out += "<g id=\"lakes\" fill=\"" + to_hex(style.water) + "\" stroke=\"" + to_hex(style.boundary) +
               "\" stroke-width=\"0.500\" fill-rule=\"evenodd\">\n";
        emit_polygons(out, map.water, "class=\"lake\"");
        out += "</g>\n";
    }

    std::set<VertexId> framed;
    if (overlay != nullptr) {
        for (const WatchedItem& w : overlay->watched) {
            framed.insert(w.vertex);
        }
        if (overlay->recommended) {
            framed.insert(*overlay->recommended);
        }
    }
    if (!boxes.empty()) {
        out += "<g id=\"labels\" font-family=\"" + xml_escape(style.font_family) +
               "\" text-anchor=\"middle\" dominant-baseline=\"central\">\n";
        for (const LabelBox& b : boxes) {
            if (!framed.contains(b.vertex)) {
                emit_text(out, b, b.font, style.label, "");
            }
        }
        out += "</g>\n";
    }

    if (!framed.empty()) {
        out += "<g id=\"overlay\" font-family=\"" + xml_escape(style.font_family) +
               "\" text-anchor=\"middle\" dominant-baseline=\"central\">\n";
        const auto frame_rect = [&](const Rect& r, const std::string& cls, const std::string& fill) {
            out += "<rect class=\"" + cls + "\" x=\"" + format_coord(r.min.x) + "\" y=\"" + format_coord(-r.max.y) +
                   "\" width=\"" + format_coord(r.width()) + "\" height=\"" + format_coord(r.height()) +
                   "\" fill=\"" + fill + "\" stroke=\"#000000\" stroke-width=\"0.750\"/>\n";
        };
        for (const WatchedItem& w : overlay->watched) {
            const LabelBox& b = boxes[w.vertex];
            frame_rect(overlay_frame(b, w.font), "frame-watched", "#fff8dc");
            emit_text(out, b, w.font, style.label, "watched");
        }
        if (overlay->recommended) {
            const LabelBox& b = boxes[*overlay->recommended];
            frame_rect(overlay_frame(b, b.font), "frame-recommended", "#000000");
            emit_text(out, b, b.font, Rgb{0xff, 0xff, 0xff}, "recommended");
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string export_viewer_json(const PolygonMap& map, std::span<const LabelBox> boxes,
                               const ClusterAssignment& clusters, const StyleSheet& style, const Graph& g,
                               const HeatScores* heat, const OverlaySpec* overlay, const ViewerMetadata& meta) {
    json doc;
    doc["schema"] = kViewerSchemaVersion;
    doc["frame"] = {round3(map.frame.min.x), round3(map.frame.min.y), round3(map.frame.max.x),
                    round3(map.frame.max.y)};

    json vertices = json::array();
    for (const LabelBox& b : boxes) {
        json v;
        v["id"] = b.vertex;
        v["label"] = b.text;
        v["x"] = round3(b.center.x);
        v["y"] = round3(b.center.y);
        v["cluster"] = b.vertex < clusters.cluster.size() ? clusters.cluster[b.vertex] : 0;
        v["fontSize"] = round3(b.font);
        if (heat != nullptr && b.vertex < heat->normalized.size()) {
            v["score"] = heat->normalized[b.vertex];
        } else {
            v["score"] = nullptr;
        }
        vertices.push_back(std::move(v));
    }
    doc["vertices"] = std::move(vertices);

    json countries = json::array();
    for (std::size_t c = 0; c < map.countries.size(); ++c) {
        json entry;
        entry["cluster"] = c;
        entry["color"] = c < style.country.size() ? to_hex(style.country[c]) : "#cccccc";
        entry["rings"] = rings_json(map.countries[c]);
        countries.push_back(std::move(entry));
    }
    doc["countries"] = std::move(countries);
    doc["water"] = rings_json(map.water);

    json edges = json::array();
    for (const Edge& e : g.edges()) {
        edges.push_back({{"u", e.u}, {"v", e.v}, {"w", e.w}});
    }
    doc["edges"] = std::move(edges);

    json adjacency = json::array();
    for (const CountryAdjacency& a : map.adjacency) {
        adjacency.push_back({{"a", a.a}, {"b", a.b}, {"border", round3(a.border)}});
    }
    doc["adjacency"] = std::move(adjacency);

    json ov;
    json watched = json::array();
    json recommended = nullptr;
    if (overlay != nullptr) {
        for (const WatchedItem& w : overlay->watched) {
            watched.push_back({{"id", w.vertex}, {"duration", w.duration}, {"fontSize", round3(w.font)}});
        }
        if (overlay->recommended) {
            recommended = *overlay->recommended;
        }
    }
    ov["watched"] = std::move(watched);
    ov["recommended"] = std::move(recommended);
    doc["overlay"] = std::move(ov);

    json metadata;
    metadata["seed"] = meta.seed;
    metadata["modularity"] = clusters.modularity;
    metadata["heat"] = {{"low", rgb_json(kHeatLow)}, {"high", rgb_json(kHeatHigh)}};
    metadata["colors"] = {{"sea", to_hex(style.sea)}, {"water", to_hex(style.water)},
                          {"boundary", to_hex(style.boundary)}, {"label", to_hex(style.label)}};
    json params = json::object();
    for (const auto& [k, v] : meta.numbers) {
        params[k] = v;
    }
    for (const auto& [k, v] : meta.strings) {
        params[k] = v;
    }
    metadata["params"] = std::move(params);
    doc["metadata"] = std::move(metadata);
    return doc.dump(1);
}

}  // namespace graphmap
