#include "graphmap/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "graphmap/error.hpp"
#include "graphmap/io.hpp"
#include "graphmap/render.hpp"

namespace graphmap {

namespace {

template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const InputError& e) {
        throw StageError(name, e.what(), true);
    } catch (const std::exception& e) {
        throw StageError(name, e.what(), false);
    }
}

const char* kind_name(InputKind k) {
    switch (k) {
    case InputKind::EdgeList: return "edges";
    case InputKind::Similarity: return "similarity";
    case InputKind::Implicit: return "implicit";
    }
    return "?";
}

ViewerMetadata metadata(const PipelineConfig& cfg, std::size_t k) {
    ViewerMetadata m;
    m.seed = cfg.seed;
    m.strings["input_kind"] = kind_name(cfg.kind);
    m.strings["layout"] = cfg.layout == LayoutMethod::Force ? "force" : "stress";
    m.strings["cluster"] = cfg.cluster == ClusterMethod::Modularity ? "modularity" : "kmeans";
    m.numbers["top_k"] = static_cast<double>(k);
    m.numbers["min_size"] = static_cast<double>(cfg.min_size);
    m.numbers["K"] = cfg.layout_params.K;
    m.numbers["C"] = cfg.layout_params.C;
    m.numbers["font_min"] = cfg.labels.font_min;
    m.numbers["font_max"] = cfg.labels.font_max;
    m.numbers["font_exponent"] = cfg.labels.exponent;
    m.numbers["jitter"] = cfg.map.jitter;
    m.numbers["outer_inner"] = cfg.map.outer_inner;
    m.numbers["outer_outer"] = cfg.map.outer_outer;
    m.numbers["outer_count_factor"] = cfg.map.outer_count_factor;
    m.numbers["lakes"] = cfg.map.lakes ? 1.0 : 0.0;
    m.numbers["lake_theta"] = cfg.map.lake_theta;
    m.numbers["naive_corners"] = cfg.map.naive_corners ? 1.0 : 0.0;
    if (cfg.cluster == ClusterMethod::KMeans) {
        m.numbers["kmeans_k"] = static_cast<double>(cfg.kmeans_k);
    }
    return m;
}

// Collects output files and writes them together, removing what was written
// if any write fails.
class OutputSet {
public:
    void add(const std::filesystem::path& path, std::string content) {
        files_.emplace_back(path, std::move(content));
    }

    void write() {
        std::vector<std::filesystem::path> written;
        for (const auto& [path, content] : files_) {
            std::ofstream out(path, std::ios::binary);
            if (out) {
                out.write(content.data(), static_cast<std::streamsize>(content.size()));
            }
            if (out) {
                written.push_back(path);
                continue;
            }
            std::error_code ec;
            std::filesystem::remove(path, ec);
            for (const auto& p : written) {
                std::filesystem::remove(p, ec);
            }
            throw InputError("cannot write output file '" + path.string() + "'");
        }
    }

private:
    std::vector<std::pair<std::filesystem::path, std::string>> files_;
};

}  // namespace

std::size_t PipelineResult::country_count() const {
    std::size_t n = 0;
    for (const MultiPolygon& c : map.map.countries) {
        n += c.empty() ? 0 : 1;
    }
    return n;
}

std::string PipelineResult::summary() const {
    char buf[256];
    std::snprintf(buf, sizeof buf, "n=%zu m=%zu clusters=%u Q=%.12f countries=%zu time=%.3fs", graph.num_vertices(),
                  graph.num_edges(), clusters.count, clusters.modularity, country_count(), seconds);
    std::string s = buf;
    if (heat) {
        s += " mode=heat";
        if (unknown_scores > 0) {
            s += " unknown_scores=" + std::to_string(unknown_scores);
        }
    }
    if (overlay) {
        s += " overlay=" + std::to_string(overlay->watched.size()) + "w" + (overlay->recommended ? "+1r" : "");
    }
    if (overlap.used_fallback) {
        s += " overlap=scaled";
    }
    if (clusters.warning) {
        s += " warning=degenerate-clustering";
    }
    return s;
}

void validate(const PipelineConfig& cfg) {
    stage("config", [&] {
        if (cfg.input.empty()) {
            throw InputError("no input file given");
        }
        if (cfg.top_k && *cfg.top_k == 0) {
            throw InputError("top-k must be at least 1");
        }
        if (cfg.min_size == 0) {
            throw InputError("min-size must be at least 1");
        }
        if (cfg.cluster == ClusterMethod::KMeans && cfg.kmeans_k == 0) {
            throw InputError("k-means needs k >= 1");
        }
        if (!(cfg.layout_span > 0.0)) {
            throw InputError("layout span must be positive");
        }
        if (cfg.overlap.max_iterations < 0 || !(cfg.overlap.max_expansion > 1.0)) {
            throw InputError("overlap iterations must be >= 0 and max expansion > 1");
        }
        const MapParams& m = cfg.map;
        if (!(m.spacing_divisor > 0.0) || !(m.jitter >= 0.0 && m.jitter < 0.5)) {
            throw InputError("perimeter spacing divisor must be positive and jitter in [0, 0.5)");
        }
        if (!(m.outer_inner > 1.0) || !(m.outer_outer >= m.outer_inner) || !(m.frame_factor > m.outer_outer)) {
            throw InputError("need 1 < outer-inner <= outer-outer < frame factor");
        }
        if (!(m.outer_count_factor >= 0.0) || !(m.lake_theta > 0.0)) {
            throw InputError("outskirt factor must be >= 0 and lake theta > 0");
        }
        LayoutParams lp = cfg.layout_params;
        graphmap::validate(lp);
        return 0;
    });
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    validate(cfg);
    PipelineResult r;

    std::size_t k = 0;
    Graph raw = stage("ingest", [&] {
        switch (cfg.kind) {
        case InputKind::EdgeList: {
            Graph g = load_graph(cfg.input);
            if (cfg.top_k) {
                k = *cfg.top_k;
                SimilarityTable s;
                s.rows.resize(g.num_vertices());
                for (const Vertex& v : g.vertices()) {
                    s.labels.push_back(v.label);
                    s.popularity.push_back(v.weight);
                }
                for (const Edge& e : g.edges()) {
                    s.rows[e.u].push_back({e.v, e.w});
                    s.rows[e.v].push_back({e.u, e.w});
                }
                for (auto& row : s.rows) {
                    std::sort(row.begin(), row.end(),
                              [](const SimilarityEntry& a, const SimilarityEntry& b) { return a.col < b.col; });
                }
                return stage("sparsify", [&] { return topk_sparsify(s, k); });
            }
            return g;
        }
        case InputKind::Similarity: {
            SimilarityTable s = load_similarity(cfg.input);
            k = cfg.top_k.value_or(10);
            return stage("sparsify", [&] { return topk_sparsify(s, k); });
        }
        case InputKind::Implicit: {
            SimilarityTable s = similarity_from_implicit(load_implicit(cfg.input));
            k = cfg.top_k.value_or(10);
            return stage("sparsify", [&] { return topk_sparsify(s, k); });
        }
        }
        throw std::logic_error("unknown input kind");
    });

    PruneResult pruned = stage("prune", [&] { return prune_components(raw, cfg.min_size); });
    r.graph = std::move(pruned.graph);
    r.components_before = pruned.components_before;
    r.components_after = pruned.components_after;
    const Graph& g = r.graph;

    LayoutParams lp = cfg.layout_params;
    lp.seed = cfg.seed;
    Layout layout = stage("layout", [&] {
        Layout l = cfg.layout == LayoutMethod::Force ? force_layout(g, lp) : stress_layout(g, lp);
        return center_and_scale(std::move(l), cfg.layout_span);
    });

    r.clusters = stage("cluster", [&] {
        if (cfg.cluster == ClusterMethod::KMeans) {
            return kmeans_cluster(layout.positions, cfg.kmeans_k, cfg.seed, &g);
        }
        return greedy_modularity_cluster(g);
    });

    r.boxes = stage("labels", [&] { return size_labels(g, cfg.labels); });
    r.overlap = stage("overlap", [&] { return remove_overlaps(layout, r.boxes, cfg.overlap); });
    r.layout = r.overlap.layout;
    place_labels(r.boxes, r.layout);

    MapParams mp = cfg.map;
    mp.seed = cfg.seed;
    r.map.sites = stage("sites", [&] {
        return mp.naive_corners ? naive_sites(r.boxes) : insert_lakes(generate_sites(r.boxes, mp), mp);
    });
    r.map.cells = stage("voronoi", [&] {
        return voronoi_cells(std::span<const Site>(r.map.sites.sites), r.map.sites.frame);
    });
    r.map.map = stage("merge", [&] {
        return merge_regions(r.map.cells, r.map.sites.sites, r.clusters.cluster, r.clusters.count,
                             r.map.sites.frame);
    });

    r.style = stage("colors", [&] {
        std::vector<double> areas;
        for (const MultiPolygon& c : r.map.map.countries) {
            areas.push_back(area(c));
        }
        return assign_colors(r.map.map.adjacency, r.clusters.count, areas);
    });

    if (cfg.heat_path) {
        r.heat = stage("heat", [&] {
            return heat_from_labels(g, load_label_values(*cfg.heat_path), &r.unknown_scores);
        });
    }
    if (cfg.watched_path || cfg.recommended) {
        r.overlay = stage("overlay", [&] {
            std::vector<std::pair<VertexId, double>> watched;
            if (cfg.watched_path) {
                for (const auto& [label, hours] : load_label_values(*cfg.watched_path)) {
                    const auto v = g.find(label);
                    if (!v) {
                        throw ValidationError("watched item '" + label + "' is not on the map");
                    }
                    watched.emplace_back(*v, hours);
                }
            }
            std::optional<VertexId> rec;
            if (cfg.recommended) {
                rec = g.find(*cfg.recommended);
                if (!rec) {
                    throw ValidationError("recommended item '" + *cfg.recommended + "' is not on the map");
                }
            }
            return build_overlay(watched, rec, r.boxes, cfg.labels);
        });
    }

    const HeatScores* heat = r.heat ? &*r.heat : nullptr;
    const OverlaySpec* overlay = r.overlay ? &*r.overlay : nullptr;
    stage("render", [&] {
        r.svg = emit_svg(r.map.map, r.boxes, r.style, heat, overlay);
        r.json = export_viewer_json(r.map.map, r.boxes, r.clusters, r.style, g, heat, overlay, metadata(cfg, k));
        return 0;
    });

    stage("write", [&] {
        OutputSet out;
        if (cfg.svg_out) {
            out.add(*cfg.svg_out, r.svg);
        }
        if (cfg.json_out) {
            out.add(*cfg.json_out, r.json + "\n");
        }
        if (cfg.layout_dump) {
            std::ostringstream s;
            write_layout(s, r.layout);
            out.add(*cfg.layout_dump, s.str());
        }
        if (cfg.clusters_dump) {
            std::ostringstream s;
            write_clusters(s, r.clusters);
            out.add(*cfg.clusters_dump, s.str());
        }
        out.write();
        return 0;
    });

    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace graphmap
