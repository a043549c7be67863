// graphmap: similarity graph in, map SVG and viewer JSON out.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "graphmap/error.hpp"
#include "graphmap/pipeline.hpp"

namespace {

using graphmap::InputError;
using graphmap::PipelineConfig;

double to_double(const std::string& name, const std::string& v) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used == v.size()) {
            return d;
        }
    } catch (const std::exception&) {
    }
    throw InputError("--" + name + ": expected a number, got '" + v + "'");
}

std::size_t to_count(const std::string& name, const std::string& v) {
    const double d = to_double(name, v);
    if (d < 0.0 || d != static_cast<double>(static_cast<std::size_t>(d))) {
        throw InputError("--" + name + ": expected a non-negative integer, got '" + v + "'");
    }
    return static_cast<std::size_t>(d);
}

bool to_bool(const std::string& name, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw InputError("--" + name + ": expected true or false, got '" + v + "'");
}

struct Setting {
    std::string name;
    std::string help;
    bool is_flag;
    std::function<void(PipelineConfig&, const std::string&)> apply;
};

std::vector<Setting> settings() {
    using C = PipelineConfig;
    using S = const std::string&;
    std::vector<Setting> s;
    const auto num = [&](std::string name, std::string help, std::function<void(C&, double)> f) {
        s.push_back({name, help, false, [name, f](C& c, S v) { f(c, to_double(name, v)); }});
    };
    const auto count = [&](std::string name, std::string help, std::function<void(C&, std::size_t)> f) {
        s.push_back({name, help, false, [name, f](C& c, S v) { f(c, to_count(name, v)); }});
    };
    const auto text = [&](std::string name, std::string help, std::function<void(C&, S)> f) {
        s.push_back({name, help, false, f});
    };
    const auto flag = [&](std::string name, std::string help, std::function<void(C&, bool)> f) {
        s.push_back({name, help, true, [name, f](C& c, S v) { f(c, to_bool(name, v)); }});
    };

    text("kind", "input kind: edges, similarity or implicit", [](C& c, S v) {
        if (v == "edges") c.kind = graphmap::InputKind::EdgeList;
        else if (v == "similarity") c.kind = graphmap::InputKind::Similarity;
        else if (v == "implicit") c.kind = graphmap::InputKind::Implicit;
        else throw InputError("--kind: unknown input kind '" + v + "'");
    });
    count("top-k", "keep each item's k most similar items (default 10 for similarity/implicit)",
          [](C& c, std::size_t k) { c.top_k = k; });
    count("min-size", "drop components with fewer vertices (default 3)", [](C& c, std::size_t k) { c.min_size = k; });
    text("layout", "force or stress", [](C& c, S v) {
        if (v == "force") c.layout = graphmap::LayoutMethod::Force;
        else if (v == "stress") c.layout = graphmap::LayoutMethod::Stress;
        else throw InputError("--layout: unknown method '" + v + "'");
    });
    text("cluster", "modularity or kmeans:K", [](C& c, S v) {
        if (v == "modularity") {
            c.cluster = graphmap::ClusterMethod::Modularity;
        } else if (v.rfind("kmeans:", 0) == 0) {
            c.cluster = graphmap::ClusterMethod::KMeans;
            c.kmeans_k = to_count("cluster", v.substr(7));
        } else {
            throw InputError("--cluster: expected modularity or kmeans:K, got '" + v + "'");
        }
    });
    num("spring-length", "natural edge length K", [](C& c, double v) { c.layout_params.K = v; });
    num("repulsion", "repulsion strength C", [](C& c, double v) { c.layout_params.C = v; });
    count("max-iterations", "layout iteration cap",
          [](C& c, std::size_t v) { c.layout_params.max_iterations = static_cast<int>(v); });
    num("tolerance", "layout convergence tolerance", [](C& c, double v) { c.layout_params.tolerance = v; });
    num("cooling", "step cooling factor in (0, 1)", [](C& c, double v) { c.layout_params.cooling = v; });
    count("multilevel-threshold", "coarsen above this many vertices",
          [](C& c, std::size_t v) { c.layout_params.multilevel_threshold = v; });
    num("font-min", "smallest label font", [](C& c, double v) { c.labels.font_min = v; });
    num("font-max", "largest label font", [](C& c, double v) { c.labels.font_max = v; });
    num("font-exponent", "font scaling exponent", [](C& c, double v) { c.labels.exponent = v; });
    count("overlap-iterations", "proximity-stress rounds before falling back to scaling",
          [](C& c, std::size_t v) { c.overlap.max_iterations = static_cast<int>(v); });
    flag("lakes", "insert lakes where vertices are far apart (default on)", [](C& c, bool b) { c.map.lakes = b; });
    num("lake-theta", "lake distance threshold in grid cells", [](C& c, double v) { c.map.lake_theta = v; });
    num("lake-cell", "lake grid spacing (default R/25)", [](C& c, double v) { c.map.lake_cell = v; });
    num("jitter", "perimeter point jitter as a fraction of the spacing", [](C& c, double v) { c.map.jitter = v; });
    num("outer-inner", "outskirt annulus inner radius, multiple of R", [](C& c, double v) { c.map.outer_inner = v; });
    num("outer-outer", "outskirt annulus outer radius, multiple of R", [](C& c, double v) { c.map.outer_outer = v; });
    num("outer-count", "outskirt points per ceil(sqrt(n))", [](C& c, double v) { c.map.outer_count_factor = v; });
    num("frame-factor", "frame half-side, multiple of R", [](C& c, double v) { c.map.frame_factor = v; });
    flag("naive-corners", "Voronoi of label centers and frame corners only",
         [](C& c, bool b) { c.map.naive_corners = b; });
    text("seed", "seed for every randomized stage", [](C& c, S v) {
        try {
            std::size_t used = 0;
            c.seed = std::stoull(v, &used);
            if (used == v.size() && v.find('-') == std::string::npos) {
                return;
            }
        } catch (const std::exception&) {
        }
        throw InputError("--seed: expected a non-negative integer, got '" + v + "'");
    });
    text("heat", "scores file (label score) for heat-map mode", [](C& c, S v) { c.heat_path = v; });
    text("watched", "watched file (label hours)", [](C& c, S v) { c.watched_path = v; });
    text("recommend", "label of the recommended item", [](C& c, S v) { c.recommended = v; });
    text("svg", "SVG output path", [](C& c, S v) { c.svg_out = v; });
    text("json", "viewer JSON output path", [](C& c, S v) { c.json_out = v; });
    text("dump-layout", "write final positions (id x y)", [](C& c, S v) { c.layout_dump = v; });
    text("dump-clusters", "write cluster ids (id cluster)", [](C& c, S v) { c.clusters_dump = v; });
    return s;
}

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open config file '" + path + "'");
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError("config file '" + path + "': " + e.what());
    }
    if (!doc.is_object()) {
        throw InputError("config file '" + path + "' must hold a JSON object");
    }
    std::map<std::string, std::string> out;
    for (const auto& [key, value] : doc.items()) {
        if (value.is_string()) {
            out[key] = value.get<std::string>();
        } else if (value.is_boolean()) {
            out[key] = value.get<bool>() ? "true" : "false";
        } else if (value.is_number_integer() || value.is_number_unsigned()) {
            out[key] = value.dump();
        } else if (value.is_number()) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", value.get<double>());
            out[key] = buf;
        } else {
            throw InputError("config key '" + key + "' must be a string, number or boolean");
        }
    }
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"Draw a similarity graph as a map: countries are clusters, towns are items."};
    app.set_version_flag("--version", "graphmap 0.3.0");

    std::string input;
    std::string config_path;
    app.add_option("input", input, "graph file (edge list, similarity triples or implicit feedback)");
    app.add_option("--config", config_path, "JSON file with settings keyed by long flag name; flags win");

    const std::vector<Setting> table = settings();
    std::map<std::string, std::string> given;
    std::map<std::string, CLI::Option*> options;
    std::map<std::string, bool> flag_values;
    for (const Setting& s : table) {
        if (s.is_flag) {
            const std::string spec = "--" + s.name + ",!--no-" + s.name;
            options[s.name] = app.add_flag(spec, flag_values[s.name], s.help);
        } else {
            options[s.name] = app.add_option("--" + s.name, given[s.name], s.help);
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    PipelineConfig cfg;
    try {
        std::map<std::string, std::string> merged;
        if (!config_path.empty()) {
            merged = read_config(config_path);
            if (const auto it = merged.find("input"); it != merged.end()) {
                cfg.input = it->second;
                merged.erase(it);
            }
        }
        for (const Setting& s : table) {
            if (options[s.name]->count() > 0) {
                merged[s.name] = s.is_flag ? (flag_values[s.name] ? "true" : "false") : given[s.name];
            }
        }
        if (!input.empty()) {
            cfg.input = input;
        }
        for (const auto& [key, value] : merged) {
            const auto it = std::find_if(table.begin(), table.end(), [&](const Setting& s) { return s.name == key; });
            if (it == table.end()) {
                throw InputError("unknown config key '" + key + "'");
            }
            it->apply(cfg, value);
        }
        if (!cfg.svg_out && !cfg.json_out) {
            cfg.svg_out = "map.svg";
        }
    } catch (const InputError& e) {
        std::cerr << "graphmap: config: " << e.what() << "\n";
        return 2;
    }

    try {
        const graphmap::PipelineResult r = graphmap::run_pipeline(cfg);
        std::cout << r.summary() << "\n";
        if (cfg.svg_out) std::cout << "svg: " << cfg.svg_out->string() << "\n";
        if (cfg.json_out) std::cout << "json: " << cfg.json_out->string() << "\n";
        return 0;
    } catch (const graphmap::StageError& e) {
        std::cerr << "graphmap: " << e.what() << "\n";
        return e.input() ? 2 : 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "graphmap: internal error: " << e.what() << "\n";
        return 1;
    }
}
