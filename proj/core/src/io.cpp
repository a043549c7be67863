#include "graphmap/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <tuple>
#include <unordered_map>

#include "graphmap/error.hpp"

namespace graphmap {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open input file '" + path.string() + "'");
    }
    return in;
}

std::optional<double> parse_number(const std::string& token) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (first != last && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

double require_number(const std::string& token, const std::string& source, std::size_t line) {
    const auto v = parse_number(token);
    if (!v) {
        throw ParseError(source, line, "expected a number, got '" + token + "'");
    }
    return *v;
}

// Calls `data(tokens, line)` for every non-blank, non-comment line and
// `directive(label, weight, line)` for `# vertex <label> <weight>`.
template <typename Data, typename Directive>
void scan_lines(std::istream& in, const std::string& source, Data&& data, Directive&& directive) {
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r') {
            text.pop_back();
        }
        std::vector<std::string> tokens;
        try {
            tokens = tokenize(text);
        } catch (const InputError& e) {
            throw ParseError(source, line, e.what());
        }
        if (tokens.empty()) {
            continue;
        }
        if (tokens[0].starts_with('#')) {
            if (tokens[0] == "#" && tokens.size() >= 2 && tokens[1] == "vertex") {
                if (tokens.size() != 4) {
                    throw ParseError(source, line, "vertex directive must be '# vertex <label> <weight>'");
                }
                directive(tokens[2], require_number(tokens[3], source, line), line);
            }
            continue;
        }
        data(tokens, line);
    }
}

}  // namespace

std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        if (i >= line.size()) {
            break;
        }
        std::string token;
        if (line[i] == '"') {
            ++i;
            bool closed = false;
            while (i < line.size()) {
                if (line[i] == '\\' && i + 1 < line.size()) {
                    token.push_back(line[i + 1]);
                    i += 2;
                    continue;
                }
                if (line[i] == '"') {
                    closed = true;
                    ++i;
                    break;
                }
                token.push_back(line[i++]);
            }
            if (!closed) {
                throw InputError("unterminated quote");
            }
        } else {
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
                token.push_back(line[i++]);
            }
        }
        tokens.push_back(std::move(token));
    }
    return tokens;
}

Graph parse_graph(std::istream& in, const std::string& source) {
    GraphBuilder builder;
    scan_lines(
        in, source,
        [&](const std::vector<std::string>& t, std::size_t line) {
            if (t.size() != 2 && t.size() != 3) {
                throw ParseError(source, line, "expected 'u v w', got " + std::to_string(t.size()) + " fields");
            }
            const double w = t.size() == 3 ? require_number(t[2], source, line) : 1.0;
            if (w <= 0.0) {
                throw ValidationError(source + ":" + std::to_string(line) +
                                      ": edge weight must be positive, got " + t[2]);
            }
            const VertexId u = builder.intern(t[0]);
            const VertexId v = builder.intern(t[1]);
            builder.add_edge(u, v, w);
        },
        [&](const std::string& label, double weight, std::size_t line) {
            if (weight < 0.0) {
                throw ValidationError(source + ":" + std::to_string(line) +
                                      ": vertex weight must be non-negative");
            }
            builder.set_vertex_weight(builder.intern(label), weight);
        });
    return builder.build();
}

Graph load_graph(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_graph(in, path.string());
}

SimilarityTable parse_similarity(std::istream& in, const std::string& source) {
    GraphBuilder ids;
    std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> triples;
    std::unordered_map<VertexId, double> popularity;
    scan_lines(
        in, source,
        [&](const std::vector<std::string>& t, std::size_t line) {
            if (t.size() != 3) {
                throw ParseError(source, line, "expected 'i j s'");
            }
            const double s = require_number(t[2], source, line);
            if (s < 0.0) {
                throw ValidationError(source + ":" + std::to_string(line) +
                                      ": similarity must be non-negative");
            }
            triples.emplace_back(ids.intern(t[0]), ids.intern(t[1]), s);
        },
        [&](const std::string& label, double weight, std::size_t line) {
            if (weight < 0.0) {
                throw ValidationError(source + ":" + std::to_string(line) +
                                      ": vertex weight must be non-negative");
            }
            popularity[ids.intern(label)] = weight;
        });

    const Graph labels_only = ids.build();
    SimilarityTable s;
    for (const Vertex& v : labels_only.vertices()) {
        s.labels.push_back(v.label);
    }
    s.rows.resize(s.labels.size());
    std::vector<std::unordered_map<std::uint32_t, double>> cells(s.labels.size());
    for (const auto& [i, j, value] : triples) {
        if (i != j && value > 0.0) {
            auto& cell = cells[i][j];
            cell = std::max(cell, value);
        }
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (const auto& [j, value] : cells[i]) {
            s.rows[i].push_back({j, value});
        }
        std::sort(s.rows[i].begin(), s.rows[i].end(),
                  [](const SimilarityEntry& a, const SimilarityEntry& b) { return a.col < b.col; });
    }
    if (!popularity.empty()) {
        // Items without a directive fall back to zero importance.
        s.popularity.assign(s.labels.size(), 0.0);
        for (const auto& [id, w] : popularity) {
            s.popularity[id] = w;
        }
    }
    return s;
}

SimilarityTable load_similarity(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_similarity(in, path.string());
}

ImplicitFeedback parse_implicit(std::istream& in, const std::string& source) {
    GraphBuilder users;
    GraphBuilder items;
    ImplicitFeedback fb;
    scan_lines(
        in, source,
        [&](const std::vector<std::string>& t, std::size_t line) {
            if (t.size() != 3) {
                throw ParseError(source, line, "expected 'user item count'");
            }
            const double c = require_number(t[2], source, line);
            if (c < 0.0) {
                throw ValidationError(source + ":" + std::to_string(line) +
                                      ": count must be non-negative");
            }
            fb.entries.push_back({users.intern(t[0]), items.intern(t[1]), c});
        },
        [](const std::string&, double, std::size_t) {});
    fb.num_users = static_cast<std::uint32_t>(users.num_vertices());
    const Graph item_graph = items.build();
    for (const Vertex& v : item_graph.vertices()) {
        fb.item_labels.push_back(v.label);
    }
    return fb;
}

ImplicitFeedback load_implicit(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_implicit(in, path.string());
}

std::vector<std::pair<std::string, double>> parse_label_values(std::istream& in,
                                                               const std::string& source) {
    std::vector<std::pair<std::string, double>> out;
    scan_lines(
        in, source,
        [&](const std::vector<std::string>& t, std::size_t line) {
            if (t.size() < 2) {
                throw ParseError(source, line, "expected 'label value'");
            }
            std::string label = t[0];
            for (std::size_t i = 1; i + 1 < t.size(); ++i) {
                label += ' ';
                label += t[i];
            }
            out.emplace_back(std::move(label), require_number(t.back(), source, line));
        },
        [](const std::string&, double, std::size_t) {});
    return out;
}

std::vector<std::pair<std::string, double>> load_label_values(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_label_values(in, path.string());
}

}  // namespace graphmap
