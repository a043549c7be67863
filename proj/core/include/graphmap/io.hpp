#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "graphmap/graph.hpp"

namespace graphmap {

// Whitespace tokenizer honoring double quotes, so labels with spaces can be
// written as "Judge Judy". Throws InputError on an unterminated quote.
std::vector<std::string> tokenize(std::string_view line);

// Edge list: `u v w` per line (w defaults to 1), `#` comments, and
// `# vertex <label> <weight>` popularity directives. Duplicate undirected
// edges keep the larger weight.
Graph parse_graph(std::istream& in, const std::string& source = "<input>");
Graph load_graph(const std::filesystem::path& path);

// `i j s` triples; rows are directional as written. Accepts the same vertex
// directives as the edge list.
SimilarityTable parse_similarity(std::istream& in, const std::string& source = "<input>");
SimilarityTable load_similarity(const std::filesystem::path& path);

// `user item count` triples.
ImplicitFeedback parse_implicit(std::istream& in, const std::string& source = "<input>");
ImplicitFeedback load_implicit(const std::filesystem::path& path);

// `label value` lines (scores, watched hours). An unquoted label may contain
// spaces: everything before the last token is the label.
std::vector<std::pair<std::string, double>> parse_label_values(std::istream& in,
                                                               const std::string& source = "<input>");
std::vector<std::pair<std::string, double>> load_label_values(const std::filesystem::path& path);

}  // namespace graphmap
