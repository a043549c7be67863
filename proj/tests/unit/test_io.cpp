#include <gtest/gtest.h>

#include <sstream>

#include "generators.hpp"
#include "graphmap/error.hpp"
#include "graphmap/io.hpp"

namespace graphmap {
namespace {

Graph parse(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in, "test");
}

TEST(Tokenize, QuotesAndEscapes) {
    EXPECT_EQ(tokenize(R"("Judge Judy" b 1.5)"), (std::vector<std::string>{"Judge Judy", "b", "1.5"}));
    EXPECT_EQ(tokenize(R"("say \"hi\"" x)"), (std::vector<std::string>{"say \"hi\"", "x"}));
    EXPECT_EQ(tokenize("  a\tb  "), (std::vector<std::string>{"a", "b"}));
    EXPECT_THROW(tokenize(R"("open)"), InputError);
}

TEST(LoadGraph, TwoLines) {
    const Graph g = parse("a b 1.0\nb c 2.0\n");
    EXPECT_EQ(g.num_vertices(), 3u);
    EXPECT_EQ(g.num_edges(), 2u);
    EXPECT_EQ(g.vertex(0).label, "a");
    EXPECT_EQ(g.vertex(2).label, "c");
}

TEST(LoadGraph, ReversedDuplicateKeepsMax) {
    const Graph g = parse("a b 1\nb a 3\n");
    ASSERT_EQ(g.num_edges(), 1u);
    EXPECT_DOUBLE_EQ(g.edges()[0].w, 3.0);
}

TEST(LoadGraph, CommentsDirectivesAndDefaultWeight) {
    const Graph g = parse("# a comment\n\n# vertex \"Judge Judy\" 42\n\"Judge Judy\" x\n");
    ASSERT_EQ(g.num_vertices(), 2u);
    EXPECT_EQ(g.vertex(0).label, "Judge Judy");
    EXPECT_DOUBLE_EQ(g.vertex(0).weight, 42.0);
    EXPECT_DOUBLE_EQ(g.edges()[0].w, 1.0);
    // No directive: weighted degree.
    EXPECT_DOUBLE_EQ(g.vertex(1).weight, 1.0);
}

TEST(LoadGraph, MalformedLineNamesLineNumber) {
    try {
        parse("a b 1\nb c notanumber\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_NE(std::string(e.what()).find("test:2"), std::string::npos);
    }
    EXPECT_THROW(parse("a b c d\n"), ParseError);
    EXPECT_THROW(parse("lonely\n"), ParseError);
}

TEST(LoadGraph, NegativeWeightIsValidationError) {
    try {
        parse("a b 1\nb c -2\n");
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos);
    }
}

TEST(LoadGraph, DeterministicIdAssignment) {
    const std::string text = gen::edge_list_text(gen::random_connected(50, 60, 9));
    const Graph a = parse(text);
    const Graph b = parse(text);
    ASSERT_EQ(a.num_vertices(), b.num_vertices());
    for (VertexId v = 0; v < a.num_vertices(); ++v) {
        EXPECT_EQ(a.vertex(v).label, b.vertex(v).label);
    }
    ASSERT_EQ(a.num_edges(), b.num_edges());
    for (std::size_t i = 0; i < a.num_edges(); ++i) {
        EXPECT_EQ(a.edges()[i].u, b.edges()[i].u);
        EXPECT_EQ(a.edges()[i].v, b.edges()[i].v);
        EXPECT_EQ(a.edges()[i].w, b.edges()[i].w);
    }
}

TEST(LoadGraph, RoundTripsThroughText) {
    const Graph g = gen::random_connected(30, 40, 2);
    const Graph h = parse(gen::edge_list_text(g));
    ASSERT_EQ(h.num_edges(), g.num_edges());
    for (std::size_t i = 0; i < g.num_edges(); ++i) {
        EXPECT_EQ(h.edges()[i].w, g.edges()[i].w);
    }
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        EXPECT_EQ(h.vertex(v).weight, g.vertex(v).weight);
    }
}

TEST(LoadGraph, MissingFileNamesPath) {
    try {
        load_graph("/nonexistent/graph.txt");
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("/nonexistent/graph.txt"), std::string::npos);
    }
}

TEST(LoadGraph, ThousandVertexTopTenShape) {
    // Similarity triples for 1000 items, 10 per row.
    std::ostringstream text;
    for (int i = 0; i < 1000; ++i) {
        for (int d = 1; d <= 10; ++d) {
            text << "s" << i << " s" << (i + d * 37) % 1000 << " " << 1.0 / d << "\n";
        }
    }
    std::istringstream in(text.str());
    const Graph g = parse_graph(in);
    EXPECT_EQ(g.num_vertices(), 1000u);
    EXPECT_LE(g.num_edges(), 10000u);
}

TEST(ParseSimilarity, DirectionalTriplesAndPopularity) {
    std::istringstream in("# vertex a 5\na b 0.5\nb a 0.7\na c 0.2\na b 0.1\n");
    const SimilarityTable s = parse_similarity(in);
    ASSERT_EQ(s.size(), 3u);
    EXPECT_DOUBLE_EQ(s.at(0, 1), 0.5);
    EXPECT_DOUBLE_EQ(s.at(1, 0), 0.7);
    EXPECT_DOUBLE_EQ(s.at(0, 2), 0.2);
    EXPECT_DOUBLE_EQ(s.at(2, 0), 0.0);
    ASSERT_EQ(s.popularity.size(), 3u);
    EXPECT_DOUBLE_EQ(s.popularity[0], 5.0);
    std::istringstream bad("a b -1\n");
    EXPECT_THROW(parse_similarity(bad), ValidationError);
}

TEST(ParseImplicit, UsersAndItemsInterned) {
    std::istringstream in("u1 show1 3\nu2 show1 1\nu2 show2 4\n");
    const ImplicitFeedback fb = parse_implicit(in);
    EXPECT_EQ(fb.num_users, 2u);
    EXPECT_EQ(fb.item_labels, (std::vector<std::string>{"show1", "show2"}));
    EXPECT_EQ(fb.entries.size(), 3u);
}

TEST(ParseLabelValues, QuotedAndBareMultiWordLabels) {
    std::istringstream in("\"Judge Judy\" 5\nDivorce Court 2\n# skip\n");
    const auto v = parse_label_values(in);
    ASSERT_EQ(v.size(), 2u);
    EXPECT_EQ(v[0].first, "Judge Judy");
    EXPECT_DOUBLE_EQ(v[0].second, 5.0);
    EXPECT_EQ(v[1].first, "Divorce Court");
    std::istringstream bad("onlylabel\n");
    EXPECT_THROW(parse_label_values(bad), ParseError);
}

}  // namespace
}  // namespace graphmap
