#include <benchmark/benchmark.h>

#include <random>

#include "graphmap/cluster.hpp"
#include "graphmap/embed.hpp"
#include "graphmap/labels.hpp"
#include "graphmap/mapgeom.hpp"

namespace {

using namespace graphmap;

Graph random_graph(std::size_t n, std::size_t degree, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Vertex> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = {"v" + std::to_string(i), 1.0};
    std::vector<Edge> e;
    for (VertexId i = 1; i < n; ++i) e.push_back({static_cast<VertexId>(rng() % i), i, 1.0});
    for (std::size_t k = 0; k < n * (degree / 2); ++k) {
        const auto a = static_cast<VertexId>(rng() % n);
        const auto b = static_cast<VertexId>(rng() % n);
        if (a != b) e.push_back({std::min(a, b), std::max(a, b), 1.0});
    }
    return Graph(v, e);
}

void BM_ForceLayout(benchmark::State& state) {
    const Graph g = random_graph(static_cast<std::size_t>(state.range(0)), 10, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(force_layout(g, {}));
    }
}
BENCHMARK(BM_ForceLayout)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Voronoi(benchmark::State& state) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1000.0);
    std::vector<Point> sites(static_cast<std::size_t>(state.range(0)));
    for (Point& p : sites) p = {u(rng), u(rng)};
    const Rect frame{{0, 0}, {1000, 1000}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(voronoi_cells(sites, frame));
    }
}
BENCHMARK(BM_Voronoi)->Arg(1000)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_GreedyModularity(benchmark::State& state) {
    const Graph g = random_graph(static_cast<std::size_t>(state.range(0)), 10, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(greedy_modularity_cluster(g));
    }
}
BENCHMARK(BM_GreedyModularity)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_RemoveOverlaps(benchmark::State& state) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 400.0);
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<LabelBox> boxes;
    Layout l;
    for (std::size_t i = 0; i < n; ++i) {
        boxes.push_back(make_box(static_cast<VertexId>(i), "label" + std::to_string(i), 12.0));
        l.positions.push_back({u(rng), u(rng)});
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(remove_overlaps(l, boxes));
    }
}
BENCHMARK(BM_RemoveOverlaps)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
