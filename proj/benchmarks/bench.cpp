#include "sosforge/control.hpp"
#include "sosforge/graph.hpp"
#include "sosforge/halton.hpp"
#include "sosforge/whitney.hpp"

#include <benchmark/benchmark.h>

using namespace sosforge;

namespace {

Field paraboloid() {
    return polynomial_field(
        Polynomial::from_string_terms(
            2, {{{2, 0}, "1"}, {{0, 2}, "1"}, {{0, 0}, "1"}}),
        SmoothnessClass(2, 2, 1.0));
}

void bm_control_value(benchmark::State& state) {
    Field f = paraboloid();
    Box box{{-1.0, -1.0}, {1.0, 1.0}};
    std::uint64_t i = 0;
    for (auto _ : state) {
        Point x = halton_in_box(i++, box);
        benchmark::DoNotOptimize(control_value(f, x));
    }
}
BENCHMARK(bm_control_value);

void bm_build_partition(benchmark::State& state) {
    Field f = paraboloid();
    ControlFunction r{f, 0.1, 1.0};
    Box box{{-1.0, -1.0}, {1.0, 1.0}};
    for (auto _ : state) {
        Partition p = build_partition(r, box, 0.1, 1.25, 12, 1e-6);
        benchmark::DoNotOptimize(p.cubes().size());
    }
}
BENCHMARK(bm_build_partition);

void bm_psi_eval(benchmark::State& state) {
    Field f = paraboloid();
    ControlFunction r{f, 0.1, 1.0};
    Box box{{-1.0, -1.0}, {1.0, 1.0}};
    Partition p = build_partition(r, box, 0.1, 1.25, 12, 1e-6);
    std::uint64_t i = 0;
    for (auto _ : state) {
        Point x = halton_in_box(i++, box);
        double s = 0.0;
        for (int j : p.active_cubes(x)) s += psi(p, j, x);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(bm_psi_eval);

void bm_psi_derivative(benchmark::State& state) {
    Field f = paraboloid();
    ControlFunction r{f, 0.1, 1.0};
    Box box{{-1.0, -1.0}, {1.0, 1.0}};
    Partition p = build_partition(r, box, 0.1, 1.25, 12, 1e-6);
    MultiIndex beta{1, 1};
    std::uint64_t i = 0;
    for (auto _ : state) {
        Point x = halton_in_box(i++, box);
        double s = 0.0;
        for (int j : p.active_cubes(x)) s += psi_derivative(p, j, beta, x);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(bm_psi_derivative);

void bm_coloring(benchmark::State& state) {
    Field f = paraboloid();
    ControlFunction r{f, 0.1, 1.0};
    Box box{{-1.0, -1.0}, {1.0, 1.0}};
    Partition p = build_partition(r, box, 0.1, 1.25, 12, 1e-6);
    CubeGraph g = adjacency_graph(p);
    for (auto _ : state) {
        Coloring c = welsh_powell_color(g);
        benchmark::DoNotOptimize(c.classes);
    }
}
BENCHMARK(bm_coloring);

}  // namespace

BENCHMARK_MAIN();
