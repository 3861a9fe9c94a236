// Serial reference kernels against their OpenMP versions.

#include "pgn/latflow/diophantine.hpp"
#include "pgn/latflow/trajectory.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace pgn;

namespace {

const double kPhi = (1 + std::sqrt(5.0)) / 2;

Matrix mat1(double x) {
  Matrix m(1, 1);
  m(0, 0) = x;
  return m;
}

Matrix theta_1x2() {
  Matrix m(1, 2);
  m << std::sqrt(2.0), std::cbrt(3.0);
  return m;
}

template <bool Parallel>
void BM_trajectory(benchmark::State& st) {
  auto th = theta_1x2();
  auto grid = make_grid(0, static_cast<double>(st.range(0)), 0.05);
  for (auto _ : st) {
    auto tr = Parallel ? h_trajectory(th, grid) : h_trajectory_serial(th, grid);
    benchmark::DoNotOptimize(tr.rows.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(grid.size()));
}

template <bool Parallel>
void BM_occupation(benchmark::State& st) {
  SystemShape shape({{1, 1}, {1, 2}});
  MatrixTuple th{mat1(kPhi), theta_1x2()};
  OccupationGrid g{static_cast<double>(st.range(0)), 0.01};
  for (auto _ : st) {
    auto ind = Parallel ? occupation_indicators(th, shape, 0.2, g)
                        : occupation_indicators_serial(th, shape, 0.2, g);
    benchmark::DoNotOptimize(ind.data());
  }
}

template <bool Parallel>
void BM_cusp(benchmark::State& st) {
  OccupationGrid g{static_cast<double>(st.range(0)), 0.01};
  for (auto _ : st) {
    double v = Parallel ? cusp_occupation(mat1(kPhi), 0.5, g) : cusp_occupation_serial(mat1(kPhi), 0.5, g);
    benchmark::DoNotOptimize(v);
  }
}

}  // namespace

BENCHMARK(BM_trajectory<false>)->Name("trajectory/serial")->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_trajectory<true>)->Name("trajectory/omp")->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_occupation<false>)->Name("occupation/serial")->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_occupation<true>)->Name("occupation/omp")->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cusp<false>)->Name("cusp/serial")->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cusp<true>)->Name("cusp/omp")->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
