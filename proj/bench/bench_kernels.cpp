// Parallel kernels against their serial twins. Thread count follows
// OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "hyperlab/annihilator.hpp"
#include "hyperlab/defect.hpp"
#include "hyperlab/kernels.hpp"

namespace hk = hyperlab::kernels;
using namespace hyperlab;

namespace {

std::vector<double> spiral_grid(int n) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = 0.01 + 99.99 * i / (n - 1);
  return xs;
}

const UlamOperator& gauss_operator() {
  static const UlamOperator op = build_ulam(1.0, 4096);
  return op;
}

const HyperbolaMeasure& critical() {
  static const HyperbolaMeasure mu(2 * kPi, critical_annihilator());
  return mu;
}

std::vector<CrossPoint> critical_cross() {
  LatticeCross c;
  c.alpha = c.beta = 2.0;
  c.j_min = c.k_min = -20;
  c.j_max = c.k_max = 20;
  return cross_points(c);
}

}  // namespace

#define TWIN(name, body)                                           \
  static void BM_##name(benchmark::State& state) {                 \
    for (auto _ : state) benchmark::DoNotOptimize(hk::name body);  \
  }                                                                \
  static void BM_##name##_serial(benchmark::State& state) {        \
    for (auto _ : state) benchmark::DoNotOptimize(hk::name##_serial body); \
  }                                                                \
  BENCHMARK(BM_##name)->Unit(benchmark::kMillisecond);             \
  BENCHMARK(BM_##name##_serial)->Unit(benchmark::kMillisecond)

TWIN(spiral_points, (spiral_grid(10000)));
TWIN(first_even_hits, (GaussMap(0.5), 0.5, 1.0, 20, 100000));
TWIN(ulam_rows, (1.0, 4096));
TWIN(evaluate_cross, (critical(), critical_cross(), QuadratureSpec{}));

static void BM_left_multiply(benchmark::State& state) {
  const auto& op = gauss_operator();
  std::vector<double> v(op.n_bins, 1.0 / op.n_bins), w;
  for (auto _ : state) {
    hk::left_multiply(op, v, w);
    benchmark::DoNotOptimize(w.data());
  }
}
static void BM_left_multiply_serial(benchmark::State& state) {
  const auto& op = gauss_operator();
  std::vector<double> v(op.n_bins, 1.0 / op.n_bins), w;
  for (auto _ : state) {
    hk::left_multiply_serial(op, v, w);
    benchmark::DoNotOptimize(w.data());
  }
}
BENCHMARK(BM_left_multiply)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_left_multiply_serial)->Unit(benchmark::kMillisecond);

static void BM_periodized_values(benchmark::State& state) {
  const PeriodizedSeries s(critical_annihilator());
  for (auto _ : state) benchmark::DoNotOptimize(hk::periodized_values(s, 2000));
}
static void BM_periodized_values_serial(benchmark::State& state) {
  const PeriodizedSeries s(critical_annihilator());
  for (auto _ : state) benchmark::DoNotOptimize(hk::periodized_values_serial(s, 2000));
}
BENCHMARK(BM_periodized_values)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_periodized_values_serial)->Unit(benchmark::kMillisecond);

static void BM_pairing_grid(benchmark::State& state) {
  const CandidateBasis basis = reciprocal_bin_basis(20);
  std::vector<HyperbolaMeasure> els;
  for (int b = 0; b < basis.size(); ++b) els.emplace_back(basis.m, basis.element(b));
  const auto rows = cross_points(one_branch_cross(1.0, 40, 40));
  for (auto _ : state)
    benchmark::DoNotOptimize(state.range(0) ? hk::pairing_grid(els, rows, {})
                                            : hk::pairing_grid_serial(els, rows, {}));
}
BENCHMARK(BM_pairing_grid)->Arg(1)->Arg(0)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
