// Microbenchmarks for the core pipeline stages, on the configurations used
// throughout the test suite.

#include <benchmark/benchmark.h>

#include <random>

#include "toric_limits/degeneration.hpp"
#include "toric_limits/hausdorff.hpp"
#include "toric_limits/secondary_fan.hpp"
#include "toric_limits/subdivision.hpp"
#include "toric_limits/toric_variety.hpp"

using namespace toric_limits;

namespace {

PointConfiguration pentagon() {
  return new_configuration(
      2, {"0,0", "1,0", "1,1", "1/2,3/2", "0,1"},
      {{Rational(0), Rational(0)},
       {Rational(1), Rational(0)},
       {Rational(1), Rational(1)},
       {Rational(1, 2), Rational(3, 2)},
       {Rational(0), Rational(1)}});
}

PointConfiguration grid3x3() {
  std::vector<std::string> labels;
  std::vector<QVec> pts;
  for (int y = 0; y <= 2; ++y)
    for (int x = 0; x <= 2; ++x) {
      labels.push_back(std::to_string(x) + "," + std::to_string(y));
      pts.push_back({Rational(x), Rational(y)});
    }
  return new_configuration(2, labels, pts);
}

QVec random_lift(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> U(-5000, 5000);
  QVec v;
  for (int i = 0; i < n; ++i) {
    Rational q(U(rng), 1000);
    q.canonicalize();
    v.push_back(q);
  }
  return v;
}

}  // namespace

static void BM_induced_subdivision_pentagon(benchmark::State& state) {
  auto A = pentagon();
  std::mt19937_64 rng(0);
  std::vector<QVec> lifts;
  for (int k = 0; k < 64; ++k) lifts.push_back(random_lift(rng, A.size()));
  size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(induced_subdivision(A, lifts[k++ % lifts.size()]));
  }
}
BENCHMARK(BM_induced_subdivision_pentagon);

static void BM_induced_subdivision_grid(benchmark::State& state) {
  auto A = grid3x3();
  std::mt19937_64 rng(1);
  std::vector<QVec> lifts;
  for (int k = 0; k < 64; ++k) lifts.push_back(random_lift(rng, A.size()));
  size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(induced_subdivision(A, lifts[k++ % lifts.size()]));
  }
}
BENCHMARK(BM_induced_subdivision_grid);

static void BM_secondary_cone(benchmark::State& state) {
  auto A = pentagon();
  Subdivision tau3{{{0, 1, 2}, {0, 2, 4}, {2, 3, 4}}, {}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(secondary_cone(A, tau3));
  }
}
BENCHMARK(BM_secondary_cone);

static void BM_birch_inverse(benchmark::State& state) {
  auto A = grid3x3();
  auto w = WeightVector::from_logs({0.4, -1.2, 0.3, 2.1, -0.7, 0.0, 1.4, -2.2, 0.9});
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(0.05, 1.95);
  std::vector<std::vector<double>> targets;
  for (int k = 0; k < 256; ++k) targets.push_back({U(rng), U(rng)});
  size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(birch_inverse(A, w, targets[k++ % targets.size()]));
  }
}
BENCHMARK(BM_birch_inverse);

static void BM_sample_variety(benchmark::State& state) {
  auto A = pentagon();
  auto w = WeightVector::from_logs({0.3, -0.8, 0.1, 0.4, -0.2});
  double mesh = 1.0 / double(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_variety(A, w, mesh));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_sample_variety)->Arg(5)->Arg(10)->Arg(20);

static void BM_hausdorff(benchmark::State& state) {
  auto A = pentagon();
  auto X = sample_variety(A, WeightVector::from_logs({0.3, -0.8, 0.1, 0.4, -0.2}),
                          1.0 / double(state.range(0)));
  auto Y = sample_variety(A, WeightVector::from_logs({-0.5, 0.2, 0.9, -1.1, 0.6}),
                          1.0 / double(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hausdorff(X, Y));
  }
}
BENCHMARK(BM_hausdorff)->Arg(10)->Arg(20);

static void BM_complex_sample(benchmark::State& state) {
  auto A = pentagon();
  Subdivision rho4{{{0, 1, 2, 4}, {2, 3, 4}}, {}};
  auto w = WeightVector::from_logs({0, -1, 0, 0, 0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(complex_sample(A, rho4, w, 0.1));
  }
}
BENCHMARK(BM_complex_sample);

static void BM_sequence_limit(benchmark::State& state) {
  auto A = pentagon();
  SequenceSpec seq;
  seq.mode = SequenceSpec::Mode::structured;
  for (const char* e : {"-i - 1/i", "i - 1", "i", "-i/2", "-i"})
    seq.structured.growth.push_back(parse_growth_expression(e));
  seq.structured.declared_bound = 10;
  seq.structured.samples = {1, 2, 4, 8, 16, 32, 64, 128, 256};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sequence_limit(A, seq, 0.2, 0.2));
  }
}
BENCHMARK(BM_sequence_limit);

BENCHMARK_MAIN();
