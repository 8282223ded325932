#include <benchmark/benchmark.h>

#include <random>

#include "charfol/adelic.hpp"
#include "charfol/kernels.hpp"
#include "charfol/parser.hpp"
#include "charfol/tango.hpp"

using namespace charfol;

namespace {

std::vector<gf::Elem> random_coeffs(const gf::Field& f, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<gf::Elem> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(f.from_index(static_cast<std::uint32_t>(rng() % f.order())));
  return v;
}

void BM_ConvolveSerial(benchmark::State& state) {
  auto f = gf::Field::of_order(9);
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = random_coeffs(f, n, 1), b = random_coeffs(f, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::convolve_serial(a, b, n, f));
  state.SetComplexityN(state.range(0));
}

void BM_ConvolveOmp(benchmark::State& state) {
  auto f = gf::Field::of_order(9);
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = random_coeffs(f, n, 1), b = random_coeffs(f, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::convolve_omp(a, b, n, f));
  state.SetComplexityN(state.range(0));
}

void BM_DivisorOfDx(benchmark::State& state) {
  tango::PlanarTangoCurve C(static_cast<std::uint32_t>(state.range(0)), static_cast<std::uint32_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(tango::divisor_of_dx(C, C.default_precision()).ord_Q);
}

void BM_Equivalence(benchmark::State& state) {
  auto f = gf::Field::make(3);
  auto vars = algebra::make_vars({"x", "y", "z"});
  auto A = std::make_shared<const algebra::KChart>(
      f, vars, std::vector<algebra::KPoly>{algebra::parse_k("z^2 - y^3 - x", vars, f)});
  auto dz = differentials::d(A, A->var("z"));
  auto D = foliation::kernel_of_form(dz);
  adelic::EquivalenceOptions opts;
  opts.trials = 200;
  opts.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(adelic::verify_equivalence(A, D, {dz}, opts).counterexamples);
}

}  // namespace

BENCHMARK(BM_ConvolveSerial)->RangeMultiplier(4)->Range(64, 16384)->Complexity();
BENCHMARK(BM_ConvolveOmp)->RangeMultiplier(4)->Range(64, 16384)->Complexity();
BENCHMARK(BM_DivisorOfDx)->Args({3, 2})->Args({5, 2})->Args({3, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Equivalence)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
