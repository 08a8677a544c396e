#include <benchmark/benchmark.h>

#include "defekt/census.hh"
#include "defekt/defect.hh"

using namespace defekt;

namespace {

const char* kNineNode =
    "x0*(x2*(x2-x4)*(x2-2*x4) + x0*(x0*x2 + x1*x4 + x3^2) + x1*(x1*x3 + x0*x4 + x2*x4))"
    " + x1*(x3*(x3-x4)*(x3-2*x4) + x0*(x0*x3 + x1*x2 + x4^2) + x1*(x1*x4 + x0*x2 + x2*x3))";

std::string fermat(int nvars, int m) {
  std::string s;
  for (int i = 0; i < nvars; ++i) s += (i ? "+x" : "x") + std::to_string(i) + "^" + std::to_string(m);
  return s;
}

}  // namespace

// Reduced basis of (F, dF) for a dense random form over F_32003.
void BM_JacobianBasis(benchmark::State& state) {
  const int nvars = static_cast<int>(state.range(0));
  const unsigned m = static_cast<unsigned>(state.range(1));
  SplitMix64 rng(7);
  auto F = random_form(GaloisField::get(32003, 1), nvars, m, rng);
  auto gens = singular_ideal(F);
  for (auto _ : state) benchmark::DoNotOptimize(buchberger(gens));
}
BENCHMARK(BM_JacobianBasis)->Args({3, 6})->Args({4, 3})->Args({4, 4})->Args({5, 3})->Unit(benchmark::kMillisecond);

void BM_ModularBasis(benchmark::State& state) {
  auto F = parse_poly("x0*(x1^2+x2^2+x3^2+x4^2) + x1^3+x2^3+x3^3+x4^3", Rationals::instance(), 5);
  auto gens = jacobian_power_ideal(dehomogenize(F, 1), 1);
  for (auto _ : state) benchmark::DoNotOptimize(modular_groebner(gens));
}
BENCHMARK(BM_ModularBasis)->Unit(benchmark::kMillisecond);

void BM_NineNodeLocus(benchmark::State& state) {
  auto F = parse_poly(kNineNode, Rationals::instance(), 5);
  for (auto _ : state) benchmark::DoNotOptimize(singular_locus(F));
}
BENCHMARK(BM_NineNodeLocus)->Unit(benchmark::kMillisecond);

void BM_NineNodeDefect(benchmark::State& state) {
  auto F = parse_poly(kNineNode, Rationals::instance(), 5);
  auto loc = singular_locus(F);
  for (auto _ : state) benchmark::DoNotOptimize(nodal_defect(F, loc));
}
BENCHMARK(BM_NineNodeDefect)->Unit(benchmark::kMillisecond);

void BM_ConeDefect(benchmark::State& state) {
  auto G = parse_poly(fermat(3, static_cast<int>(state.range(0))), Rationals::instance(), 3);
  for (auto _ : state) benchmark::DoNotOptimize(cone_defect(G));
}
BENCHMARK(BM_ConeDefect)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

// Per-form cost of the density census: random plane sextics and cubic surfaces over F_3.
void BM_ClassifyForm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  const std::size_t len = monomials_of_degree(n + 1, d).size();
  SplitMix64 rng(42);
  std::vector<std::uint64_t> coeffs(len);
  for (auto _ : state) {
    for (auto& c : coeffs) c = rng.uniform(3);
    benchmark::DoNotOptimize(classify_form(n, 3, d, coeffs));
  }
}
BENCHMARK(BM_ClassifyForm)->Args({2, 6})->Args({3, 3})->Args({3, 5})->Unit(benchmark::kMicrosecond);

void BM_QuadBrute(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(quad_count_brute(n, 3));
}
BENCHMARK(BM_QuadBrute)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_JetCensus(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(jet_census(3, 3));
}
BENCHMARK(BM_JetCensus)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
