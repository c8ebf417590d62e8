#include <benchmark/benchmark.h>

#include <random>

#include "ringdiag/complex.hpp"
#include "ringdiag/smith.hpp"

using namespace ringdiag;

namespace {

Matrix random_matrix(std::mt19937_64& g, std::size_t rows, std::size_t cols, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rational(d(g));
  return m;
}

void BM_SmithIntegers(benchmark::State& state) {
  std::mt19937_64 g(7);
  const auto n = static_cast<std::size_t>(state.range(0));
  Matrix m = random_matrix(g, n, n, 30);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(Ring::integers(), m));
}
BENCHMARK(BM_SmithIntegers)->Arg(3)->Arg(5)->Arg(10)->Arg(20);

void BM_SmithLocalized(benchmark::State& state) {
  std::mt19937_64 g(8);
  const auto n = static_cast<std::size_t>(state.range(0));
  Matrix m = random_matrix(g, n, n, 30);
  Ring r = Ring::localized({2, 3});
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(r, m));
}
BENCHMARK(BM_SmithLocalized)->Arg(5)->Arg(10);

// d_1 d_2 = 0 by taking d_1 = A and d_2 = a kernel basis of A.
ChainComplex three_term(std::size_t n) {
  std::mt19937_64 g(9);
  Ring z = Ring::integers();
  Matrix a = random_matrix(g, n, n, 5);
  for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = a(0, j) * 2;  // force a kernel
  Matrix k = kernel_basis(z, a);
  return ChainComplex::free(z, 0, {n, n, k.cols()}, {a, k});
}

void BM_Homology(benchmark::State& state) {
  ChainComplex c = three_term(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(homology_table(c));
}
BENCHMARK(BM_Homology)->Arg(4)->Arg(8)->Arg(16);

void BM_Resolution(benchmark::State& state) {
  FPModule m = FPModule::cyclic(Ring::make({}, 8), 2);
  for (auto _ : state) benchmark::DoNotOptimize(free_resolution(m, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Resolution)->Arg(4)->Arg(8);

}  // namespace
