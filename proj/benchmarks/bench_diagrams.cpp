#include <benchmark/benchmark.h>

#include "ringdiag/fracture.hpp"
#include "ringdiag/holim.hpp"
#include "ringdiag/kan.hpp"

using namespace ringdiag;

namespace {

FiniteCategory cospan() { return FiniteCategory::make({"0", "01", "1"}, {{"0", "01"}, {"1", "01"}}); }

// Objects 0 < 1 < ... < n-1 in a line.
FiniteCategory chain(int n) {
  std::vector<std::string> objs;
  std::vector<std::pair<std::string, std::string>> arrows;
  for (int i = 0; i < n; ++i) objs.push_back("o" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) arrows.emplace_back(objs[i], objs[i + 1]);
  return FiniteCategory::make(objs, arrows);
}

void BM_HolimCospan(benchmark::State& state) {
  RingDiagram sq(cospan(), {{"0", Ring::make({}, 8)}, {"01", Ring::make({}, 2)}, {"1", Ring::make({}, 12)}});
  ModuleDiagram x = free_diagram(sq, "0", ChainComplex::free(Ring::make({}, 8), 0, {static_cast<std::size_t>(state.range(0))}, {}));
  Ring base = Ring::make({}, 24);
  for (auto _ : state) benchmark::DoNotOptimize(bk_holim(x, base));
}
BENCHMARK(BM_HolimCospan)->Arg(1)->Arg(2)->Arg(4);

void BM_HomotopyPullback(benchmark::State& state) {
  Ring z = Ring::integers();
  ChainComplex a = ChainComplex::free(z, 0, {2, 2}, {Matrix{{2, 0}, {0, 3}}});
  ChainComplex b = ChainComplex::sphere(z, 0);
  ChainComplex c = ChainComplex::free(z, 0, {1, 1}, {Matrix{{6}}});
  ChainMap f(a, c, {{0, Matrix{{3, 2}}}, {1, Matrix{{1, 1}}}});
  ChainMap g(b, c, {{0, Matrix{{1}}}});
  for (auto _ : state) benchmark::DoNotOptimize(homology_table(homotopy_pullback(f, g)));
}
BENCHMARK(BM_HomotopyPullback);

void BM_LeftKanChain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  FiniteCategory e = chain(n);
  RingDiagram rings = RingDiagram::constant(e, Ring::localized({2}));
  std::vector<std::string> half;
  for (int i = 0; i < n; i += 2) half.push_back("o" + std::to_string(i));
  Inclusion d = Inclusion::full(e, half);
  ModuleDiagram x = ModuleDiagram::tautological(rings.restricted(d));
  for (auto _ : state) benchmark::DoNotOptimize(left_kan_extension(d, rings, x));
}
BENCHMARK(BM_LeftKanChain)->Arg(3)->Arg(5);

void BM_FractureReconstruct(benchmark::State& state) {
  LocalizationSquare sq({}, 2, 3);
  FPModule m = FPModule::from_invariants(Ring::integers(), {static_cast<std::size_t>(state.range(0)), {12, 360}});
  for (auto _ : state) benchmark::DoNotOptimize(fracture_reconstruct(m, sq));
}
BENCHMARK(BM_FractureReconstruct)->Arg(1)->Arg(3);

void BM_TruncationOracle(benchmark::State& state) {
  LocalizationSquare sq({}, 2, 3);
  FPModule m = FPModule::from_invariants(Ring::integers(), {1, {8, 9}});
  for (auto _ : state) benchmark::DoNotOptimize(truncation_oracle(m, sq, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_TruncationOracle)->Arg(1)->Arg(2);

}  // namespace
BENCHMARK_MAIN();
