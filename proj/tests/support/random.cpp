#include "random.hpp"

#include <algorithm>
#include <map>

#include "ringdiag/smith.hpp"

namespace gen {

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
  return m;
}

FiniteCategory random_poset(Rng& rng, std::size_t n, double p) {
  std::vector<std::string> objs;
  for (std::size_t i = 0; i < n; ++i) objs.push_back("o" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> arrows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.coin(p)) arrows.emplace_back(objs[i], objs[j]);
  return FiniteCategory::make(objs, arrows);
}

FiniteCategory random_inverse_poset(Rng& rng, std::size_t n, double p) { return random_poset(rng, n, p).opposite(); }

namespace {

// Objects in an order where every arrow goes forward.
std::vector<std::string> forward_order(const FiniteCategory& cat) {
  return linear_extension(cat, Direction::Direct).order;
}

}  // namespace

RingDiagram localization_diagram(Rng& rng, const FiniteCategory& cat) {
  const std::vector<long> primes{2, 3, 5};
  std::map<std::string, std::vector<Integer>> sets;
  for (const auto& s : forward_order(cat)) {
    std::vector<Integer> mine;
    for (long p : primes)
      if (rng.coin(0.3)) mine.push_back(p);
    for (const auto& u : cat.arrows_into(s)) mine.insert(mine.end(), sets[u].begin(), sets[u].end());
    std::sort(mine.begin(), mine.end());
    mine.erase(std::unique(mine.begin(), mine.end()), mine.end());
    sets[s] = mine;
  }
  std::map<std::string, Ring> rings;
  for (const auto& [s, set] : sets) rings[s] = Ring::make(set);
  return RingDiagram(cat, rings);
}

RingDiagram quotient_diagram(Rng& rng, const FiniteCategory& cat) {
  std::map<std::string, std::pair<int, int>> exps;  // powers of 2 and 3
  for (const auto& s : forward_order(cat)) {
    int a = rng.uniform(1, 3);
    int b = rng.uniform(0, 1);
    for (const auto& u : cat.arrows_into(s)) {
      a = std::min(a, exps[u].first);
      b = std::min(b, exps[u].second);
    }
    exps[s] = {a, b};
  }
  std::map<std::string, Ring> rings;
  for (const auto& [s, e] : exps) {
    long m = 1;
    for (int i = 0; i < e.first; ++i) m *= 2;
    for (int i = 0; i < e.second; ++i) m *= 3;
    rings[s] = Ring::make({}, m);
  }
  return RingDiagram(cat, rings);
}

ChainComplex random_free_complex(Rng& rng, const Ring& ring, int lo, int terms, std::size_t max_rank) {
  if (ring.is_quotient()) terms = std::min(terms, 2);
  std::vector<std::size_t> ranks;
  for (int i = 0; i < terms; ++i) ranks.push_back(static_cast<std::size_t>(rng.uniform(0, static_cast<int>(max_rank))));
  std::vector<Matrix> diffs;
  for (int i = 1; i < terms; ++i) {
    if (i == 1) {
      diffs.push_back(random_matrix(rng, ranks[0], ranks[1], -3, 3).reduced(ring));
      continue;
    }
    // columns drawn from the kernel of the previous differential
    Matrix k = kernel_basis(ring, diffs.back());
    Matrix mix = random_matrix(rng, k.cols(), ranks[static_cast<std::size_t>(i)], -2, 2);
    diffs.push_back(k.cols() == 0 ? Matrix(ranks[static_cast<std::size_t>(i) - 1], ranks[static_cast<std::size_t>(i)])
                                  : (k * mix).reduced(ring));
  }
  return ChainComplex::free(ring, lo, ranks, diffs);
}

ChainComplex random_complex(Rng& rng, const Ring& ring, int lo) {
  std::vector<FPModule> mods;
  for (int i = 0; i < 2; ++i) {
    std::size_t g = static_cast<std::size_t>(rng.uniform(0, 2));
    std::size_t r = g == 0 ? 0 : static_cast<std::size_t>(rng.uniform(0, 1));
    mods.emplace_back(ring, g, random_matrix(rng, g, r, -4, 4));
  }
  // any map lands in a valid one once the source relations map into target
  // relations: use the zero map or, when the source is free, a random one
  Matrix d(mods[0].generators(), mods[1].generators());
  if (!mods[1].has_relations()) d = random_matrix(rng, d.rows(), d.cols(), -3, 3).reduced(ring);
  if (!is_valid_map(mods[1], mods[0], d)) d = Matrix(d.rows(), d.cols());
  return ChainComplex(ring, lo, mods, {d});
}

namespace {

ModuleDiagram sum_of_frees(Rng& rng, const RingDiagram& rings, bool free) {
  const auto& objs = rings.shape().objects();
  if (objs.empty()) return ModuleDiagram::zero(rings);
  std::vector<ModuleDiagram> parts;
  const int count = rng.uniform(1, 3);
  for (int i = 0; i < count; ++i) {
    const std::string& s = rng.pick(objs);
    ChainComplex a = free ? random_free_complex(rng, rings.ring(s), 0, rng.uniform(1, 2))
                          : random_complex(rng, rings.ring(s), 0);
    parts.push_back(free_diagram(rings, s, a));
  }
  return direct_sum(parts, rings);
}

}  // namespace

ModuleDiagram random_free_diagram(Rng& rng, const RingDiagram& rings) { return sum_of_frees(rng, rings, true); }
ModuleDiagram random_diagram(Rng& rng, const RingDiagram& rings) { return sum_of_frees(rng, rings, false); }

FPModule random_fracture_module(Rng& rng, const Ring& base) {
  const std::vector<long> primes{2, 3, 5, 7};
  ModuleInvariants inv;
  inv.free_rank = static_cast<std::size_t>(rng.uniform(0, 2));
  std::size_t g = inv.free_rank;
  std::vector<Integer> orders;
  const int k = rng.uniform(0, 3);
  for (int i = 0; i < k; ++i) {
    Integer q = 1;
    long p = rng.pick(primes);
    for (int e = rng.uniform(1, 3); e > 0; --e) q *= p;
    orders.push_back(q);
  }
  Matrix rel(g + orders.size(), orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) rel(g + i, i) = Rational(orders[i]);
  return FPModule(base, g + orders.size(), rel);
}

}  // namespace gen
