#include "ringdiag/holim.hpp"

#include <algorithm>

#include "ringdiag/error.hpp"

namespace ringdiag {

namespace {

RingMap to_object(const Ring& base, const ModuleDiagram& x, const std::string& s) {
  if (auto why = RingMap::obstruction(base, x.rings().ring(s))) {
    throw Error(ErrorCode::NoCanonicalMap, "holim base to '" + s + "': " + *why);
  }
  RingMap a = RingMap::canonical(base, x.rings().ring(s));
  if (!a.is_module_finite()) {
    throw Error(ErrorCode::NotModuleFinite,
                "holim: " + a.target().name() + " at '" + s + "' is not finite over " + base.name());
  }
  return a;
}

// Summand bookkeeping for Tot_N: one entry per (k, chain).
struct Layout {
  std::vector<std::vector<std::vector<std::string>>> chains;  // by k
  std::map<std::string, ChainComplex> restricted;             // restrict(X(s)) over base
  int lo = 0;
  int hi = -1;

  std::size_t rank(const std::vector<std::string>& chain, int m) const { return restricted.at(chain.back()).rank(m); }
  // Offset of chain index c in cosimplicial degree k within Tot_N.
  std::size_t offset(int n, int k, std::size_t c) const {
    std::size_t r = 0;
    for (int j = 0; j < k; ++j)
      for (const auto& ch : chains[static_cast<std::size_t>(j)]) r += rank(ch, n + j);
    for (std::size_t i = 0; i < c; ++i) r += rank(chains[static_cast<std::size_t>(k)][i], n + k);
    return r;
  }
  std::size_t total(int n) const { return offset(n, static_cast<int>(chains.size()), 0); }
};

Layout layout_of(const ModuleDiagram& x, const Ring& base) {
  Layout l;
  const FiniteCategory& cat = x.shape();
  linear_extension(cat, Direction::Inverse);
  std::size_t longest = longest_chain(cat);
  for (std::size_t k = 0; k <= longest; ++k) l.chains.push_back(chains(cat, k));
  bool any = false;
  for (const auto& s : cat.objects()) {
    ChainComplex r = restrict_scalars(x.value(s), to_object(base, x, s));
    if (!r.empty_window()) {
      if (!any) {
        l.lo = r.lo();
        l.hi = r.hi();
        any = true;
      } else {
        l.lo = std::min(l.lo, r.lo());
        l.hi = std::max(l.hi, r.hi());
      }
    }
    l.restricted[s] = r;
  }
  if (any) l.lo -= static_cast<int>(longest);
  return l;
}

std::size_t chain_index(const std::vector<std::vector<std::string>>& list, const std::vector<std::string>& chain) {
  return static_cast<std::size_t>(std::find(list.begin(), list.end(), chain) - list.begin());
}

}  // namespace

Totalization bk_totalization(const ModuleDiagram& x, const Ring& base) {
  Layout l = layout_of(x, base);
  const int kmax = static_cast<int>(l.chains.size()) - 1;
  std::vector<FPModule> modules;
  std::vector<Matrix> diffs;
  for (int n = l.lo; n <= l.hi; ++n) {
    std::vector<FPModule> parts;
    for (int k = 0; k <= kmax; ++k)
      for (const auto& ch : l.chains[static_cast<std::size_t>(k)]) parts.push_back(l.restricted.at(ch.back()).module(n + k));
    modules.push_back(direct_sum(parts, base));
  }
  for (int n = l.lo + 1; n <= l.hi; ++n) {
    Matrix d(l.total(n - 1), l.total(n));
    for (int k = 0; k <= kmax; ++k) {
      const auto& ck = l.chains[static_cast<std::size_t>(k)];
      const int m = n + k;
      const Rational sign = (k % 2 == 0) ? Rational(1) : Rational(-1);
      for (std::size_t c = 0; c < ck.size(); ++c) {
        const ChainComplex& r = l.restricted.at(ck[c].back());
        d.set_block(l.offset(n - 1, k, c), l.offset(n, k, c), r.d(m).scaled(sign));
      }
      if (k == kmax) continue;
      // delta: C^k_m -> C^{k+1}_m, summed over the faces of each (k+1)-chain.
      const auto& next = l.chains[static_cast<std::size_t>(k + 1)];
      for (std::size_t c = 0; c < next.size(); ++c) {
        const auto& sigma = next[c];
        const std::size_t row = l.offset(n - 1, k + 1, c);
        for (int i = 0; i <= k + 1; ++i) {
          std::vector<std::string> face = sigma;
          face.erase(face.begin() + i);
          const std::size_t col = l.offset(n, k, chain_index(ck, face));
          const Rational s = (i % 2 == 0) ? Rational(1) : Rational(-1);
          if (i <= k) {
            d.set_block(row, col, Matrix::identity(l.restricted.at(sigma.back()).rank(m)).scaled(s));
          } else {
            const std::string& from = sigma[static_cast<std::size_t>(k)];
            const std::string& to = sigma[static_cast<std::size_t>(k + 1)];
            Matrix push = lift_entries(to_object(base, x, to), x.structure(from, to).at(m));
            d.set_block(row, col, push.scaled(s));
          }
        }
      }
    }
    diffs.push_back(d);
  }
  Totalization out;
  out.chains = l.chains;
  if (modules.empty()) {
    out.complex = ChainComplex::zero(base);
  } else {
    out.complex = ChainComplex(base, l.lo, std::move(modules), std::move(diffs));
  }
  return out;
}

ChainComplex bk_holim(const ModuleDiagram& x, const Ring& base) { return bk_totalization(x, base).complex; }

ChainMap bk_holim_map(const DiagramMap& f, const Ring& base) {
  Layout ls = layout_of(f.source(), base);
  Layout lt = layout_of(f.target(), base);
  ChainComplex src = bk_holim(f.source(), base);
  ChainComplex tgt = bk_holim(f.target(), base);
  std::map<int, Matrix> comps;
  const int lo = std::min(ls.lo, lt.lo);
  const int hi = std::max(ls.hi, lt.hi);
  for (int n = lo; n <= hi; ++n) {
    Matrix m(tgt.rank(n), src.rank(n));
    for (std::size_t k = 0; k < ls.chains.size(); ++k) {
      const auto& ck = ls.chains[k];
      const int deg = n + static_cast<int>(k);
      for (std::size_t c = 0; c < ck.size(); ++c) {
        const std::string& s = ck[c].back();
        Matrix block = lift_entries(to_object(base, f.source(), s), f.at(s).at(deg));
        if (block.rows() == 0 || block.cols() == 0) continue;
        m.set_block(lt.offset(n, static_cast<int>(k), c), ls.offset(n, static_cast<int>(k), c), block);
      }
    }
    comps[n] = m;
  }
  return ChainMap(src, tgt, std::move(comps));
}

ChainComplex homotopy_pullback(const ChainMap& f, const ChainMap& g) {
  const ChainComplex& a = f.source();
  const ChainComplex& b = g.source();
  const ChainComplex& c = f.target();
  if (!(g.target() == c)) throw Error(ErrorCode::InvalidMap, "homotopy pullback: the two maps have different targets");
  const Ring& ring = c.ring();
  if (a.ring() != ring || b.ring() != ring) throw Error(ErrorCode::RingMismatch, "homotopy pullback over mixed rings");
  int lo = 0;
  int hi = -1;
  bool any = false;
  auto widen = [&](int l, int h) {
    if (l > h) return;
    if (!any) {
      lo = l;
      hi = h;
      any = true;
    } else {
      lo = std::min(lo, l);
      hi = std::max(hi, h);
    }
  };
  if (!a.empty_window()) widen(a.lo(), a.hi());
  if (!b.empty_window()) widen(b.lo(), b.hi());
  if (!c.empty_window()) widen(c.lo() - 1, c.hi() - 1);
  if (!any) return ChainComplex::zero(ring);
  std::vector<FPModule> modules;
  std::vector<Matrix> diffs;
  for (int n = lo; n <= hi; ++n) modules.push_back(direct_sum({a.module(n), b.module(n), c.module(n + 1)}, ring));
  for (int n = lo + 1; n <= hi; ++n) {
    const std::size_t an = a.rank(n), bn = b.rank(n), cn = c.rank(n + 1);
    const std::size_t am = a.rank(n - 1), bm = b.rank(n - 1), cm = c.rank(n);
    Matrix d(am + bm + cm, an + bn + cn);
    d.set_block(0, 0, a.d(n));
    d.set_block(am, an, b.d(n));
    d.set_block(am + bm, 0, f.at(n));
    d.set_block(am + bm, an, -g.at(n));
    d.set_block(am + bm, an + bn, -c.d(n + 1));
    diffs.push_back(d);
  }
  return ChainComplex(ring, lo, std::move(modules), std::move(diffs));
}

}  // namespace ringdiag
