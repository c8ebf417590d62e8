#include "ringdiag/complex.hpp"

#include <algorithm>
#include <sstream>

#include "ringdiag/error.hpp"

namespace ringdiag {

namespace {

struct Window {
  int lo = 0;
  int hi = -1;
  bool empty() const { return hi < lo; }
};

Window window_of(const ChainComplex& c) {
  if (c.empty_window()) return {};
  return {c.lo(), c.hi()};
}

Window join(Window a, Window b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Window shifted(Window w, int k) {
  if (w.empty()) return w;
  return {w.lo + k, w.hi + k};
}

}  // namespace

ChainComplex::ChainComplex(Ring ring, int lo, std::vector<FPModule> modules, std::vector<Matrix> differentials)
    : ring_(std::move(ring)), lo_(lo), modules_(std::move(modules)), diffs_(std::move(differentials)) {
  std::size_t expected = modules_.empty() ? 0 : modules_.size() - 1;
  if (diffs_.size() != expected) {
    throw Error(ErrorCode::InvalidComplex, std::to_string(modules_.size()) + " degrees need " +
                                               std::to_string(expected) + " differentials, got " +
                                               std::to_string(diffs_.size()));
  }
  for (std::size_t i = 0; i < modules_.size(); ++i) {
    if (modules_[i].ring() != ring_) {
      throw Error(ErrorCode::RingMismatch, "degree " + std::to_string(lo_ + static_cast<int>(i)) + " is over " +
                                               modules_[i].ring().name() + ", complex is over " + ring_.name());
    }
  }
  for (auto& d : diffs_) d = d.reduced(ring_);
  for (int n = lo_ + 1; n <= hi(); ++n) {
    FPModule src = module(n);
    FPModule dst = module(n - 1);
    Matrix dn = d(n);
    if (dn.rows() != dst.generators() || dn.cols() != src.generators()) {
      throw Error(ErrorCode::InvalidComplex, "d(" + std::to_string(n) + ") has the wrong shape");
    }
    if (!is_valid_map(src, dst, dn)) {
      throw Error(ErrorCode::InvalidComplex, "d(" + std::to_string(n) + ") does not respect relations");
    }
    if (n - 1 > lo_ && !is_zero_map(module(n - 2), d(n - 1) * dn)) {
      throw Error(ErrorCode::InvalidComplex, "d(" + std::to_string(n - 1) + ") d(" + std::to_string(n) + ") != 0");
    }
  }
}

ChainComplex ChainComplex::zero(const Ring& ring) { return ChainComplex(ring, 0, {}, {}); }

ChainComplex ChainComplex::free(const Ring& ring, int lo, const std::vector<std::size_t>& ranks,
                                std::vector<Matrix> differentials) {
  std::vector<FPModule> mods;
  for (auto r : ranks) mods.push_back(FPModule::free(ring, r));
  return ChainComplex(ring, lo, std::move(mods), std::move(differentials));
}

ChainComplex ChainComplex::sphere(const Ring& ring, int n, std::size_t rank) {
  return free(ring, n, {rank}, {});
}

ChainComplex ChainComplex::disk(const Ring& ring, int n, std::size_t rank) {
  return free(ring, n - 1, {rank, rank}, {Matrix::identity(rank)});
}

ChainComplex ChainComplex::from_module(const FPModule& m, int degree) {
  return ChainComplex(m.ring(), degree, {m}, {});
}

FPModule ChainComplex::module(int n) const {
  if (n < lo_ || n > hi()) return FPModule::zero(ring_);
  return modules_[static_cast<std::size_t>(n - lo_)];
}

std::size_t ChainComplex::rank(int n) const {
  if (n < lo_ || n > hi()) return 0;
  return modules_[static_cast<std::size_t>(n - lo_)].generators();
}

Matrix ChainComplex::d(int n) const {
  if (n - 1 < lo_ || n > hi()) return Matrix(rank(n - 1), rank(n));
  return diffs_[static_cast<std::size_t>(n - lo_ - 1)];
}

bool ChainComplex::is_free() const {
  return std::none_of(modules_.begin(), modules_.end(), [](const FPModule& m) { return m.has_relations(); });
}

bool ChainComplex::is_zero() const {
  return std::all_of(modules_.begin(), modules_.end(), [](const FPModule& m) { return m.is_zero(); });
}

std::string ChainComplex::to_string() const {
  std::ostringstream os;
  os << "complex over " << ring_.name();
  for (int n = hi(); n >= lo_; --n) {
    os << "\n  C_" << n << " = R^" << rank(n);
    if (module(n).has_relations()) os << " / " << module(n).relations().to_string();
    if (n > lo_) os << ", d = " << d(n).to_string();
  }
  return os.str();
}

ChainMap::ChainMap(ChainComplex source, ChainComplex target, std::map<int, Matrix> components)
    : source_(std::move(source)), target_(std::move(target)) {
  if (source_.ring() != target_.ring()) {
    throw Error(ErrorCode::RingMismatch, "chain map from " + source_.ring().name() + " to " + target_.ring().name());
  }
  const Ring& r = target_.ring();
  for (auto& [n, m] : components) {
    if (m.rows() != target_.rank(n) || m.cols() != source_.rank(n)) {
      throw Error(ErrorCode::DimensionMismatch, "chain map component in degree " + std::to_string(n));
    }
    if (source_.rank(n) == 0 || target_.rank(n) == 0) continue;
    comps_[n] = m.reduced(r);
  }
  Window w = join(window_of(source_), window_of(target_));
  for (int n = w.lo; n <= w.hi; ++n) {
    if (!is_valid_map(source_.module(n), target_.module(n), at(n))) {
      throw Error(ErrorCode::InvalidMap, "chain map component " + std::to_string(n) + " does not respect relations");
    }
  }
  for (int n = w.lo; n <= w.hi + 1; ++n) {
    Matrix lhs = at(n - 1) * source_.d(n);
    Matrix rhs = target_.d(n) * at(n);
    if (!maps_equal(target_.module(n - 1), lhs, rhs)) {
      throw Error(ErrorCode::InvalidMap, "chain map does not commute with d(" + std::to_string(n) + ")");
    }
  }
}

ChainMap ChainMap::identity(const ChainComplex& c) {
  std::map<int, Matrix> comps;
  for (int n = c.lo(); n <= c.hi(); ++n) comps[n] = Matrix::identity(c.rank(n));
  return ChainMap(c, c, std::move(comps));
}

ChainMap ChainMap::zero(const ChainComplex& source, const ChainComplex& target) { return ChainMap(source, target, {}); }

Matrix ChainMap::at(int n) const {
  auto it = comps_.find(n);
  if (it != comps_.end()) return it->second;
  return Matrix(target_.rank(n), source_.rank(n));
}

int ChainMap::lo() const { return join(window_of(source_), window_of(target_)).lo; }
int ChainMap::hi() const { return join(window_of(source_), window_of(target_)).hi; }

ChainMap ChainMap::after(const ChainMap& first) const {
  if (first.target_.ring() != source_.ring()) throw Error(ErrorCode::RingMismatch, "composition");
  std::map<int, Matrix> comps;
  Window w = join(window_of(first.source_), window_of(target_));
  for (int n = w.lo; n <= w.hi; ++n) comps[n] = at(n) * first.at(n);
  return ChainMap(first.source_, target_, std::move(comps));
}

bool chain_maps_equal(const ChainMap& f, const ChainMap& g) {
  Window w = join(window_of(f.source()), window_of(f.target()));
  for (int n = w.lo; n <= w.hi; ++n) {
    if (!maps_equal(f.target().module(n), f.at(n), g.at(n))) return false;
  }
  return true;
}

ChainMap sum(const ChainMap& f, const ChainMap& g) {
  std::map<int, Matrix> comps;
  for (int n = f.lo(); n <= f.hi(); ++n) comps[n] = f.at(n) + g.at(n);
  return ChainMap(f.source(), f.target(), std::move(comps));
}

ChainMap negated(const ChainMap& f) {
  std::map<int, Matrix> comps;
  for (int n = f.lo(); n <= f.hi(); ++n) comps[n] = -f.at(n);
  return ChainMap(f.source(), f.target(), std::move(comps));
}

Homology homology_with_cycles(const ChainComplex& c, int n) {
  FPModule m = c.module(n);
  Homology out;
  if (m.generators() == 0) {
    out.module = FPModule::zero(c.ring());
    out.cycles = Matrix(0, 0);
    return out;
  }
  Matrix cycles = kernel_lattice(m, c.module(n - 1), c.d(n));
  Matrix boundaries = Matrix::hcat(c.d(n + 1), m.lifted_relations());
  Subobject q = lattice_quotient(c.ring(), cycles, boundaries);
  out.module = q.module;
  out.cycles = q.inclusion;
  return out;
}

FPModule homology(const ChainComplex& c, int n) { return homology_with_cycles(c, n).module; }

std::vector<std::pair<int, ModuleInvariants>> homology_table(const ChainComplex& c) {
  std::vector<std::pair<int, ModuleInvariants>> out;
  for (int n = c.lo(); n <= c.hi(); ++n) out.emplace_back(n, homology(c, n).invariants());
  return out;
}

bool is_acyclic(const ChainComplex& c) {
  for (int n = c.lo(); n <= c.hi(); ++n)
    if (!homology(c, n).is_zero()) return false;
  return true;
}

ChainComplex cone(const ChainMap& f) {
  const ChainComplex& src = f.source();
  const ChainComplex& tgt = f.target();
  Window w = join(window_of(tgt), shifted(window_of(src), 1));
  if (w.empty()) return ChainComplex::zero(tgt.ring());
  std::vector<FPModule> mods;
  std::vector<Matrix> diffs;
  for (int n = w.lo; n <= w.hi; ++n) {
    mods.push_back(direct_sum(tgt.module(n), src.module(n - 1)));
    if (n == w.lo) continue;
    std::size_t t1 = tgt.rank(n - 1), s2 = src.rank(n - 2), t0 = tgt.rank(n), s1 = src.rank(n - 1);
    Matrix d(t1 + s2, t0 + s1);
    d.set_block(0, 0, tgt.d(n));
    d.set_block(0, t0, f.at(n - 1));
    d.set_block(t1, t0, -src.d(n - 1));
    diffs.push_back(d);
  }
  return ChainComplex(tgt.ring(), w.lo, std::move(mods), std::move(diffs));
}

ChainComplex shift(const ChainComplex& c, int k) {
  std::vector<FPModule> mods;
  std::vector<Matrix> diffs;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    mods.push_back(c.module(n));
    if (n > c.lo()) diffs.push_back(c.d(n));
  }
  return ChainComplex(c.ring(), c.lo() + k, std::move(mods), std::move(diffs));
}

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) { return direct_sum({a, b}, a.ring()); }

ChainComplex direct_sum(const std::vector<ChainComplex>& parts, const Ring& ring) {
  Window w;
  for (const auto& p : parts) {
    if (p.ring() != ring) throw Error(ErrorCode::RingMismatch, "direct sum of complexes over different rings");
    w = join(w, window_of(p));
  }
  if (w.empty()) return ChainComplex::zero(ring);
  std::vector<FPModule> mods;
  std::vector<Matrix> diffs;
  for (int n = w.lo; n <= w.hi; ++n) {
    std::vector<FPModule> ms;
    std::vector<Matrix> ds;
    for (const auto& p : parts) {
      ms.push_back(p.module(n));
      ds.push_back(p.d(n));
    }
    mods.push_back(direct_sum(ms, ring));
    if (n > w.lo) diffs.push_back(Matrix::block_diag(ds));
  }
  return ChainComplex(ring, w.lo, std::move(mods), std::move(diffs));
}

ChainMap block_map(const std::vector<ChainComplex>& sources, const std::vector<ChainComplex>& targets,
                   const std::vector<std::vector<std::optional<ChainMap>>>& blocks) {
  Ring ring;
  if (!sources.empty()) {
    ring = sources.front().ring();
  } else if (!targets.empty()) {
    ring = targets.front().ring();
  }
  ChainComplex src = direct_sum(sources, ring);
  ChainComplex tgt = direct_sum(targets, ring);
  Window w = join(window_of(src), window_of(tgt));
  std::map<int, Matrix> comps;
  for (int n = w.lo; n <= w.hi; ++n) {
    Matrix m(tgt.rank(n), src.rank(n));
    std::size_t r = 0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
      std::size_t c = 0;
      for (std::size_t j = 0; j < sources.size(); ++j) {
        if (blocks[i][j]) m.set_block(r, c, blocks[i][j]->at(n));
        c += sources[j].rank(n);
      }
      r += targets[i].rank(n);
    }
    comps[n] = m;
  }
  return ChainMap(src, tgt, std::move(comps));
}

QuasiIsoReport quasi_iso_report(const ChainMap& f, std::optional<int> upto) {
  QuasiIsoReport out;
  ChainComplex c = cone(f);
  for (int n = c.lo(); n <= c.hi(); ++n) {
    if (upto && n > *upto) break;
    ModuleInvariants inv = homology(c, n).invariants();
    if (!inv.is_zero()) out.verdict = false;
    out.cone_homology.emplace_back(n, inv);
  }
  return out;
}

bool is_quasi_iso(const ChainMap& f, std::optional<int> upto) { return quasi_iso_report(f, upto).verdict; }

bool is_fibration(const ChainMap& f) {
  for (int n = f.lo(); n <= f.hi(); ++n) {
    if (!is_surjective(f.source().module(n), f.target().module(n), f.at(n))) return false;
  }
  return true;
}

bool is_cofibration(const ChainMap& f) {
  for (int n = f.lo(); n <= f.hi(); ++n) {
    FPModule s = f.source().module(n);
    FPModule t = f.target().module(n);
    if (!s.is_free() || !t.is_free()) {
      throw Error(ErrorCode::UnsupportedShape, "cofibration check needs free modules, degree " + std::to_string(n));
    }
    if (!is_injective(s, t, f.at(n))) return false;
    if (!cokernel(s, t, f.at(n)).is_free()) return false;
  }
  return true;
}

bool is_trivial_fibration(const ChainMap& f) { return is_fibration(f) && is_quasi_iso(f); }

bool is_chain_isomorphism(const ChainMap& f) {
  for (int n = f.lo(); n <= f.hi(); ++n) {
    if (!is_isomorphism(f.source().module(n), f.target().module(n), f.at(n))) return false;
  }
  return true;
}

bool is_trivial_cofibration(const ChainMap& f) { return is_cofibration(f) && is_quasi_iso(f); }

KernelComplex kernel(const ChainMap& f) {
  const ChainComplex& src = f.source();
  const Ring& ring = src.ring();
  if (src.empty_window()) {
    ChainComplex z = ChainComplex::zero(ring);
    return {z, ChainMap::zero(z, src)};
  }
  std::vector<Subobject> ks;
  for (int n = src.lo(); n <= src.hi(); ++n) ks.push_back(kernel(src.module(n), f.target().module(n), f.at(n)));
  std::vector<FPModule> mods;
  std::vector<Matrix> diffs;
  for (int n = src.lo(); n <= src.hi(); ++n) {
    const Subobject& k = ks[static_cast<std::size_t>(n - src.lo())];
    mods.push_back(k.module);
    if (n == src.lo()) continue;
    const Subobject& below = ks[static_cast<std::size_t>(n - 1 - src.lo())];
    auto y = factor_through(src.module(n - 1), below.inclusion, src.d(n) * k.inclusion);
    if (!y) throw Error(ErrorCode::Internal, "kernel complex: differential leaves the kernel");
    diffs.push_back(*y);
  }
  ChainComplex kc(ring, src.lo(), std::move(mods), std::move(diffs));
  std::map<int, Matrix> comps;
  for (int n = src.lo(); n <= src.hi(); ++n) comps[n] = ks[static_cast<std::size_t>(n - src.lo())].inclusion;
  return {kc, ChainMap(kc, src, std::move(comps))};
}

CokernelComplex cokernel(const ChainMap& f) {
  const ChainComplex& tgt = f.target();
  const Ring& ring = tgt.ring();
  if (tgt.empty_window()) {
    ChainComplex z = ChainComplex::zero(ring);
    return {z, ChainMap::zero(tgt, z)};
  }
  std::vector<FPModule> mods;
  std::vector<Matrix> diffs;
  std::map<int, Matrix> comps;
  for (int n = tgt.lo(); n <= tgt.hi(); ++n) {
    mods.push_back(cokernel(f.source().module(n), tgt.module(n), f.at(n)));
    if (n > tgt.lo()) diffs.push_back(tgt.d(n));
    comps[n] = Matrix::identity(tgt.rank(n));
  }
  ChainComplex q(ring, tgt.lo(), std::move(mods), std::move(diffs));
  return {q, ChainMap(tgt, q, std::move(comps))};
}

std::optional<ChainMap> factor_through(const ChainMap& inc, const ChainMap& f) {
  std::map<int, Matrix> comps;
  for (int n = f.lo(); n <= f.hi(); ++n) {
    if (f.source().rank(n) == 0) continue;
    auto y = factor_through(inc.target().module(n), inc.at(n), f.at(n));
    if (!y) return std::nullopt;
    comps[n] = *y;
  }
  return ChainMap(f.source(), inc.source(), std::move(comps));
}

SimplifiedComplex simplify(const ChainComplex& c) {
  SimplifiedComplex out;
  if (c.empty_window()) {
    out.complex = c;
    out.to_new = ChainMap::identity(c);
    out.from_new = out.to_new;
    return out;
  }
  std::vector<Simplified> parts;
  for (int n = c.lo(); n <= c.hi(); ++n) parts.push_back(simplify(c.module(n)));
  auto at = [&](int n) -> const Simplified& { return parts[static_cast<std::size_t>(n - c.lo())]; };
  std::vector<FPModule> modules;
  std::vector<Matrix> diffs;
  for (const auto& p : parts) modules.push_back(p.module);
  for (int n = c.lo() + 1; n <= c.hi(); ++n) diffs.push_back((at(n - 1).to_new * c.d(n) * at(n).from_new).reduced(c.ring()));
  out.complex = ChainComplex(c.ring(), c.lo(), std::move(modules), std::move(diffs));
  std::map<int, Matrix> to;
  std::map<int, Matrix> from;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    to[n] = at(n).to_new;
    from[n] = at(n).from_new;
  }
  out.to_new = ChainMap(c, out.complex, std::move(to));
  out.from_new = ChainMap(out.complex, c, std::move(from));
  return out;
}

Resolution free_resolution(const FPModule& m, int length) {
  if (length < 1) throw Error(ErrorCode::DimensionMismatch, "resolution length must be at least 1");
  const Ring& ring = m.ring();
  std::vector<std::size_t> ranks{m.generators()};
  std::vector<Matrix> diffs;
  Subobject k = kernel(FPModule::free(ring, m.generators()), m, Matrix::identity(m.generators()));
  for (int i = 1; i <= length; ++i) {
    ranks.push_back(k.module.generators());
    diffs.push_back(k.inclusion);
    if (i == length) break;
    FPModule here = FPModule::free(ring, ranks.back());
    FPModule below = FPModule::free(ring, ranks[ranks.size() - 2]);
    k = kernel(here, below, k.inclusion);
  }
  Resolution out;
  out.complex = ChainComplex::free(ring, 0, ranks, diffs);
  out.augmentation = ChainMap(out.complex, ChainComplex::from_module(m, 0), {{0, Matrix::identity(m.generators())}});
  out.valid_through = length - 1;
  return out;
}

ChainComplex base_change(const ChainComplex& c, const RingMap& f) {
  if (c.ring() != f.source()) throw Error(ErrorCode::RingMismatch, "base change: complex is not over the source");
  std::vector<FPModule> mods;
  std::vector<Matrix> diffs;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    mods.push_back(base_change(c.module(n), f));
    if (n > c.lo()) diffs.push_back(map_entries(f, c.d(n)));
  }
  return ChainComplex(f.target(), c.lo(), std::move(mods), std::move(diffs));
}

ChainMap base_change(const ChainMap& m, const RingMap& f) {
  std::map<int, Matrix> comps;
  for (int n = m.lo(); n <= m.hi(); ++n) comps[n] = map_entries(f, m.at(n));
  return ChainMap(base_change(m.source(), f), base_change(m.target(), f), std::move(comps));
}

ChainComplex derived_base_change(const ChainComplex& c, const RingMap& f) {
  if (!c.is_free()) {
    throw Error(ErrorCode::UnsupportedShape, "derived base change needs a complex of free modules; resolve first");
  }
  return base_change(c, f);
}

ChainComplex restrict_scalars(const ChainComplex& c, const RingMap& f) {
  if (c.ring() != f.target()) throw Error(ErrorCode::RingMismatch, "restriction: complex is not over the target");
  std::vector<FPModule> mods;
  std::vector<Matrix> diffs;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    mods.push_back(restrict_scalars(c.module(n), f));
    if (n > c.lo()) diffs.push_back(lift_entries(f, c.d(n)));
  }
  return ChainComplex(f.source(), c.lo(), std::move(mods), std::move(diffs));
}

ChainMap restrict_scalars(const ChainMap& m, const RingMap& f) {
  std::map<int, Matrix> comps;
  for (int n = m.lo(); n <= m.hi(); ++n) comps[n] = lift_entries(f, m.at(n));
  return ChainMap(restrict_scalars(m.source(), f), restrict_scalars(m.target(), f), std::move(comps));
}

TorResult tor(const FPModule& m, const RingMap& f, int i, int length) {
  if (i < 0 || i > length - 1) {
    throw Error(ErrorCode::DimensionMismatch,
                "Tor_" + std::to_string(i) + " needs resolution length above " + std::to_string(i));
  }
  Resolution res = free_resolution(m, length);
  ChainComplex bc = derived_base_change(res.complex, f);
  return {homology(bc, i), res.valid_through};
}

}  // namespace ringdiag
