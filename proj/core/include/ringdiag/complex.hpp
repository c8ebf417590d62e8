#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringdiag/module.hpp"

namespace ringdiag {

/// Bounded chain complex over one ring.  Degrees run over [lo, hi]; every
/// degree holds a finitely presented module and d(n): C_n -> C_{n-1} is a
/// matrix on generators.  Outside the window the modules are zero.
class ChainComplex {
 public:
  ChainComplex() = default;
  /// modules[i] sits in degree lo + i; differentials[i] is d(lo + i + 1).
  /// Validates every differential and d o d = 0; throws InvalidComplex.
  ChainComplex(Ring ring, int lo, std::vector<FPModule> modules, std::vector<Matrix> differentials);

  static ChainComplex zero(const Ring& ring);
  static ChainComplex free(const Ring& ring, int lo, const std::vector<std::size_t>& ranks,
                           std::vector<Matrix> differentials);
  /// R^rank in degree n.
  static ChainComplex sphere(const Ring& ring, int n, std::size_t rank = 1);
  /// R^rank in degrees n and n-1 with identity differential.
  static ChainComplex disk(const Ring& ring, int n, std::size_t rank = 1);
  static ChainComplex from_module(const FPModule& m, int degree = 0);

  const Ring& ring() const { return ring_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(modules_.size()) - 1; }
  bool empty_window() const { return modules_.empty(); }

  FPModule module(int n) const;
  std::size_t rank(int n) const;
  Matrix d(int n) const;
  /// Every degree presented without relations.
  bool is_free() const;
  bool is_zero() const;

  std::string to_string() const;

  friend bool operator==(const ChainComplex&, const ChainComplex&) = default;

 private:
  Ring ring_;
  int lo_ = 0;
  std::vector<FPModule> modules_;
  std::vector<Matrix> diffs_;  // diffs_[i] = d(lo + i + 1)
};

/// Degreewise maps f(n): source_n -> target_n commuting with differentials.
class ChainMap {
 public:
  ChainMap() = default;
  /// Missing degrees are zero; validates shapes, relations and commutation.
  ChainMap(ChainComplex source, ChainComplex target, std::map<int, Matrix> components);

  static ChainMap identity(const ChainComplex& c);
  static ChainMap zero(const ChainComplex& source, const ChainComplex& target);

  const ChainComplex& source() const { return source_; }
  const ChainComplex& target() const { return target_; }
  Matrix at(int n) const;
  int lo() const;
  int hi() const;

  /// this o first
  ChainMap after(const ChainMap& first) const;

  friend bool operator==(const ChainMap&, const ChainMap&) = default;

 private:
  ChainComplex source_;
  ChainComplex target_;
  std::map<int, Matrix> comps_;
};

/// Equal as maps, degreewise modulo the target relations.
bool chain_maps_equal(const ChainMap& f, const ChainMap& g);
ChainMap sum(const ChainMap& f, const ChainMap& g);
ChainMap negated(const ChainMap& f);

struct Homology {
  FPModule module;
  /// Generators of the homology as cycles of C_n (columns in C_n generators).
  Matrix cycles;
};

Homology homology_with_cycles(const ChainComplex& c, int n);
FPModule homology(const ChainComplex& c, int n);
/// (degree, invariants) for every degree of the window, zero degrees included.
std::vector<std::pair<int, ModuleInvariants>> homology_table(const ChainComplex& c);
bool is_acyclic(const ChainComplex& c);

/// cone(f)_n = target_n + source_{n-1}, d(x, y) = (d'x + f y, -d y).
ChainComplex cone(const ChainMap& f);
/// shift(C, k)_n = C_{n-k}, differentials unchanged.
ChainComplex shift(const ChainComplex& c, int k);
ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b);
ChainComplex direct_sum(const std::vector<ChainComplex>& parts, const Ring& ring);
/// Block maps between direct sums: entry (i, j) maps parts_src[j] to parts_dst[i].
ChainMap block_map(const std::vector<ChainComplex>& sources, const std::vector<ChainComplex>& targets,
                   const std::vector<std::vector<std::optional<ChainMap>>>& blocks);

struct QuasiIsoReport {
  bool verdict = true;
  std::vector<std::pair<int, ModuleInvariants>> cone_homology;
};

/// Cone homology in every degree of its window, or only degrees <= upto.
QuasiIsoReport quasi_iso_report(const ChainMap& f, std::optional<int> upto = std::nullopt);
bool is_quasi_iso(const ChainMap& f, std::optional<int> upto = std::nullopt);
/// Degreewise surjective.
bool is_fibration(const ChainMap& f);
/// Degreewise injective with free cokernel; throws UnsupportedShape when a
/// degree of source or target is not free.
bool is_cofibration(const ChainMap& f);
bool is_trivial_fibration(const ChainMap& f);
/// Degreewise isomorphism of modules.
bool is_chain_isomorphism(const ChainMap& f);
bool is_trivial_cofibration(const ChainMap& f);

struct KernelComplex {
  ChainComplex complex;
  ChainMap inclusion;
};
/// Degreewise kernel of f with the induced differential.
KernelComplex kernel(const ChainMap& f);
struct CokernelComplex {
  ChainComplex complex;
  ChainMap projection;
};
/// Degreewise cokernel of f (target generators, extra relations).
CokernelComplex cokernel(const ChainMap& f);

/// A map into inc.target() whose image lies in the image of the injective
/// inc, rewritten as a map into inc.source(); nullopt when it does not.
std::optional<ChainMap> factor_through(const ChainMap& inc, const ChainMap& f);

struct SimplifiedComplex {
  ChainComplex complex;
  ChainMap to_new;    // c -> complex
  ChainMap from_new;  // complex -> c
};
/// Degreewise minimal presentations; the two maps are mutually inverse.
SimplifiedComplex simplify(const ChainComplex& c);

struct Resolution {
  ChainComplex complex;    // frees in degrees [0, length]
  ChainMap augmentation;   // complex -> from_module(M, 0)
  int valid_through = 0;   // quasi-isomorphism holds in degrees <= this
};
Resolution free_resolution(const FPModule& m, int length);

ChainComplex base_change(const ChainComplex& c, const RingMap& f);
ChainMap base_change(const ChainMap& m, const RingMap& f);
/// Levelwise base change of a complex of frees (the derived functor).
ChainComplex derived_base_change(const ChainComplex& c, const RingMap& f);
ChainComplex restrict_scalars(const ChainComplex& c, const RingMap& f);
ChainMap restrict_scalars(const ChainMap& m, const RingMap& f);

struct TorResult {
  FPModule module;
  int valid_through = 0;
};
/// H_i of the base change of a length-L resolution; requires i <= L - 1.
TorResult tor(const FPModule& m, const RingMap& f, int i, int length);

}  // namespace ringdiag
