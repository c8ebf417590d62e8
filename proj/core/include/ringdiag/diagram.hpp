#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringdiag/category.hpp"
#include "ringdiag/complex.hpp"

namespace ringdiag {

/// A ring for every object and the canonical ring map for every arrow.
class RingDiagram {
 public:
  RingDiagram() = default;
  /// Throws UnknownObject for missing objects and NoCanonicalMap when an arrow
  /// has no ring map.
  RingDiagram(FiniteCategory shape, std::map<std::string, Ring> rings);
  /// Every object carries the same ring.
  static RingDiagram constant(const FiniteCategory& shape, const Ring& ring);

  const FiniteCategory& shape() const { return shape_; }
  const Ring& ring(const std::string& s) const;
  /// R(s -> t); the identity for s == t.  Throws UnknownObject when there is
  /// no arrow.
  RingMap map(const std::string& s, const std::string& t) const;
  RingDiagram restricted(const Inclusion& incl) const;

  friend bool operator==(const RingDiagram&, const RingDiagram&) = default;

 private:
  FiniteCategory shape_;
  std::map<std::string, Ring> rings_;
};

using ArrowKey = std::pair<std::string, std::string>;

/// A complex X(s) over R(s) for every object and, for every non-identity
/// arrow a: s -> t, a structure map a_* X(s) -> X(t) over R(t).
class ModuleDiagram {
 public:
  ModuleDiagram() = default;
  /// Structure maps must be given for every non-identity arrow.  Throws
  /// TransitivityViolation, RingMismatch, InvalidMap.
  ModuleDiagram(RingDiagram rings, std::map<std::string, ChainComplex> values,
                std::map<ArrowKey, ChainMap> structure);
  /// Structure maps given on generating arrows only; composites are formed.
  static ModuleDiagram from_generators(RingDiagram rings, std::map<std::string, ChainComplex> values,
                                       const std::map<ArrowKey, ChainMap>& generators);
  static ModuleDiagram zero(const RingDiagram& rings);
  /// X(s) = base change of `c` along R(base -> s) for an object `base`
  /// sending an arrow to every object, structure maps the identities.
  static ModuleDiagram induced(const RingDiagram& rings, const ChainComplex& c);
  /// The ring diagram as a module over itself: R(s) in degree 0.
  static ModuleDiagram tautological(const RingDiagram& rings);

  const RingDiagram& rings() const { return rings_; }
  const FiniteCategory& shape() const { return rings_.shape(); }
  const ChainComplex& value(const std::string& s) const;
  /// X~(s -> t); the identity for s == t.
  ChainMap structure(const std::string& s, const std::string& t) const;
  /// The right-adjoint form X(s) -> restrict X(t), over R(s); throws
  /// NotModuleFinite when R(s -> t) is not module-finite.
  ChainMap adjoint_structure(const std::string& s, const std::string& t) const;

  friend bool operator==(const ModuleDiagram&, const ModuleDiagram&) = default;

 private:
  RingDiagram rings_;
  std::map<std::string, ChainComplex> values_;
  std::map<ArrowKey, ChainMap> structure_;
};

struct ValidationReport {
  std::vector<std::string> squares;  // "c = b o b_*(a)" checks performed
};
/// Rechecks every transitivity square; throws TransitivityViolation.
ValidationReport validate_diagram(const ModuleDiagram& x);

/// Componentwise chain maps commuting with the structure maps.
class DiagramMap {
 public:
  DiagramMap() = default;
  /// Throws InvalidMap when a naturality square fails.
  DiagramMap(ModuleDiagram source, ModuleDiagram target, std::map<std::string, ChainMap> components);
  static DiagramMap identity(const ModuleDiagram& x);
  static DiagramMap zero(const ModuleDiagram& source, const ModuleDiagram& target);

  const ModuleDiagram& source() const { return source_; }
  const ModuleDiagram& target() const { return target_; }
  const ChainMap& at(const std::string& s) const { return comps_.at(s); }
  DiagramMap after(const DiagramMap& first) const;

 private:
  ModuleDiagram source_;
  ModuleDiagram target_;
  std::map<std::string, ChainMap> comps_;
};

bool diagram_maps_equal(const DiagramMap& f, const DiagramMap& g);
bool is_objectwise_quasi_iso(const DiagramMap& f);

ModuleDiagram direct_sum(const std::vector<ModuleDiagram>& parts, const RingDiagram& rings);
/// Block map between direct sums; a missing block is zero.
DiagramMap block_map(const std::vector<ModuleDiagram>& sources, const std::vector<ModuleDiagram>& targets,
                     const std::vector<std::vector<std::optional<DiagramMap>>>& blocks);
struct DiagramCokernel {
  ModuleDiagram diagram;
  DiagramMap projection;
};
/// Objectwise cokernel; the structure maps are those of the target.
DiagramCokernel cokernel(const DiagramMap& f);
struct DiagramPushout {
  ModuleDiagram diagram;
  DiagramMap from_left;   // X -> P
  DiagramMap from_right;  // Y -> P
};
/// The pushout of X <- Z -> Y, objectwise the cokernel of Z -> X + Y,
/// z -> (g z, -h z).
DiagramPushout pushout(const DiagramMap& g, const DiagramMap& h);

struct SimplifiedDiagram {
  ModuleDiagram diagram;
  DiagramMap to_new;
  DiagramMap from_new;
};
/// Minimal presentations at every object, structure maps transported.
SimplifiedDiagram simplify(const ModuleDiagram& x);

// Colimits and limits over families of arrows into / out of one object.

/// colim over the arrows s -> t (s in `sources`) of
/// (s -> t)_* X(s); X may live on a subcategory of rings().shape().
struct ArrowColimit {
  std::vector<std::string> sources;
  ChainComplex sum;             // the direct sum of the summands
  ChainComplex object;          // the colimit, a cokernel of `sum`
  ChainMap projection;          // sum -> object (identity matrices)
  std::vector<ChainComplex> summands;
};
ArrowColimit arrow_colimit(const RingDiagram& rings, const ModuleDiagram& x, const std::vector<std::string>& sources,
                           const std::string& t);
/// lim over the arrows s -> t (t in `targets`) of restrict X(t), over R(s).
struct ArrowLimit {
  std::vector<std::string> targets;
  ChainComplex product;
  std::vector<ChainComplex> factors;
  ChainComplex object;          // the limit, a kernel in `product`
  ChainMap inclusion;           // object -> product
};
ArrowLimit arrow_limit(const RingDiagram& rings, const ModuleDiagram& x, const std::vector<std::string>& targets,
                       const std::string& s);

struct Latching {
  ArrowColimit colimit;
  ChainMap to_value;  // L_t X -> X(t)
  const ChainComplex& object() const { return colimit.object; }
};
/// L_t X, the colimit over non-identity arrows into t.
Latching latching(const ModuleDiagram& x, const std::string& t);
/// L_t f : L_t X -> L_t Y.
ChainMap latching_map(const DiagramMap& f, const std::string& t, const Latching& lx, const Latching& ly);

struct Matching {
  ArrowLimit limit;
  ChainMap from_value;  // X(s) -> M_s X
  const ChainComplex& object() const { return limit.object; }
};
/// M_s X, the limit over non-identity arrows out of s; throws NotModuleFinite
/// naming the arrow.
Matching matching(const ModuleDiagram& x, const std::string& s);
ChainMap matching_map(const DiagramMap& f, const std::string& s, const Matching& mx, const Matching& my);

struct CornerCheck {
  std::string object;
  bool criterion = false;       // the (trivial) (co)fibration test on the corner map
  bool objectwise_weq = true;   // f(s) a quasi-isomorphism (trivial case only)
  ChainMap corner;              // the corner map itself
};
struct CornerReport {
  bool verdict = true;
  /// Trivial case: verdict true while some f(s) is not a quasi-isomorphism.
  bool diagnostic_conflict = false;
  std::vector<CornerCheck> checks;
};

/// Pushout-corner test X(s) +_{L_s X} L_s Y -> Y(s) at every object.  Throws
/// UnsupportedShape when Y(s) is not degreewise free.
CornerReport cofibration_corners(const DiagramMap& f, bool trivial, bool objectwise_diagnostic = true);
bool is_diagram_cofibration(const DiagramMap& f, bool trivial = false);
/// Pullback-corner test X(s) -> Y(s) x_{M_s Y} M_s X at every object.
CornerReport fibration_corners(const DiagramMap& f, bool trivial, bool objectwise_diagnostic = true);
bool is_diagram_fibration(const DiagramMap& f, bool trivial = false);
bool is_objectwise_cofibration(const DiagramMap& f);

/// F^s_A: (s -> t)_* A wherever s -> t exists, zero elsewhere.
ModuleDiagram free_diagram(const RingDiagram& rings, const std::string& s, const ChainComplex& a);
/// The same with the value at s replaced by zero.
ModuleDiagram boundary_free_diagram(const RingDiagram& rings, const std::string& s, const ChainComplex& a);
/// F^s_f : F^s_A -> F^s_B.
DiagramMap free_map(const RingDiagram& rings, const std::string& s, const ChainMap& f);

/// Direct: F^s_f.  Inverse: the corner F^s_A +_{dF^s_A} dF^s_B -> F^s_B.
DiagramMap rf_map(const RingDiagram& rings, const std::string& s, const ChainMap& f, Direction direction);

struct Probe {
  std::string family;  // "I" (S^{n-1} -> D^n) or "J" (0 -> D^n)
  std::string object;
  int degree = 0;
  DiagramMap map;
};
/// rf_map of the sphere/disk generators at every object and every degree n
/// with lo <= n <= hi.
std::vector<Probe> generating_probes(const RingDiagram& rings, Direction direction, int lo, int hi);

/// L^s A, left adjoint to evaluation at s (equal to F^s_A).
ModuleDiagram eval_left_adjoint(const RingDiagram& rings, const std::string& s, const ChainComplex& a);
/// Counit L^s(Y(s)) -> Y, the structure maps out of s.
DiagramMap eval_counit(const ModuleDiagram& y, const std::string& s);

struct DecompositionReport {
  bool verdict = true;
  std::vector<std::pair<std::string, bool>> objects;  // comparison iso per object
  ModuleDiagram colimit;
};
/// The colimit over D^op of the diagrams L^s R(s), compared with R.
DecompositionReport colim_decomposition(const RingDiagram& rings);

}  // namespace ringdiag
