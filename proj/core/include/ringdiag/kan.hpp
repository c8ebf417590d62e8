#pragma once

#include <map>
#include <optional>
#include <string>

#include "ringdiag/diagram.hpp"

namespace ringdiag {

/// i^* X: the values and structure maps of X on the objects of incl.sub().
ModuleDiagram restrict_diagram(const Inclusion& incl, const ModuleDiagram& x);
DiagramMap restrict_map(const Inclusion& incl, const DiagramMap& f);

/// One value of a Kan extension: the general (co)limit over the (co)slice and,
/// when the (co)slice has a terminal (initial) object, the one-step value
/// together with the comparison maps both ways.
struct KanValue {
  std::optional<std::string> collapse;  // the object s of D giving the one-step formula
  ChainComplex general;
  ChainComplex value;                   // the one-step value when collapse is set
  ChainMap to_general;                  // value -> general
  ChainMap from_general;                // general -> value
  bool collapse_agrees = true;          // the two maps are mutually inverse
};

struct KanExtension {
  ModuleDiagram diagram;
  std::map<std::string, KanValue> values;
  /// Left Kan: the colimit data.  Right Kan: the limit data.
  std::map<std::string, ArrowColimit> colimits;
  std::map<std::string, ArrowLimit> limits;
};

/// i_* X over `rings` (on incl.ambient()); X lives on rings.restricted(incl).
KanExtension left_kan_extension(const Inclusion& incl, const RingDiagram& rings, const ModuleDiagram& x);
ModuleDiagram left_kan(const Inclusion& incl, const RingDiagram& rings, const ModuleDiagram& x);
DiagramMap left_kan_map(const Inclusion& incl, const DiagramMap& f, const KanExtension& lx, const KanExtension& ly);
DiagramMap left_kan_map(const Inclusion& incl, const RingDiagram& rings, const DiagramMap& f);
/// X -> i^* i_* X.
DiagramMap left_kan_unit(const Inclusion& incl, const KanExtension& lx, const ModuleDiagram& x);
/// i_* i^* Y -> Y.
DiagramMap left_kan_counit(const Inclusion& incl, const KanExtension& ly, const ModuleDiagram& y);

/// i_! X, the limit over the coslice of the restrictions; throws
/// NotModuleFinite when some restriction is not module-finite.
KanExtension right_kan_extension(const Inclusion& incl, const RingDiagram& rings, const ModuleDiagram& x);
ModuleDiagram right_kan(const Inclusion& incl, const RingDiagram& rings, const ModuleDiagram& x);
DiagramMap right_kan_map(const Inclusion& incl, const DiagramMap& f, const KanExtension& rx, const KanExtension& ry);
DiagramMap right_kan_map(const Inclusion& incl, const RingDiagram& rings, const DiagramMap& f);
/// Y -> i_! i^* Y.
DiagramMap right_kan_unit(const Inclusion& incl, const KanExtension& ry, const ModuleDiagram& y);
/// i^* i_! X -> X.
DiagramMap right_kan_counit(const Inclusion& incl, const KanExtension& rx, const ModuleDiagram& x);

/// Unit P -> restrict(f_* P) and counit f_* restrict(Q) -> Q of extension
/// and restriction of scalars; the counit needs f module-finite.
ChainMap extension_unit(const ChainComplex& p, const RingMap& f);
ChainMap extension_counit(const ChainComplex& q, const RingMap& f);

struct TriangleReport {
  bool left = false;   // counit after (left functor of unit) is the identity
  bool right = false;  // (right functor of counit) after unit is the identity
  bool holds() const { return left && right; }
};
/// (f_*, f^*) on a complex P over the source and Q over the target.
TriangleReport extension_triangles(const ChainComplex& p, const ChainComplex& q, const RingMap& f);
/// (i_*, i^*) on X over the subcategory and Y over the ambient category.
TriangleReport left_kan_triangles(const Inclusion& incl, const RingDiagram& rings, const ModuleDiagram& x,
                                  const ModuleDiagram& y);
/// (i^*, i_!) on Y over the ambient category and X over the subcategory.
TriangleReport right_kan_triangles(const Inclusion& incl, const RingDiagram& rings, const ModuleDiagram& y,
                                   const ModuleDiagram& x);

}  // namespace ringdiag
