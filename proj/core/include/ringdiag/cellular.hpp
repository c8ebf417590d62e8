#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ringdiag/kan.hpp"

namespace ringdiag {

/// A free complex with a map to a cell.  Comparisons built from it are exact
/// in degrees <= valid_through: every degree (one past the top) for a free
/// cell, degree + length - 1 for a resolved module.
struct CofibrantReplacement {
  ChainComplex complex;
  ChainMap to_cell;
  int valid_through = 0;
};
/// The cell itself when it is free; a shifted free resolution of length
/// `length` when it is concentrated in one degree.  Throws UnsupportedShape
/// otherwise.
CofibrantReplacement cofibrant_replacement(const ChainComplex& cell, int length);

struct CellVerdict {
  std::string cell;
  bool verdict = false;
  /// Cone homology of the compared map, per degree (prefixed by the object
  /// for diagram cells).
  std::vector<std::pair<std::string, ModuleInvariants>> cone_homology;
  int valid_through = 0;
  std::vector<std::string> notes;
};

/// An adjoint pair between complexes over two rings, given by its derived
/// unit on cells of the source side and, optionally, its derived counit on
/// cells of the target side.
struct ModuleAdjunction {
  std::string name;
  std::function<CellVerdict(const ChainComplex&, int)> derived_unit;
  std::function<CellVerdict(const ChainComplex&, int)> derived_counit;
};

/// (f_*, f^*) along a canonical ring map.  Both sides throw NotModuleFinite
/// when restriction along f is not module-finite.
ModuleAdjunction extension_restriction(const RingMap& f);

/// An adjoint pair between diagram categories with a derived unit on cells.
struct DiagramAdjunction {
  std::string name;
  std::function<CellVerdict(const ModuleDiagram&)> derived_unit;
};
/// (i_*, i^*) for a full inclusion; cells must have free values.
DiagramAdjunction left_kan_adjunction(const Inclusion& incl, const RingDiagram& rings);

enum class CellSide { Unit, Counit };

struct CellularizationReport {
  std::string adjunction;
  CellSide side = CellSide::Unit;
  bool verdict = true;
  std::vector<CellVerdict> cells;
  /// The smallest valid_through over the cells.
  int valid_through = 0;
  std::vector<std::string> notes;
};

CellularizationReport check_cellularization_hypotheses(const ModuleAdjunction& adj,
                                                       const std::vector<ChainComplex>& cells, int length,
                                                       CellSide side = CellSide::Unit);
CellularizationReport check_cellularization_hypotheses(const DiagramAdjunction& adj,
                                                       const std::vector<ModuleDiagram>& cells);

/// Notes carried by every cellularization report.
std::vector<std::string> standing_assumptions();

}  // namespace ringdiag
