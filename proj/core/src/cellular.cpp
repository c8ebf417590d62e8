#include "ringdiag/cellular.hpp"

#include <algorithm>
#include <climits>

#include "ringdiag/error.hpp"

namespace ringdiag {

namespace {

std::vector<std::pair<std::string, ModuleInvariants>> labelled(const QuasiIsoReport& r, const std::string& prefix) {
  std::vector<std::pair<std::string, ModuleInvariants>> out;
  for (const auto& [n, inv] : r.cone_homology) out.emplace_back(prefix + std::to_string(n), inv);
  return out;
}

CellVerdict compare(const ChainMap& f, int valid_through, const std::string& name) {
  CellVerdict v;
  v.cell = name;
  QuasiIsoReport r = quasi_iso_report(f, valid_through);
  v.verdict = r.verdict;
  v.cone_homology = labelled(r, "");
  v.valid_through = valid_through;
  return v;
}

}  // namespace

std::vector<std::string> standing_assumptions() {
  return {
      "smallness of the cells assumed, not checked",
      "ambient hypotheses (right proper, cellular, stable) assumed, not checked",
      "homology compared only through the reported valid_through degree",
  };
}

CofibrantReplacement cofibrant_replacement(const ChainComplex& cell, int length) {
  CofibrantReplacement out;
  if (cell.is_free()) {
    out.complex = cell;
    out.to_cell = ChainMap::identity(cell);
    out.valid_through = cell.empty_window() ? 0 : cell.hi() + 1;
    return out;
  }
  std::vector<int> nonzero;
  for (int n = cell.lo(); n <= cell.hi(); ++n)
    if (cell.rank(n) > 0) nonzero.push_back(n);
  if (nonzero.size() != 1) {
    throw Error(ErrorCode::UnsupportedShape,
                "cofibrant replacement needs a free complex or a module concentrated in one degree");
  }
  const int d = nonzero.front();
  Resolution res = free_resolution(cell.module(d), length);
  out.complex = shift(res.complex, d);
  out.to_cell = ChainMap(out.complex, cell, {{d, res.augmentation.at(0)}});
  out.valid_through = d + res.valid_through;
  return out;
}

ModuleAdjunction extension_restriction(const RingMap& f) {
  ModuleAdjunction adj;
  adj.name = "extension/restriction along " + f.source().name() + " -> " + f.target().name();
  adj.derived_unit = [f](const ChainComplex& cell, int length) {
    CofibrantReplacement p = cofibrant_replacement(cell, length);
    return compare(extension_unit(p.complex, f), p.valid_through, cell.to_string());
  };
  adj.derived_counit = [f](const ChainComplex& cell, int length) {
    ChainComplex u = restrict_scalars(cell, f);
    CofibrantReplacement p = cofibrant_replacement(u, length);
    ChainMap pushed = base_change(p.to_cell, f);
    return compare(extension_counit(cell, f).after(pushed), p.valid_through, cell.to_string());
  };
  return adj;
}

DiagramAdjunction left_kan_adjunction(const Inclusion& incl, const RingDiagram& rings) {
  DiagramAdjunction adj;
  adj.name = "left Kan extension/restriction";
  adj.derived_unit = [incl, rings](const ModuleDiagram& cell) {
    for (const auto& s : cell.shape().objects()) {
      if (!cell.value(s).is_free()) {
        throw Error(ErrorCode::UnsupportedShape, "diagram cell value at '" + s + "' is not free");
      }
    }
    KanExtension k = left_kan_extension(incl, rings, cell);
    DiagramMap unit = left_kan_unit(incl, k, cell);
    CellVerdict v;
    v.cell = "diagram on " + cell.shape().to_string();
    v.verdict = true;
    v.valid_through = INT_MAX;
    for (const auto& s : cell.shape().objects()) {
      QuasiIsoReport r = quasi_iso_report(unit.at(s));
      v.verdict = v.verdict && r.verdict;
      auto part = labelled(r, s + ":");
      v.cone_homology.insert(v.cone_homology.end(), part.begin(), part.end());
      if (!cell.value(s).empty_window()) v.valid_through = std::min(v.valid_through, cell.value(s).hi());
    }
    if (v.valid_through == INT_MAX) v.valid_through = 0;
    return v;
  };
  return adj;
}

CellularizationReport check_cellularization_hypotheses(const ModuleAdjunction& adj,
                                                       const std::vector<ChainComplex>& cells, int length,
                                                       CellSide side) {
  CellularizationReport out;
  out.adjunction = adj.name;
  out.side = side;
  out.notes = standing_assumptions();
  out.valid_through = INT_MAX;
  const auto& check = side == CellSide::Unit ? adj.derived_unit : adj.derived_counit;
  if (!check) throw Error(ErrorCode::UnsupportedShape, adj.name + " has no derived counit");
  for (const auto& c : cells) {
    CellVerdict v = check(c, length);
    out.verdict = out.verdict && v.verdict;
    out.valid_through = std::min(out.valid_through, v.valid_through);
    out.cells.push_back(std::move(v));
  }
  if (cells.empty()) out.valid_through = length - 1;
  return out;
}

CellularizationReport check_cellularization_hypotheses(const DiagramAdjunction& adj,
                                                       const std::vector<ModuleDiagram>& cells) {
  CellularizationReport out;
  out.adjunction = adj.name;
  out.notes = standing_assumptions();
  out.valid_through = INT_MAX;
  for (const auto& c : cells) {
    CellVerdict v = adj.derived_unit(c);
    out.verdict = out.verdict && v.verdict;
    out.valid_through = std::min(out.valid_through, v.valid_through);
    out.cells.push_back(std::move(v));
  }
  if (cells.empty()) out.valid_through = 0;
  return out;
}

}  // namespace ringdiag
