#include "ringdiag_cli/runner.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <map>
#include <sstream>

#include "ringdiag/error.hpp"
#include "ringdiag/smith.hpp"

#ifndef RINGDIAG_VERSION
#define RINGDIAG_VERSION "0.0.0"
#endif

namespace ringdiag::cli {

namespace {

// Argument access for one task; every failure names the task entry.
class Args {
 public:
  Args(const Manifest& m, const TaskSpec& t, std::size_t index) : m_(m), t_(t), where_("/tasks/" + std::to_string(index)) {}

  const Json* find(const std::string& key) const {
    auto it = t_.args.find(key);
    return it == t_.args.end() ? nullptr : &*it;
  }
  const Json& get(const std::string& key) const {
    const Json* j = find(key);
    if (!j) throw InputError(InputKind::Parse, where_, "task '" + t_.id + "' (" + t_.op + ") needs '" + key + "'");
    return *j;
  }
  std::string at(const std::string& key) const { return where_ + "/" + key; }

  std::string name(const std::string& key) const {
    const Json& j = get(key);
    if (!j.is_string()) throw InputError(InputKind::Parse, at(key), "expected a name");
    return j.get<std::string>();
  }
  int integer(const std::string& key, int fallback) const {
    const Json* j = find(key);
    if (!j) return fallback;
    if (!j->is_number_integer()) throw InputError(InputKind::Parse, at(key), "expected an integer");
    return j->get<int>();
  }
  int option(const std::string& key, int fallback) const {
    const Json* o = find("options");
    if (!o || !o->is_object() || !o->contains(key)) return fallback;
    const Json& j = (*o)[key];
    if (!j.is_number_integer()) throw InputError(InputKind::Parse, at("options/" + key), "expected an integer");
    return j.get<int>();
  }
  bool flag(const std::string& key) const {
    const Json* o = find("options");
    if (!o || !o->is_object() || !o->contains(key)) return false;
    const Json& j = (*o)[key];
    if (!j.is_boolean()) throw InputError(InputKind::Parse, at("options/" + key), "expected true or false");
    return j.get<bool>();
  }
  Direction direction(const std::string& key) const {
    std::string s = name(key);
    if (s == "direct") return Direction::Direct;
    if (s == "inverse") return Direction::Inverse;
    throw InputError(InputKind::Parse, at(key), "direction is \"direct\" or \"inverse\"");
  }

  template <typename Map>
  const typename Map::mapped_type& ref(const Map& map, const std::string& key, const std::string& kind) const {
    std::string n = name(key);
    auto it = map.find(n);
    if (it == map.end()) throw InputError(InputKind::Reference, at(key), "undeclared " + kind + " '" + n + "'");
    return it->second;
  }
  const FiniteCategory& category(const std::string& key = "category") const { return ref(m_.categories, key, "category"); }
  const Inclusion& inclusion(const std::string& key = "inclusion") const {
    return ref(m_.inclusions, key, "inclusion").inclusion;
  }
  const Ring& ring(const std::string& key = "ring") const { return ref(m_.rings, key, "ring"); }
  const RingDiagram& ring_diagram(const std::string& key = "ring_diagram") const {
    return ref(m_.ring_diagrams, key, "ring diagram").diagram;
  }
  const ChainComplex& complex(const std::string& key = "complex") const { return ref(m_.complexes, key, "complex").complex; }
  const ModuleDiagram& diagram(const std::string& key = "diagram") const {
    return ref(m_.module_diagrams, key, "module diagram").diagram;
  }
  const LocalizationSquare& square(const std::string& key = "square") const { return ref(m_.squares, key, "square"); }
  std::vector<ChainComplex> complexes(const std::string& key) const {
    const Json& j = get(key);
    if (!j.is_array()) throw InputError(InputKind::Parse, at(key), "expected a list of complex names");
    std::vector<ChainComplex> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_string()) throw InputError(InputKind::Parse, at(key + "/" + std::to_string(i)), "expected a name");
      auto it = m_.complexes.find(j[i].get<std::string>());
      if (it == m_.complexes.end()) {
        throw InputError(InputKind::Reference, at(key + "/" + std::to_string(i)),
                         "undeclared complex '" + j[i].get<std::string>() + "'");
      }
      out.push_back(it->second.complex);
    }
    return out;
  }
  /// {generators, relations} or {rank, torsion} over `ring`.
  FPModule module(const std::string& key, const Ring& ring) const {
    const Json& j = get(key);
    if (j.is_object() && j.contains("generators")) {
      if (!j["generators"].is_number_unsigned()) throw InputError(InputKind::Parse, at(key + "/generators"), "expected a count");
      std::size_t g = j["generators"].get<std::size_t>();
      Matrix rel = j.contains("relations")
                       ? matrix_from_json(j["relations"], g, static_cast<std::size_t>(-1), at(key + "/relations"))
                       : Matrix(g, 0);
      return FPModule(ring, g, rel);
    }
    return module_from_spec(ring, j, at(key));
  }
  ChainMap chain_map(const std::string& key) const {
    const Json& j = get(key);
    if (!j.is_object()) throw InputError(InputKind::Parse, at(key), "expected {source, target, components}");
    auto lookup = [&](const std::string& k) -> const ChainComplex& {
      if (!j.contains(k) || !j[k].is_string()) throw InputError(InputKind::Parse, at(key + "/" + k), "expected a name");
      auto it = m_.complexes.find(j[k].get<std::string>());
      if (it == m_.complexes.end()) {
        throw InputError(InputKind::Reference, at(key + "/" + k), "undeclared complex '" + j[k].get<std::string>() + "'");
      }
      return it->second.complex;
    };
    const ChainComplex& s = lookup("source");
    const ChainComplex& t = lookup("target");
    std::map<int, Matrix> comps;
    if (j.contains("components")) {
      for (const auto& [deg, mat] : j["components"].items()) {
        int n = 0;
        try {
          n = std::stoi(deg);
        } catch (const std::logic_error&) {
          throw InputError(InputKind::Parse, at(key + "/components/" + deg), "degree keys are integers");
        }
        comps[n] = matrix_from_json(mat, t.rank(n), s.rank(n), at(key + "/components/" + deg));
      }
    }
    return ChainMap(s, t, std::move(comps));
  }

 private:
  const Manifest& m_;
  const TaskSpec& t_;
  std::string where_;
};

std::string yes(bool b) { return b ? "yes" : "no"; }

Json invariants_table(const ChainComplex& c) { return homology_json(homology_table(c)); }

std::string table_line(const std::vector<std::pair<int, ModuleInvariants>>& t) {
  std::string s;
  for (const auto& [n, inv] : t) {
    if (!s.empty()) s += ", ";
    s += "H" + std::to_string(n) + " = " + inv.to_string();
  }
  return s.empty() ? "all homology zero" : s;
}

void trace_complex(TaskOutcome& out, const std::string& label, const ChainComplex& c) {
  out.trace.push_back(label + " over " + c.ring().name());
  if (c.empty_window()) {
    out.trace.push_back("  (zero complex)");
    return;
  }
  for (int n = c.lo(); n <= c.hi(); ++n) {
    out.trace.push_back("  degree " + std::to_string(n) + ": " + c.module(n).to_string());
    if (n > c.lo()) out.trace.push_back("  d(" + std::to_string(n) + ") = " + c.d(n).to_string());
  }
}

Json witness_json(const PartialFraction& w) {
  return Json{{"value", to_string(w.value)},        {"p_exponent", w.p_exponent}, {"q_exponent", w.q_exponent},
              {"alpha", w.alpha.get_str()},         {"beta", w.beta.get_str()},   {"p_term", to_string(w.p_term)},
              {"q_term", to_string(w.q_term)}};
}

std::string witness_line(const PartialFraction& w) {
  return to_string(w.value) + " = " + to_string(w.p_term) + " - (" + to_string(w.q_term) + ")   alpha = " +
         w.alpha.get_str() + ", beta = " + w.beta.get_str();
}

Json cell_json(const CellVerdict& v) {
  Json cone = Json::array();
  for (const auto& [label, inv] : v.cone_homology) cone.push_back(Json{{"degree", label}, {"homology", to_json(inv)}});
  return Json{{"cell", v.cell}, {"verdict", v.verdict}, {"valid_through", v.valid_through}, {"cone_homology", cone}};
}

using Handler = std::function<void(const Args&, const RunOptions&, TaskOutcome&)>;

void op_validate_category(const Args& a, const RunOptions&, TaskOutcome& out) {
  const FiniteCategory& c = a.category();
  Json arrows = Json::array();
  for (const auto& [s, t] : c.arrows()) {
    arrows.push_back({s, t});
    out.trace.push_back("arrow " + arrow_id(s, t));
  }
  out.result = Json{{"objects", c.objects()}, {"arrows", arrows}, {"generating", to_json(c)["arrows"]}};
  out.summary.push_back(std::to_string(c.size()) + " objects, " + std::to_string(arrows.size()) + " non-identity arrows");
}

void op_linear_extension(const Args& a, const RunOptions&, TaskOutcome& out) {
  LinearExtension e = linear_extension(a.category(), a.direction("direction"));
  Json deg = Json::object();
  for (const auto& s : e.order) deg[s] = e.degree.at(s);
  out.result = Json{{"order", e.order}, {"degree", deg}};
  std::string line;
  for (const auto& s : e.order) line += (line.empty() ? "" : " < ") + s;
  out.summary.push_back(line);
}

void op_chains(const Args& a, const RunOptions&, TaskOutcome& out) {
  auto ch = chains(a.category(), static_cast<std::size_t>(a.integer("k", 1)));
  out.result = Json{{"chains", ch}};
  for (const auto& c : ch) {
    std::string s;
    for (const auto& o : c) s += (s.empty() ? "" : " -> ") + o;
    out.trace.push_back(s);
  }
  out.summary.push_back(std::to_string(ch.size()) + " chains");
}

void op_slice(const Args& a, bool co, TaskOutcome& out) {
  const Inclusion& incl = a.inclusion();
  std::string t = a.name("object");
  ArrowCategory s = co ? coslice(incl, t) : slice(incl, t);
  auto end = co ? initial_object(s.category) : terminal_object(s.category);
  out.result = Json{{"objects", s.category.objects()}, {co ? "initial" : "terminal", end ? Json(*end) : Json(nullptr)}};
  out.summary.push_back(std::to_string(s.category.size()) + " objects; " + (co ? "initial " : "terminal ") +
                        (end ? *end : "none"));
}

void op_snf(const Args& a, const RunOptions&, TaskOutcome& out) {
  const Ring& r = a.ring();
  if (r.is_quotient()) throw Error(ErrorCode::InvalidRing, "snf needs a ring without modulus; use module_invariants");
  const Json& mj = a.get("matrix");
  Matrix m = matrix_from_json(mj, mj.size(), static_cast<std::size_t>(-1), a.at("matrix"));
  SmithForm f = smith_normal_form(r, m, true);
  Json diag = Json::array();
  for (const auto& d : f.diagonal) diag.push_back(d.get_str());
  out.result = Json{{"rank", f.rank}, {"diagonal", diag}, {"U", to_json(f.U)}, {"V", to_json(f.V)}};
  out.verdict = f.U * m * f.V == f.D;
  out.trace = f.transcript;
  out.trace.push_back("U = " + f.U.to_string());
  out.trace.push_back("D = " + f.D.to_string());
  out.trace.push_back("V = " + f.V.to_string());
  std::string s;
  for (const auto& d : f.diagonal) s += (s.empty() ? "" : ", ") + d.get_str();
  out.summary.push_back("rank " + std::to_string(f.rank) + ", diagonal [" + s + "]");
}

void op_module_invariants(const Args& a, const RunOptions&, TaskOutcome& out) {
  FPModule m = a.module("module", a.ring());
  ModuleInvariants inv = m.invariants();
  out.result = to_json(inv);
  out.summary.push_back(inv.to_string());
}

void op_homology(const Args& a, const RunOptions&, TaskOutcome& out) {
  const ChainComplex& c = a.complex();
  auto t = homology_table(c);
  out.result = Json{{"homology", homology_json(t)}};
  trace_complex(out, "complex", c);
  out.summary.push_back(table_line(t));
}

void op_free_resolution(const Args& a, const RunOptions& o, TaskOutcome& out) {
  int len = o.resolution_length.value_or(a.option("resolution_length", 3));
  FPModule m = a.module("module", a.ring());
  Resolution r = free_resolution(m, len);
  Json ranks = Json::array();
  for (int n = 0; n <= r.complex.hi(); ++n) ranks.push_back(r.complex.rank(n));
  out.result = Json{{"ranks", ranks}, {"valid_through", r.valid_through}, {"homology", invariants_table(r.complex)}};
  out.verdict = is_quasi_iso(r.augmentation, r.valid_through);
  trace_complex(out, "resolution", r.complex);
  out.summary.push_back("length " + std::to_string(len) + ", exact through degree " + std::to_string(r.valid_through));
}

void op_tor(const Args& a, const RunOptions& o, TaskOutcome& out) {
  int len = o.resolution_length.value_or(a.option("resolution_length", 3));
  RingMap f = RingMap::canonical(a.ring("source"), a.ring("target"));
  FPModule m = a.module("module", f.source());
  int i = a.integer("degree", 0);
  TorResult t = tor(m, f, i, len);
  out.result = Json{{"degree", i}, {"tor", to_json(t.module.invariants())}, {"valid_through", t.valid_through}};
  out.summary.push_back("Tor_" + std::to_string(i) + " = " + t.module.to_string());
}

void op_quasi_iso(const Args& a, const RunOptions&, TaskOutcome& out) {
  ChainMap f = a.chain_map("map");
  QuasiIsoReport r = quasi_iso_report(f);
  out.verdict = r.verdict;
  out.result = Json{{"cone_homology", homology_json(r.cone_homology)}};
  trace_complex(out, "cone", cone(f));
  out.summary.push_back("cone: " + table_line(r.cone_homology));
}

void op_validate_diagram(const Args& a, const RunOptions&, TaskOutcome& out) {
  ValidationReport r = validate_diagram(a.diagram());
  out.verdict = true;
  out.result = Json{{"squares", r.squares}};
  for (const auto& s : r.squares) out.trace.push_back("checked " + s);
  out.summary.push_back(std::to_string(r.squares.size()) + " transitivity squares checked");
}

void op_latching(const Args& a, bool match, TaskOutcome& out) {
  const ModuleDiagram& x = a.diagram();
  std::string s = a.name("object");
  ChainComplex obj;
  ChainMap map;
  if (match) {
    Matching mm = matching(x, s);
    obj = mm.object();
    map = mm.from_value;
  } else {
    Latching l = latching(x, s);
    obj = l.object();
    map = l.to_value;
  }
  out.result = Json{{"object", to_json(obj)}, {"homology", invariants_table(obj)}};
  trace_complex(out, match ? "matching object" : "latching object", obj);
  for (int n = map.lo(); n <= map.hi(); ++n) out.trace.push_back("map(" + std::to_string(n) + ") = " + map.at(n).to_string());
  out.summary.push_back(table_line(homology_table(obj)));
}

void op_probes(const Args& a, const RunOptions&, TaskOutcome& out) {
  const RingDiagram& rd = a.ring_diagram();
  Direction dir = a.direction("direction");
  auto probes = generating_probes(rd, dir, a.integer("lo", 0), a.integer("hi", 1));
  bool all = true;
  Json list = Json::array();
  for (const auto& p : probes) {
    bool cof = dir == Direction::Direct ? is_diagram_cofibration(p.map, p.family == "J") : true;
    bool obj = is_objectwise_cofibration(p.map);
    all = all && cof && obj;
    list.push_back(Json{{"family", p.family}, {"object", p.object}, {"degree", p.degree}, {"diagram_cofibration", cof},
                        {"objectwise_cofibration", obj}});
    out.trace.push_back(p.family + " at " + p.object + " degree " + std::to_string(p.degree) + ": corners " + yes(cof) +
                        ", objectwise " + yes(obj));
  }
  out.verdict = all;
  out.result = Json{{"probes", list}};
  out.summary.push_back(std::to_string(probes.size()) + " probes");
}

void op_colim_decomposition(const Args& a, const RunOptions&, TaskOutcome& out) {
  DecompositionReport r = colim_decomposition(a.ring_diagram());
  out.verdict = r.verdict;
  Json objs = Json::object();
  for (const auto& [s, ok] : r.objects) {
    objs[s] = ok;
    out.trace.push_back("comparison at " + s + ": " + (ok ? "isomorphism" : "not an isomorphism"));
  }
  out.result = Json{{"objects", objs}};
}

void op_kan(const Args& a, bool right, TaskOutcome& out) {
  const Inclusion& incl = a.inclusion();
  const RingDiagram& rd = a.ring_diagram();
  // A diagram on the ambient category is restricted first.
  ModuleDiagram x = a.diagram();
  if (x.shape() == incl.ambient() && !(incl.sub() == incl.ambient())) x = restrict_diagram(incl, x);
  KanExtension k = right ? right_kan_extension(incl, rd, x) : left_kan_extension(incl, rd, x);
  bool ok = true;
  Json values = Json::object();
  for (const auto& s : incl.ambient().objects()) {
    const KanValue& v = k.values.at(s);
    ok = ok && v.collapse_agrees;
    values[s] = Json{{"homology", invariants_table(k.diagram.value(s))},
                     {"collapse", v.collapse ? Json(*v.collapse) : Json(nullptr)},
                     {"collapse_agrees", v.collapse_agrees}};
    trace_complex(out, "value at " + s + (v.collapse ? " (one step from " + *v.collapse + ")" : ""), k.diagram.value(s));
  }
  bool unit_iso = true;
  if (right) {
    DiagramMap c = right_kan_counit(incl, k, x);
    for (const auto& s : incl.sub().objects()) unit_iso = unit_iso && is_chain_isomorphism(c.at(s));
  } else {
    DiagramMap u = left_kan_unit(incl, k, x);
    for (const auto& s : incl.sub().objects()) unit_iso = unit_iso && is_chain_isomorphism(u.at(s));
  }
  out.verdict = ok && unit_iso;
  out.result = Json{{"values", values}, {right ? "counit_isomorphism" : "unit_isomorphism", unit_iso}};
  out.summary.push_back(std::string(right ? "counit" : "unit") + " on the subcategory is an isomorphism: " + yes(unit_iso));
}

void op_bk_holim(const Args& a, const RunOptions& o, TaskOutcome& out) {
  const ModuleDiagram& x = a.diagram();
  const Ring& base = a.ring("base");
  Totalization t = bk_totalization(x, base);
  auto table = homology_table(t.complex);
  out.result = Json{{"homology", homology_json(table)}, {"chains", t.chains}};
  trace_complex(out, "totalization", t.complex);
  out.summary.push_back(table_line(table));
  const FiniteCategory& shape = x.shape();
  bool cospan = shape.size() == 3 && shape.arrows().size() == 2 && shape.arrows_into(shape.arrows()[0].second).size() == 2;
  if ((o.oracle || a.flag("oracle")) && cospan) {
    const std::string apex = shape.arrows()[0].second;
    const std::string left = shape.arrows()[0].first;
    const std::string right = shape.arrows()[1].first;
    auto leg = [&](const std::string& from) {
      RingMap a = RingMap::canonical(base, x.rings().ring(from));
      RingMap b = RingMap::canonical(base, x.rings().ring(apex));
      ChainMap s = x.structure(from, apex);
      std::map<int, Matrix> comps;
      for (int n = s.lo(); n <= s.hi(); ++n) comps[n] = lift_entries(b, s.at(n));
      return ChainMap(restrict_scalars(x.value(from), a), restrict_scalars(x.value(apex), b), std::move(comps));
    };
    ChainMap f = leg(left);
    ChainMap g = leg(right);
    ChainComplex hp = homotopy_pullback(f, g);
    auto strip = [](const std::vector<std::pair<int, ModuleInvariants>>& rows) {
      std::map<int, ModuleInvariants> m;
      for (const auto& [n, inv] : rows)
        if (!inv.is_zero()) m[n] = inv;
      return m;
    };
    bool agree = strip(homology_table(hp)) == strip(table);
    out.result["pullback_cross_check"] = agree;
    out.trace.push_back("homotopy pullback: " + table_line(homology_table(hp)));
    if (!agree) throw Error(ErrorCode::OracleDisagreement, "totalization and homotopy pullback homology differ");
  }
}

void op_cellularization(const Args& a, const RunOptions& o, TaskOutcome& out) {
  int len = o.resolution_length.value_or(a.option("resolution_length", 3));
  CellSide side = CellSide::Unit;
  if (const Json* s = a.find("side")) {
    if (*s == "counit") side = CellSide::Counit;
    else if (*s != "unit") throw InputError(InputKind::Parse, a.at("side"), "side is \"unit\" or \"counit\"");
  }
  ModuleAdjunction adj;
  if (a.find("square")) {
    adj = fracture_adjunction(a.square());
  } else {
    adj = extension_restriction(RingMap::canonical(a.ring("source"), a.ring("target")));
  }
  CellularizationReport r = check_cellularization_hypotheses(adj, a.complexes("cells"), len, side);
  out.verdict = r.verdict;
  Json cells = Json::array();
  for (const auto& c : r.cells) {
    cells.push_back(cell_json(c));
    out.trace.push_back(c.cell + ": " + (c.verdict ? "equivalence" : "not an equivalence"));
    for (const auto& [label, inv] : c.cone_homology) out.trace.push_back("  cone H" + label + " = " + inv.to_string());
  }
  out.result = Json{{"adjunction", r.adjunction}, {"side", side == CellSide::Unit ? "unit" : "counit"},
                    {"cells", cells},        {"valid_through", r.valid_through},
                    {"notes", r.notes}};
  out.summary.push_back(r.adjunction);
  out.summary.insert(out.summary.end(), r.notes.begin(), r.notes.end());
}

void op_ring_pullback(const Args& a, const RunOptions&, TaskOutcome& out) {
  const LocalizationSquare& sq = a.square();
  PullbackReport r = verify_ring_pullback(sq, a.integer("depth", 2));
  out.verdict = r.verdict;
  Json w = Json::array();
  for (const auto& x : r.witnesses) {
    w.push_back(witness_json(x));
    out.trace.push_back(witness_line(x));
  }
  out.result = Json{{"square", to_json(sq)},
                    {"kernel_is_base", r.kernel_is_base},
                    {"surjective", r.surjective},
                    {"witnesses", w}};
  out.summary.push_back(sq.to_string());
}

Json fracture_json(const FractureReport& r) {
  Json factors = Json::array();
  for (const auto& f : r.factors) {
    factors.push_back(Json{{"factor", f.factor},
                           {"corner_p", to_json(f.corner_p)},
                           {"corner_q", to_json(f.corner_q)},
                           {"apex", to_json(f.apex)},
                           {"corners_match", f.corners_match},
                           {"exact", f.exact}});
  }
  Json w = Json::array();
  for (const auto& x : r.witnesses) w.push_back(witness_json(x));
  return Json{{"module", to_json(r.module)},
              {"factors", factors},
              {"holim_homology", homology_json(r.holim_homology)},
              {"torsion_cross_check", r.torsion_cross_check},
              {"witnesses", w},
              {"notes", r.notes}};
}

Json truncation_json(const TruncationReport& t) {
  Json windows = Json::array();
  for (const auto& w : t.windows) {
    windows.push_back(Json{{"bound", w.bound},
                           {"kernel_defect", w.kernel_defect.get_str()},
                           {"middle_defect", w.middle_defect.get_str()},
                           {"image_defect", w.image_defect.get_str()},
                           {"order_p", w.order_p.get_str()},
                           {"order_q", w.order_q.get_str()},
                           {"order_pq", w.order_pq.get_str()}});
  }
  return Json{{"windows", windows}, {"defects_shrink", t.defects_shrink}, {"verdict", t.verdict}};
}

void trace_truncation(TaskOutcome& out, const TruncationReport& t) {
  for (const auto& w : t.windows) {
    out.trace.push_back("window B = " + std::to_string(w.bound) + ": defects " + w.kernel_defect.get_str() + "/" +
                        w.middle_defect.get_str() + "/" + w.image_defect.get_str() + ", torsion orders " +
                        w.order_p.get_str() + ", " + w.order_q.get_str() + ", " + w.order_pq.get_str());
  }
}

void op_fracture(const Args& a, const RunOptions& o, TaskOutcome& out) {
  const LocalizationSquare& sq = a.square();
  FPModule m = a.module("module", sq.base());
  FractureReport r = fracture_reconstruct(m, sq);
  out.verdict = r.verdict;
  out.result = fracture_json(r);
  for (const auto& f : r.factors) {
    out.trace.push_back(f.factor + ": p-corner " + f.corner_p.to_string() + ", q-corner " + f.corner_q.to_string() +
                        ", apex " + f.apex.to_string() + (f.exact ? ", exact" : ", NOT exact"));
  }
  out.trace.push_back("Bezout witnesses:");
  for (const auto& w : r.witnesses) out.trace.push_back("  " + witness_line(w));
  out.summary.push_back("M = " + r.module.to_string() + "; holim: " + table_line(r.holim_homology));
  if (o.oracle || a.flag("oracle")) {
    int b = o.truncation_bound.value_or(a.option("truncation_bound", 2));
    TruncationReport t = truncation_oracle(m, sq, b, r);
    out.result["truncation_oracle"] = truncation_json(t);
    trace_truncation(out, t);
    out.summary.push_back("truncation oracle agrees (B = " + std::to_string(b) + ")");
  }
}

void op_truncation(const Args& a, const RunOptions& o, TaskOutcome& out) {
  const LocalizationSquare& sq = a.square();
  FPModule m = a.module("module", sq.base());
  int b = o.truncation_bound.value_or(a.option("truncation_bound", a.integer("bound", 2)));
  TruncationReport t = truncation_oracle(m, sq, b);
  out.verdict = t.verdict;
  out.result = truncation_json(t);
  trace_truncation(out, t);
}

void op_hasse(const Args& a, const RunOptions&, TaskOutcome& out) {
  const LocalizationSquare& sq = a.square();
  FPModule m = a.module("module", sq.base());
  HasseReport r = hasse_pipeline(sq, m);
  out.verdict = r.verdict;
  out.result = Json{{"restriction_matches", r.restriction_matches},
                    {"kan_matches", r.kan_matches},
                    {"unit", cell_json(r.unit)},
                    {"notes", r.notes}};
  out.trace.push_back("restriction of the extended diagram matches: " + yes(r.restriction_matches));
  out.trace.push_back("left Kan from the added object matches: " + yes(r.kan_matches));
  for (const auto& [label, inv] : r.unit.cone_homology) out.trace.push_back("unit cone H" + label + " = " + inv.to_string());
  out.summary.insert(out.summary.end(), r.notes.begin(), r.notes.end());
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"validate_category", op_validate_category},
      {"linear_extension", op_linear_extension},
      {"chains", op_chains},
      {"slice", [](const Args& a, const RunOptions&, TaskOutcome& o) { op_slice(a, false, o); }},
      {"coslice", [](const Args& a, const RunOptions&, TaskOutcome& o) { op_slice(a, true, o); }},
      {"snf", op_snf},
      {"module_invariants", op_module_invariants},
      {"homology", op_homology},
      {"free_resolution", op_free_resolution},
      {"tor", op_tor},
      {"quasi_iso", op_quasi_iso},
      {"validate_diagram", op_validate_diagram},
      {"latching", [](const Args& a, const RunOptions&, TaskOutcome& o) { op_latching(a, false, o); }},
      {"matching", [](const Args& a, const RunOptions&, TaskOutcome& o) { op_latching(a, true, o); }},
      {"probes", op_probes},
      {"colim_decomposition", op_colim_decomposition},
      {"left_kan", [](const Args& a, const RunOptions&, TaskOutcome& o) { op_kan(a, false, o); }},
      {"right_kan", [](const Args& a, const RunOptions&, TaskOutcome& o) { op_kan(a, true, o); }},
      {"bk_holim", op_bk_holim},
      {"cellularization", op_cellularization},
      {"ring_pullback", op_ring_pullback},
      {"fracture", op_fracture},
      {"truncation_oracle", op_truncation},
      {"hasse", op_hasse},
  };
  return table;
}

TaskOutcome run_indexed(const Manifest& m, std::size_t index, const RunOptions& opts) {
  const TaskSpec& task = m.tasks[index];
  auto it = handlers().find(task.op);
  if (it == handlers().end()) {
    throw InputError(InputKind::Parse, "/tasks/" + std::to_string(index) + "/op", "unknown operation '" + task.op + "'");
  }
  TaskOutcome out;
  out.id = task.id;
  out.op = task.op;
  auto start = std::chrono::steady_clock::now();
  try {
    it->second(Args(m, task, index), opts, out);
  } catch (const Error& e) {
    int code = (e.code() == ErrorCode::OracleDisagreement || e.code() == ErrorCode::Internal) ? kExitOracleDisagreement
                                                                                                : kExitInputError;
    throw TaskError(task.id, code, e.what());
  }
  out.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace

std::string TaskOutcome::status() const {
  if (!verdict) return "done";
  return *verdict ? "pass" : "fail";
}

TaskError::TaskError(std::string task, int code, const std::string& what)
    : std::runtime_error("task '" + task + "': " + what), task_(std::move(task)), code_(code) {}

std::vector<std::string> operations() {
  std::vector<std::string> out;
  for (const auto& [name, h] : handlers()) out.push_back(name);
  return out;
}

TaskOutcome run_task(const Manifest& m, const TaskSpec& task, const RunOptions& opts) {
  for (std::size_t i = 0; i < m.tasks.size(); ++i)
    if (m.tasks[i].id == task.id) return run_indexed(m, i, opts);
  throw InputError(InputKind::UnknownTask, "/tasks", "no task '" + task.id + "'");
}

std::vector<TaskOutcome> run_all(const Manifest& m, const RunOptions& opts) {
  std::vector<TaskOutcome> out;
  out.reserve(m.tasks.size());
  if (opts.jobs <= 1) {
    for (std::size_t i = 0; i < m.tasks.size(); ++i) out.push_back(run_indexed(m, i, opts));
    return out;
  }
  for (std::size_t start = 0; start < m.tasks.size(); start += opts.jobs) {
    std::vector<std::future<TaskOutcome>> batch;
    const std::size_t end = std::min(m.tasks.size(), start + opts.jobs);
    for (std::size_t i = start; i < end; ++i) {
      batch.push_back(std::async(std::launch::async, [&m, i, &opts] { return run_indexed(m, i, opts); }));
    }
    for (auto& f : batch) out.push_back(f.get());
  }
  return out;
}

int exit_code(const std::vector<TaskOutcome>& outcomes) {
  for (const auto& o : outcomes)
    if (o.verdict && !*o.verdict) return kExitVerdictFailure;
  return kExitPass;
}

Json report_json(const std::vector<TaskOutcome>& outcomes, const RunOptions& opts) {
  Json tasks = Json::array();
  for (const auto& o : outcomes) {
    Json t = Json{{"id", o.id}, {"op", o.op}, {"status", o.status()}};
    if (o.verdict) t["verdict"] = *o.verdict;
    t["summary"] = o.summary;
    t["result"] = o.result;
    t["trace"] = o.trace;
    if (opts.timing) t["millis"] = o.millis;
    tasks.push_back(t);
  }
  return Json{{"schema", kReportSchema}, {"engine", RINGDIAG_VERSION}, {"oracle", opts.oracle}, {"tasks", tasks}};
}

std::string report_text(const std::vector<TaskOutcome>& outcomes) {
  std::ostringstream os;
  std::size_t failed = 0;
  for (const auto& o : outcomes) {
    std::string status = o.status();
    for (auto& c : status) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    os << "[" << status << "] " << o.id << " (" << o.op << ")\n";
    for (const auto& s : o.summary) os << "    " << s << "\n";
    if (o.verdict && !*o.verdict) ++failed;
  }
  os << outcomes.size() << " task(s), " << failed << " failed\n";
  return os.str();
}

std::string explain(const Json& report, const std::string& task) {
  if (!report.is_object() || !report.contains("tasks")) {
    throw InputError(InputKind::Parse, "/", "not a report document");
  }
  for (const auto& t : report["tasks"]) {
    if (t.value("id", "") != task) continue;
    std::ostringstream os;
    os << task << " (" << t.value("op", "") << "): " << t.value("status", "") << "\n";
    for (const auto& line : t["trace"]) os << line.get<std::string>() << "\n";
    return os.str();
  }
  throw InputError(InputKind::UnknownTask, "/tasks", "no task '" + task + "' in the report");
}

}  // namespace ringdiag::cli
