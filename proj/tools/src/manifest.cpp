#include "ringdiag_cli/manifest.hpp"

#include <fstream>
#include <sstream>

#include "ringdiag/error.hpp"

namespace ringdiag::cli {

namespace {

std::string kind_label(InputKind k) {
  switch (k) {
    case InputKind::Parse:
      return "ParseError";
    case InputKind::Reference:
      return "ReferenceError";
    case InputKind::UnknownTask:
      return "UnknownTask";
  }
  return "InputError";
}

std::string child(const std::string& where, const std::string& key) {
  std::string k;
  for (char c : key) {
    if (c == '~') k += "~0";
    else if (c == '/') k += "~1";
    else k += c;
  }
  return where + "/" + k;
}
std::string child(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw InputError(InputKind::Parse, where, what);
}

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, "missing field '" + key + "'");
  return *it;
}

const Json* optional_field(const Json& j, const std::string& key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

long long as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<long long>();
}

std::size_t as_count(const Json& j, const std::string& where) {
  long long v = as_int(j, where);
  if (v < 0) bad(where, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

Integer as_integer(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Integer v;
    if (v.set_str(j.get<std::string>(), 10) != 0) bad(where, "not an integer: " + j.get<std::string>());
    return v;
  }
  bad(where, "expected an integer");
}

Rational as_rational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  if (!j.is_string()) bad(where, "expected an exact fraction \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    bad(where, e.what());
  }
}

const Json& object_section(const Json& doc, const std::string& key) {
  static const Json empty = Json::object();
  auto it = doc.find(key);
  if (it == doc.end()) return empty;
  if (!it->is_object()) bad("/" + key, "expected an object of named entries");
  return *it;
}

template <typename Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& name, const std::string& kind,
                                        const std::string& where) {
  auto it = m.find(name);
  if (it == m.end()) throw InputError(InputKind::Reference, where, "undeclared " + kind + " '" + name + "'");
  return it->second;
}

// Engine errors raised while building a declared object are input errors at
// that object.
template <typename F>
auto guarded(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    bad(where, e.what());
  } catch (const std::logic_error& e) {
    bad(where, e.what());
  }
}

std::vector<std::string> string_list(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected a list of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(j[i], child(where, i)));
  return out;
}

std::pair<std::string, std::string> parse_arrow_key(const std::string& key, const std::string& where) {
  auto pos = key.find("->");
  if (pos == std::string::npos) bad(where, "arrow keys look like \"s->t\"");
  return {key.substr(0, pos), key.substr(pos + 2)};
}

FiniteCategory parse_category(const Json& j, const std::string& where) {
  auto objects = string_list(field(j, "objects", where), child(where, "objects"));
  std::vector<std::pair<std::string, std::string>> arrows;
  if (const Json* a = optional_field(j, "arrows")) {
    if (!a->is_array()) bad(child(where, "arrows"), "expected a list of [source, target] pairs");
    for (std::size_t i = 0; i < a->size(); ++i) {
      auto pair = string_list((*a)[i], child(child(where, "arrows"), i));
      if (pair.size() != 2) bad(child(child(where, "arrows"), i), "expected [source, target]");
      arrows.emplace_back(pair[0], pair[1]);
    }
  }
  FiniteCategory::Closure mode = FiniteCategory::Closure::Generate;
  if (const Json* c = optional_field(j, "closure")) {
    std::string s = as_string(*c, child(where, "closure"));
    if (s == "validate") mode = FiniteCategory::Closure::Validate;
    else if (s != "generate") bad(child(where, "closure"), "closure is \"generate\" or \"validate\"");
  }
  return guarded(where, [&] { return FiniteCategory::make(objects, arrows, mode); });
}

ChainComplex parse_complex(const Json& j, const Ring& ring, const std::string& where) {
  int lo = static_cast<int>(as_int(field(j, "lo", where), child(where, "lo")));
  const Json& rj = field(j, "ranks", where);
  if (!rj.is_array()) bad(child(where, "ranks"), "expected a list of ranks");
  std::vector<std::size_t> ranks;
  for (std::size_t i = 0; i < rj.size(); ++i) ranks.push_back(as_count(rj[i], child(child(where, "ranks"), i)));
  const int hi = lo + static_cast<int>(ranks.size()) - 1;
  auto rank_at = [&](int n) -> std::size_t {
    return (n < lo || n > hi) ? 0 : ranks[static_cast<std::size_t>(n - lo)];
  };
  std::map<int, Matrix> rels;
  if (const Json* r = optional_field(j, "relations")) {
    if (!r->is_object()) bad(child(where, "relations"), "expected degree -> matrix");
    for (const auto& [key, val] : r->items()) {
      std::string at = child(child(where, "relations"), key);
      int n = 0;
      try {
        n = std::stoi(key);
      } catch (const std::exception&) {
        bad(at, "degree keys are integers");
      }
      if (n < lo || n > hi) bad(at, "degree outside the window");
      rels[n] = matrix_from_json(val, rank_at(n), static_cast<std::size_t>(-1), at);
    }
  }
  std::map<int, Matrix> diffs;
  if (const Json* d = optional_field(j, "differentials")) {
    if (!d->is_object()) bad(child(where, "differentials"), "expected degree -> matrix");
    for (const auto& [key, val] : d->items()) {
      std::string at = child(child(where, "differentials"), key);
      int n = 0;
      try {
        n = std::stoi(key);
      } catch (const std::exception&) {
        bad(at, "degree keys are integers");
      }
      if (n <= lo || n > hi) bad(at, "differential d(n) needs lo < n <= hi");
      diffs[n] = matrix_from_json(val, rank_at(n - 1), rank_at(n), at);
    }
  }
  return guarded(where, [&] {
    std::vector<FPModule> modules;
    for (int n = lo; n <= hi; ++n) {
      auto it = rels.find(n);
      modules.emplace_back(ring, rank_at(n), it == rels.end() ? Matrix(rank_at(n), 0) : it->second);
    }
    std::vector<Matrix> ds;
    for (int n = lo + 1; n <= hi; ++n) {
      auto it = diffs.find(n);
      ds.push_back(it == diffs.end() ? Matrix(rank_at(n - 1), rank_at(n)) : it->second);
    }
    return ChainComplex(ring, lo, std::move(modules), std::move(ds));
  });
}

ModuleDiagramSpec parse_module_diagram(const Json& j, const Manifest& m, const std::string& where) {
  ModuleDiagramSpec spec;
  spec.rings = as_string(field(j, "rings", where), child(where, "rings"));
  const RingDiagramSpec& rd = lookup(m.ring_diagrams, spec.rings, "ring diagram", child(where, "rings"));
  const Json& vals = field(j, "values", where);
  if (!vals.is_object()) bad(child(where, "values"), "expected object -> complex name");
  std::map<std::string, ChainComplex> values;
  for (const auto& [obj, val] : vals.items()) {
    std::string at = child(child(where, "values"), obj);
    std::string name = as_string(val, at);
    spec.values[obj] = name;
    values[obj] = lookup(m.complexes, name, "complex", at).complex;
  }
  std::map<ArrowKey, ChainMap> gens;
  if (const Json* s = optional_field(j, "structure")) {
    if (!s->is_object()) bad(child(where, "structure"), "expected \"s->t\" -> degree -> matrix");
    for (const auto& [key, val] : s->items()) {
      std::string at = child(child(where, "structure"), key);
      auto [src, tgt] = parse_arrow_key(key, at);
      auto vs = values.find(src);
      auto vt = values.find(tgt);
      if (vs == values.end() || vt == values.end()) {
        throw InputError(InputKind::Reference, at, "arrow endpoints need declared values");
      }
      if (!val.is_object()) bad(at, "expected degree -> matrix");
      gens[{src, tgt}] = guarded(at, [&] {
        RingMap f = rd.diagram.map(src, tgt);
        ChainComplex pushed = base_change(vs->second, f);
        std::map<int, Matrix> comps;
        for (const auto& [dkey, mat] : val.items()) {
          int n = std::stoi(dkey);
          comps[n] = matrix_from_json(mat, vt->second.rank(n), pushed.rank(n), child(at, dkey));
        }
        return ChainMap(pushed, vt->second, std::move(comps));
      });
    }
  }
  spec.diagram = guarded(where, [&] { return ModuleDiagram::from_generators(rd.diagram, values, gens); });
  guarded(where, [&] { return validate_diagram(spec.diagram); });
  return spec;
}

}  // namespace

InputError::InputError(InputKind kind, const std::string& where, const std::string& what)
    : std::runtime_error(kind_label(kind) + " at " + (where.empty() ? "/" : where) + ": " + what),
      kind_(kind),
      where_(where) {}

Ring ring_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) bad(where, "rings look like {\"inverted\": [...], \"modulus\": n}");
  Integer modulus = 0;
  if (const Json* n = optional_field(j, "modulus")) modulus = as_integer(*n, child(where, "modulus"));
  if (modulus < 0) bad(child(where, "modulus"), "modulus must be >= 0");
  const Json* inv = optional_field(j, "inverted");
  return guarded(where, [&] {
    if (inv && inv->is_string()) {
      if (inv->get<std::string>() != "all") bad(child(where, "inverted"), "use a prime list or \"all\"");
      return Ring::make_all(modulus);
    }
    std::vector<Integer> primes;
    if (inv) {
      if (!inv->is_array()) bad(child(where, "inverted"), "expected a list of primes");
      for (std::size_t i = 0; i < inv->size(); ++i) primes.push_back(as_integer((*inv)[i], child(child(where, "inverted"), i)));
    }
    return Ring::make(primes, modulus);
  });
}

Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  const std::size_t any = static_cast<std::size_t>(-1);
  if (!j.is_array()) bad(where, "matrices are lists of rows");
  if (j.empty()) {
    if (rows != 0 && rows != any && cols != 0) bad(where, "empty matrix where " + std::to_string(rows) + " rows are needed");
    return Matrix(rows == any ? 0 : rows, cols == any ? 0 : cols);
  }
  if (rows != any && j.size() != rows) {
    bad(where, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  }
  std::size_t width = j[0].is_array() ? j[0].size() : 0;
  if (cols != any && width != cols) {
    bad(where, "expected " + std::to_string(cols) + " columns, got " + std::to_string(width));
  }
  Matrix m(j.size(), width);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Json& row = j[r];
    std::string rat = child(where, r);
    if (!row.is_array() || row.size() != width) bad(rat, "ragged row");
    for (std::size_t c = 0; c < width; ++c) m(r, c) = as_rational(row[c], child(rat, c));
  }
  return m;
}

FPModule module_from_spec(const Ring& ring, const Json& j, const std::string& where) {
  std::size_t rank = 0;
  if (const Json* r = optional_field(j, "rank")) rank = as_count(*r, child(where, "rank"));
  std::vector<Integer> orders;
  if (const Json* t = optional_field(j, "torsion")) {
    if (!t->is_array()) bad(child(where, "torsion"), "expected [[prime, exponent], ...]");
    for (std::size_t i = 0; i < t->size(); ++i) {
      std::string at = child(child(where, "torsion"), i);
      const Json& pe = (*t)[i];
      if (!pe.is_array() || pe.size() != 2) bad(at, "expected [prime, exponent]");
      Integer p = as_integer(pe[0], child(at, 0));
      std::size_t e = as_count(pe[1], child(at, 1));
      if (!is_probable_prime(p)) bad(child(at, 0), p.get_str() + " is not prime");
      if (e == 0) bad(child(at, 1), "exponent must be positive");
      Integer order;
      mpz_pow_ui(order.get_mpz_t(), p.get_mpz_t(), e);
      orders.push_back(order);
    }
  }
  Matrix rel(rank + orders.size(), orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) rel(rank + i, i) = Rational(orders[i]);
  return guarded(where, [&] { return FPModule(ring, rank + orders.size(), rel); });
}

LocalizationSquare square_from_json(const Json& j, const std::string& where) {
  std::vector<Integer> s0;
  if (const Json* s = optional_field(j, "S0")) {
    if (!s->is_array()) bad(child(where, "S0"), "expected a list of primes");
    for (std::size_t i = 0; i < s->size(); ++i) s0.push_back(as_integer((*s)[i], child(child(where, "S0"), i)));
  }
  Integer p = as_integer(field(j, "p", where), child(where, "p"));
  Integer q = as_integer(field(j, "q", where), child(where, "q"));
  return guarded(where, [&] { return LocalizationSquare(s0, p, q); });
}

Manifest parse_manifest(const Json& doc) {
  if (!doc.is_object()) bad("", "a manifest is an object");
  if (const Json* s = optional_field(doc, "schema")) {
    if (as_int(*s, "/schema") != kManifestSchema) bad("/schema", "unsupported schema version");
  }
  Manifest m;
  for (const auto& [name, j] : object_section(doc, "categories").items()) {
    m.categories[name] = parse_category(j, child("/categories", name));
  }
  for (const auto& [name, j] : object_section(doc, "inclusions").items()) {
    std::string where = child("/inclusions", name);
    InclusionSpec spec;
    spec.ambient = as_string(field(j, "ambient", where), child(where, "ambient"));
    const FiniteCategory& amb = lookup(m.categories, spec.ambient, "category", child(where, "ambient"));
    auto ids = string_list(field(j, "objects", where), child(where, "objects"));
    spec.inclusion = guarded(where, [&] { return Inclusion::full(amb, ids); });
    m.inclusions[name] = spec;
  }
  for (const auto& [name, j] : object_section(doc, "rings").items()) {
    m.rings[name] = ring_from_json(j, child("/rings", name));
  }
  for (const auto& [name, j] : object_section(doc, "ring_diagrams").items()) {
    std::string where = child("/ring_diagrams", name);
    RingDiagramSpec spec;
    spec.category = as_string(field(j, "category", where), child(where, "category"));
    const FiniteCategory& cat = lookup(m.categories, spec.category, "category", child(where, "category"));
    const Json& rj = field(j, "rings", where);
    if (!rj.is_object()) bad(child(where, "rings"), "expected object -> ring name");
    std::map<std::string, Ring> rings;
    for (const auto& [obj, r] : rj.items()) {
      std::string at = child(child(where, "rings"), obj);
      spec.rings[obj] = as_string(r, at);
      rings[obj] = lookup(m.rings, spec.rings[obj], "ring", at);
    }
    spec.diagram = guarded(where, [&] { return RingDiagram(cat, rings); });
    m.ring_diagrams[name] = spec;
  }
  for (const auto& [name, j] : object_section(doc, "complexes").items()) {
    std::string where = child("/complexes", name);
    ComplexSpec spec;
    spec.ring = as_string(field(j, "ring", where), child(where, "ring"));
    spec.complex = parse_complex(j, lookup(m.rings, spec.ring, "ring", child(where, "ring")), where);
    m.complexes[name] = spec;
  }
  for (const auto& [name, j] : object_section(doc, "module_diagrams").items()) {
    m.module_diagrams[name] = parse_module_diagram(j, m, child("/module_diagrams", name));
  }
  for (const auto& [name, j] : object_section(doc, "squares").items()) {
    m.squares[name] = square_from_json(j, child("/squares", name));
  }
  if (const Json* t = optional_field(doc, "tasks")) {
    if (!t->is_array()) bad("/tasks", "expected a list of tasks");
    std::map<std::string, bool> seen;
    for (std::size_t i = 0; i < t->size(); ++i) {
      std::string where = child("/tasks", i);
      const Json& tj = (*t)[i];
      TaskSpec task;
      task.id = as_string(field(tj, "id", where), child(where, "id"));
      task.op = as_string(field(tj, "op", where), child(where, "op"));
      if (seen[task.id]) bad(child(where, "id"), "duplicate task id '" + task.id + "'");
      seen[task.id] = true;
      for (const auto& [k, v] : tj.items()) {
        if (k != "id" && k != "op") task.args[k] = v;
      }
      m.tasks.push_back(std::move(task));
    }
  }
  return m;
}

Manifest parse_manifest_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(InputKind::Parse, "byte " + std::to_string(e.byte), e.what());
  }
  return parse_manifest(doc);
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(InputKind::Parse, path, "cannot read manifest");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest_text(ss.str());
}

Json to_json(const Ring& r) {
  Json j = Json::object();
  if (r.inverts_all()) {
    j["inverted"] = "all";
  } else {
    j["inverted"] = Json::array();
    for (const auto& p : r.inverted()) j["inverted"].push_back(p.fits_slong_p() ? Json(p.get_si()) : Json(p.get_str()));
  }
  j["modulus"] = r.modulus().fits_slong_p() ? Json(r.modulus().get_si()) : Json(r.modulus().get_str());
  return j;
}

Json to_json(const Matrix& m) {
  Json j = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    j.push_back(row);
  }
  return j;
}

Json to_json(const ModuleInvariants& inv) {
  Json t = Json::array();
  for (const auto& d : inv.torsion) t.push_back(d.get_str());
  return Json{{"rank", inv.free_rank}, {"torsion", t}};
}

Json to_json(const FiniteCategory& c) {
  Json arrows = Json::array();
  for (const auto& [s, t] : c.generating_arrows()) arrows.push_back({s, t});
  return Json{{"objects", c.objects()}, {"arrows", arrows}};
}

Json to_json(const ChainComplex& c) {
  Json j = Json::object();
  j["lo"] = c.empty_window() ? 0 : c.lo();
  j["ranks"] = Json::array();
  Json rels = Json::object();
  Json diffs = Json::object();
  if (!c.empty_window()) {
    for (int n = c.lo(); n <= c.hi(); ++n) {
      FPModule mod = c.module(n);
      j["ranks"].push_back(mod.generators());
      if (mod.relations().cols() > 0) rels[std::to_string(n)] = to_json(mod.relations());
      if (n > c.lo() && !c.d(n).is_zero()) diffs[std::to_string(n)] = to_json(c.d(n));
    }
  }
  if (!rels.empty()) j["relations"] = rels;
  if (!diffs.empty()) j["differentials"] = diffs;
  return j;
}

Json to_json(const LocalizationSquare& sq) {
  Json s0 = Json::array();
  for (const auto& p : sq.s0()) s0.push_back(p.get_str());
  return Json{{"S0", s0}, {"p", sq.p().get_str()}, {"q", sq.q().get_str()}};
}

Json homology_json(const std::vector<std::pair<int, ModuleInvariants>>& table) {
  Json out = Json::array();
  for (const auto& [n, inv] : table) {
    Json t = Json::array();
    for (const auto& d : inv.torsion) t.push_back(d.get_str());
    out.push_back(Json{{"degree", n}, {"rank", inv.free_rank}, {"invariant_factors", t}});
  }
  return out;
}

Json serialize_manifest(const Manifest& m) {
  Json doc = Json::object();
  doc["schema"] = kManifestSchema;
  Json cats = Json::object();
  for (const auto& [name, c] : m.categories) cats[name] = to_json(c);
  doc["categories"] = cats;
  Json incs = Json::object();
  for (const auto& [name, i] : m.inclusions) {
    incs[name] = Json{{"ambient", i.ambient}, {"objects", i.inclusion.sub().objects()}};
  }
  doc["inclusions"] = incs;
  Json rings = Json::object();
  for (const auto& [name, r] : m.rings) rings[name] = to_json(r);
  doc["rings"] = rings;
  Json rds = Json::object();
  for (const auto& [name, rd] : m.ring_diagrams) {
    Json rj = Json::object();
    for (const auto& [obj, r] : rd.rings) rj[obj] = r;
    rds[name] = Json{{"category", rd.category}, {"rings", rj}};
  }
  doc["ring_diagrams"] = rds;
  Json cxs = Json::object();
  for (const auto& [name, c] : m.complexes) {
    Json j = Json{{"ring", c.ring}};
    j.update(to_json(c.complex));
    cxs[name] = j;
  }
  doc["complexes"] = cxs;
  Json mds = Json::object();
  for (const auto& [name, md] : m.module_diagrams) {
    Json values = Json::object();
    for (const auto& [obj, c] : md.values) values[obj] = c;
    Json structure = Json::object();
    for (const auto& [s, t] : md.diagram.shape().generating_arrows()) {
      ChainMap f = md.diagram.structure(s, t);
      Json comps = Json::object();
      for (int n = f.lo(); n <= f.hi(); ++n) {
        Matrix a = f.at(n);
        if (!a.empty()) comps[std::to_string(n)] = to_json(a);
      }
      structure[arrow_id(s, t)] = comps;
    }
    mds[name] = Json{{"rings", md.rings}, {"values", values}, {"structure", structure}};
  }
  doc["module_diagrams"] = mds;
  Json sqs = Json::object();
  for (const auto& [name, sq] : m.squares) sqs[name] = to_json(sq);
  doc["squares"] = sqs;
  Json tasks = Json::array();
  for (const auto& t : m.tasks) {
    Json j = Json{{"id", t.id}, {"op", t.op}};
    for (const auto& [k, v] : t.args.items()) j[k] = v;
    tasks.push_back(j);
  }
  doc["tasks"] = tasks;
  return doc;
}

}  // namespace ringdiag::cli
