#include "ringdiag/diagram.hpp"

#include <functional>

#include "ringdiag/error.hpp"

namespace ringdiag {

namespace {

std::string arrow_name(const std::string& s, const std::string& t) { return s + "->" + t; }

// The chain map with the given matrices between two complexes that share the
// generators of `like` degreewise.
ChainMap rewrap(const ChainComplex& source, const ChainComplex& target, const ChainMap& like) {
  std::map<int, Matrix> comps;
  for (int n = like.lo(); n <= like.hi(); ++n) comps[n] = like.at(n);
  return ChainMap(source, target, std::move(comps));
}

}  // namespace

RingDiagram::RingDiagram(FiniteCategory shape, std::map<std::string, Ring> rings)
    : shape_(std::move(shape)), rings_(std::move(rings)) {
  for (const auto& s : shape_.objects()) {
    if (!rings_.count(s)) throw Error(ErrorCode::UnknownObject, "no ring assigned to '" + s + "'");
  }
  for (const auto& [s, r] : rings_) {
    if (!shape_.has_object(s)) throw Error(ErrorCode::UnknownObject, "ring assigned to unknown object '" + s + "'");
  }
  for (const auto& [s, t] : shape_.arrows()) {
    if (auto why = RingMap::obstruction(rings_.at(s), rings_.at(t))) {
      throw Error(ErrorCode::NoCanonicalMap, "arrow " + arrow_name(s, t) + ": " + *why);
    }
  }
}

RingDiagram RingDiagram::constant(const FiniteCategory& shape, const Ring& ring) {
  std::map<std::string, Ring> rings;
  for (const auto& s : shape.objects()) rings[s] = ring;
  return RingDiagram(shape, std::move(rings));
}

const Ring& RingDiagram::ring(const std::string& s) const {
  auto it = rings_.find(s);
  if (it == rings_.end()) throw Error(ErrorCode::UnknownObject, "no object '" + s + "'");
  return it->second;
}

RingMap RingDiagram::map(const std::string& s, const std::string& t) const {
  if (!shape_.hom(s, t)) throw Error(ErrorCode::UnknownObject, "no arrow " + arrow_name(s, t));
  return RingMap::canonical(ring(s), ring(t));
}

RingDiagram RingDiagram::restricted(const Inclusion& incl) const {
  std::map<std::string, Ring> rings;
  for (const auto& s : incl.sub().objects()) rings[s] = ring(s);
  return RingDiagram(incl.sub(), std::move(rings));
}

ModuleDiagram::ModuleDiagram(RingDiagram rings, std::map<std::string, ChainComplex> values,
                             std::map<ArrowKey, ChainMap> structure)
    : rings_(std::move(rings)), values_(std::move(values)), structure_(std::move(structure)) {
  const FiniteCategory& cat = rings_.shape();
  for (const auto& s : cat.objects()) {
    auto it = values_.find(s);
    if (it == values_.end()) throw Error(ErrorCode::UnknownObject, "no value at '" + s + "'");
    if (it->second.ring() != rings_.ring(s)) {
      throw Error(ErrorCode::RingMismatch, "value at '" + s + "' is over " + it->second.ring().name() + ", not " +
                                               rings_.ring(s).name());
    }
  }
  if (values_.size() != cat.size()) throw Error(ErrorCode::UnknownObject, "values given for unknown objects");
  for (const auto& [key, m] : structure_) {
    if (key.first == key.second || !cat.hom(key.first, key.second)) {
      throw Error(ErrorCode::UnknownObject, "structure map for non-arrow " + arrow_name(key.first, key.second));
    }
  }
  for (const auto& [s, t] : cat.arrows()) {
    auto it = structure_.find({s, t});
    if (it == structure_.end()) {
      throw Error(ErrorCode::InvalidMap, "missing structure map for " + arrow_name(s, t));
    }
    ChainComplex pushed = base_change(values_.at(s), rings_.map(s, t));
    if (!(it->second.source() == pushed) || !(it->second.target() == values_.at(t))) {
      throw Error(ErrorCode::InvalidMap,
                  "structure map for " + arrow_name(s, t) + " must run from the base change of X(" + s + ") to X(" +
                      t + ")");
    }
  }
  validate_diagram(*this);
}

ModuleDiagram ModuleDiagram::from_generators(RingDiagram rings, std::map<std::string, ChainComplex> values,
                                             const std::map<ArrowKey, ChainMap>& generators) {
  const FiniteCategory& cat = rings.shape();
  std::map<ArrowKey, ChainMap> all;
  std::function<ChainMap(const std::string&, const std::string&)> get = [&](const std::string& s,
                                                                           const std::string& t) -> ChainMap {
    if (auto it = all.find({s, t}); it != all.end()) return it->second;
    if (auto it = generators.find({s, t}); it != generators.end()) return all[{s, t}] = it->second;
    for (const auto& u : cat.arrows_out_of(s)) {
      if (u == t || !cat.hom(u, t) || !generators.count({s, u})) continue;
      ChainMap first = base_change(get(s, u), rings.map(u, t));
      ChainMap composite = get(u, t).after(first);
      return all[{s, t}] = composite;
    }
    throw Error(ErrorCode::MissingComposite, "arrow " + arrow_name(s, t) + " is not generated");
  };
  for (const auto& [s, t] : cat.arrows()) get(s, t);
  return ModuleDiagram(std::move(rings), std::move(values), std::move(all));
}

ModuleDiagram ModuleDiagram::zero(const RingDiagram& rings) {
  std::map<std::string, ChainComplex> values;
  std::map<ArrowKey, ChainMap> structure;
  for (const auto& s : rings.shape().objects()) values[s] = ChainComplex::zero(rings.ring(s));
  for (const auto& [s, t] : rings.shape().arrows()) {
    structure[{s, t}] = ChainMap::zero(ChainComplex::zero(rings.ring(t)), values[t]);
  }
  return ModuleDiagram(rings, std::move(values), std::move(structure));
}

ModuleDiagram ModuleDiagram::induced(const RingDiagram& rings, const ChainComplex& c) {
  std::map<std::string, ChainComplex> values;
  std::map<ArrowKey, ChainMap> structure;
  for (const auto& s : rings.shape().objects()) {
    values[s] = base_change(c, RingMap::canonical(c.ring(), rings.ring(s)));
  }
  for (const auto& [s, t] : rings.shape().arrows()) structure[{s, t}] = ChainMap::identity(values[t]);
  return ModuleDiagram(rings, std::move(values), std::move(structure));
}

ModuleDiagram ModuleDiagram::tautological(const RingDiagram& rings) {
  std::map<std::string, ChainComplex> values;
  std::map<ArrowKey, ChainMap> structure;
  for (const auto& s : rings.shape().objects()) values[s] = ChainComplex::sphere(rings.ring(s), 0);
  for (const auto& [s, t] : rings.shape().arrows()) structure[{s, t}] = ChainMap::identity(values[t]);
  return ModuleDiagram(rings, std::move(values), std::move(structure));
}

const ChainComplex& ModuleDiagram::value(const std::string& s) const {
  auto it = values_.find(s);
  if (it == values_.end()) throw Error(ErrorCode::UnknownObject, "no object '" + s + "'");
  return it->second;
}

ChainMap ModuleDiagram::structure(const std::string& s, const std::string& t) const {
  if (s == t) return ChainMap::identity(value(s));
  auto it = structure_.find({s, t});
  if (it == structure_.end()) throw Error(ErrorCode::UnknownObject, "no arrow " + arrow_name(s, t));
  return it->second;
}

ChainMap ModuleDiagram::adjoint_structure(const std::string& s, const std::string& t) const {
  RingMap a = rings_.map(s, t);
  if (!a.is_module_finite()) {
    throw Error(ErrorCode::NotModuleFinite,
                "arrow " + arrow_name(s, t) + ": " + a.target().name() + " is not finite over " + a.source().name());
  }
  ChainMap m = structure(s, t);
  std::map<int, Matrix> comps;
  for (int n = m.lo(); n <= m.hi(); ++n) comps[n] = lift_entries(a, m.at(n));
  return ChainMap(value(s), restrict_scalars(value(t), a), std::move(comps));
}

ValidationReport validate_diagram(const ModuleDiagram& x) {
  ValidationReport out;
  const FiniteCategory& cat = x.shape();
  for (const auto& [s, u] : cat.arrows())
    for (const auto& t : cat.arrows_out_of(u)) {
      ChainMap direct = x.structure(s, t);
      ChainMap via = x.structure(u, t).after(base_change(x.structure(s, u), x.rings().map(u, t)));
      std::string square = arrow_name(s, t) + " = " + arrow_name(u, t) + " o (" + arrow_name(u, t) + ")_*(" +
                           arrow_name(s, u) + ")";
      if (!chain_maps_equal(direct, via)) {
        throw Error(ErrorCode::TransitivityViolation, "(" + arrow_name(s, u) + ", " + arrow_name(u, t) + "): " +
                                                          square + " fails");
      }
      out.squares.push_back(square);
    }
  return out;
}

DiagramMap::DiagramMap(ModuleDiagram source, ModuleDiagram target, std::map<std::string, ChainMap> components)
    : source_(std::move(source)), target_(std::move(target)), comps_(std::move(components)) {
  if (!(source_.rings() == target_.rings())) {
    throw Error(ErrorCode::RingMismatch, "diagram map between different ring diagrams");
  }
  const FiniteCategory& cat = source_.shape();
  for (const auto& s : cat.objects()) {
    auto it = comps_.find(s);
    if (it == comps_.end()) throw Error(ErrorCode::InvalidMap, "diagram map has no component at '" + s + "'");
    if (!(it->second.source() == source_.value(s)) || !(it->second.target() == target_.value(s))) {
      throw Error(ErrorCode::InvalidMap, "component at '" + s + "' has the wrong source or target");
    }
  }
  for (const auto& [s, t] : cat.arrows()) {
    ChainMap lhs = at(t).after(source_.structure(s, t));
    ChainMap rhs = target_.structure(s, t).after(base_change(at(s), source_.rings().map(s, t)));
    if (!chain_maps_equal(lhs, rhs)) {
      throw Error(ErrorCode::InvalidMap, "naturality fails on " + arrow_name(s, t));
    }
  }
}

DiagramMap DiagramMap::identity(const ModuleDiagram& x) {
  std::map<std::string, ChainMap> comps;
  for (const auto& s : x.shape().objects()) comps[s] = ChainMap::identity(x.value(s));
  return DiagramMap(x, x, std::move(comps));
}

DiagramMap DiagramMap::zero(const ModuleDiagram& source, const ModuleDiagram& target) {
  std::map<std::string, ChainMap> comps;
  for (const auto& s : source.shape().objects()) comps[s] = ChainMap::zero(source.value(s), target.value(s));
  return DiagramMap(source, target, std::move(comps));
}

DiagramMap DiagramMap::after(const DiagramMap& first) const {
  std::map<std::string, ChainMap> comps;
  for (const auto& s : source_.shape().objects()) comps[s] = at(s).after(first.at(s));
  return DiagramMap(first.source_, target_, std::move(comps));
}

bool diagram_maps_equal(const DiagramMap& f, const DiagramMap& g) {
  for (const auto& s : f.source().shape().objects())
    if (!chain_maps_equal(f.at(s), g.at(s))) return false;
  return true;
}

bool is_objectwise_quasi_iso(const DiagramMap& f) {
  for (const auto& s : f.source().shape().objects())
    if (!is_quasi_iso(f.at(s))) return false;
  return true;
}

ModuleDiagram direct_sum(const std::vector<ModuleDiagram>& parts, const RingDiagram& rings) {
  std::map<std::string, ChainComplex> values;
  std::map<ArrowKey, ChainMap> structure;
  for (const auto& s : rings.shape().objects()) {
    std::vector<ChainComplex> vs;
    for (const auto& p : parts) vs.push_back(p.value(s));
    values[s] = direct_sum(vs, rings.ring(s));
  }
  for (const auto& [s, t] : rings.shape().arrows()) {
    std::vector<ChainComplex> srcs;
    std::vector<ChainComplex> tgts;
    std::vector<std::vector<std::optional<ChainMap>>> blocks(parts.size(),
                                                             std::vector<std::optional<ChainMap>>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) {
      ChainMap m = parts[i].structure(s, t);
      srcs.push_back(m.source());
      tgts.push_back(m.target());
      blocks[i][i] = m;
    }
    ChainComplex pushed = base_change(values[s], rings.map(s, t));
    if (parts.empty()) {
      structure[{s, t}] = ChainMap::zero(pushed, values[t]);
    } else {
      structure[{s, t}] = rewrap(pushed, values[t], block_map(srcs, tgts, blocks));
    }
  }
  return ModuleDiagram(rings, std::move(values), std::move(structure));
}

DiagramMap block_map(const std::vector<ModuleDiagram>& sources, const std::vector<ModuleDiagram>& targets,
                     const std::vector<std::vector<std::optional<DiagramMap>>>& blocks) {
  const RingDiagram& rings = sources.empty() ? targets.front().rings() : sources.front().rings();
  ModuleDiagram src = direct_sum(sources, rings);
  ModuleDiagram tgt = direct_sum(targets, rings);
  std::map<std::string, ChainMap> comps;
  for (const auto& s : rings.shape().objects()) {
    std::vector<ChainComplex> ss;
    std::vector<ChainComplex> ts;
    for (const auto& x : sources) ss.push_back(x.value(s));
    for (const auto& y : targets) ts.push_back(y.value(s));
    std::vector<std::vector<std::optional<ChainMap>>> bs(targets.size(),
                                                         std::vector<std::optional<ChainMap>>(sources.size()));
    for (std::size_t i = 0; i < targets.size(); ++i)
      for (std::size_t j = 0; j < sources.size(); ++j)
        if (blocks[i][j]) bs[i][j] = blocks[i][j]->at(s);
    if (ss.empty() || ts.empty()) {
      comps[s] = ChainMap::zero(src.value(s), tgt.value(s));
    } else {
      comps[s] = rewrap(src.value(s), tgt.value(s), block_map(ss, ts, bs));
    }
  }
  return DiagramMap(src, tgt, std::move(comps));
}

DiagramCokernel cokernel(const DiagramMap& f) {
  const ModuleDiagram& y = f.target();
  const RingDiagram& rings = y.rings();
  std::map<std::string, ChainComplex> values;
  std::map<std::string, ChainMap> proj;
  for (const auto& s : rings.shape().objects()) {
    CokernelComplex c = cokernel(f.at(s));
    values[s] = c.complex;
    proj[s] = c.projection;
  }
  std::map<ArrowKey, ChainMap> structure;
  for (const auto& [s, t] : rings.shape().arrows()) {
    ChainComplex pushed = base_change(values[s], rings.map(s, t));
    structure[{s, t}] = rewrap(pushed, values[t], y.structure(s, t));
  }
  ModuleDiagram q(rings, std::move(values), std::move(structure));
  return {q, DiagramMap(y, q, std::move(proj))};
}

SimplifiedDiagram simplify(const ModuleDiagram& x) {
  std::map<std::string, SimplifiedComplex> parts;
  std::map<std::string, ChainComplex> values;
  for (const auto& s : x.shape().objects()) {
    parts[s] = simplify(x.value(s));
    values[s] = parts[s].complex;
  }
  std::map<ArrowKey, ChainMap> structure;
  for (const auto& [s, t] : x.shape().arrows()) {
    RingMap f = x.rings().map(s, t);
    ChainMap m = parts[t].to_new.after(x.structure(s, t)).after(base_change(parts[s].from_new, f));
    structure[{s, t}] = rewrap(base_change(values[s], f), values[t], m);
  }
  SimplifiedDiagram out;
  out.diagram = ModuleDiagram(x.rings(), values, std::move(structure));
  std::map<std::string, ChainMap> to;
  std::map<std::string, ChainMap> from;
  for (const auto& s : x.shape().objects()) {
    to[s] = parts[s].to_new;
    from[s] = parts[s].from_new;
  }
  out.to_new = DiagramMap(x, out.diagram, std::move(to));
  out.from_new = DiagramMap(out.diagram, x, std::move(from));
  return out;
}

DiagramPushout pushout(const DiagramMap& g, const DiagramMap& h) {
  const ModuleDiagram& x = g.target();
  const ModuleDiagram& y = h.target();
  std::map<std::string, ChainMap> neg;
  for (const auto& s : h.source().shape().objects()) neg[s] = negated(h.at(s));
  DiagramMap minus_h(h.source(), y, std::move(neg));
  DiagramMap diff = block_map({g.source()}, {x, y}, {{g}, {minus_h}});
  DiagramCokernel c = cokernel(diff);
  DiagramMap inl = block_map({x}, {x, y}, {{DiagramMap::identity(x)}, {std::nullopt}});
  DiagramMap inr = block_map({y}, {x, y}, {{std::nullopt}, {DiagramMap::identity(y)}});
  return {c.diagram, c.projection.after(inl), c.projection.after(inr)};
}

ArrowColimit arrow_colimit(const RingDiagram& rings, const ModuleDiagram& x, const std::vector<std::string>& sources,
                           const std::string& t) {
  ArrowColimit out;
  out.sources = sources;
  const Ring& rt = rings.ring(t);
  for (const auto& s : sources) out.summands.push_back(base_change(x.value(s), rings.map(s, t)));
  out.sum = direct_sum(out.summands, rt);
  std::vector<ChainComplex> rel_sources;
  std::vector<std::vector<std::optional<ChainMap>>> blocks(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i)
    for (std::size_t j = 0; j < sources.size(); ++j) {
      if (i == j || !x.shape().hom(sources[i], sources[j])) continue;
      ChainMap m = base_change(x.structure(sources[i], sources[j]), rings.map(sources[j], t));
      rel_sources.push_back(out.summands[i]);
      for (std::size_t k = 0; k < sources.size(); ++k) {
        if (k == j) {
          blocks[k].push_back(m);
        } else if (k == i) {
          blocks[k].push_back(negated(ChainMap::identity(out.summands[i])));
        } else {
          blocks[k].push_back(std::nullopt);
        }
      }
    }
  if (rel_sources.empty()) {
    out.object = out.sum;
    out.projection = ChainMap::identity(out.sum);
    return out;
  }
  CokernelComplex c = cokernel(rewrap(direct_sum(rel_sources, rt), out.sum,
                                      block_map(rel_sources, out.summands, blocks)));
  out.object = c.complex;
  out.projection = c.projection;
  return out;
}

ArrowLimit arrow_limit(const RingDiagram& rings, const ModuleDiagram& x, const std::vector<std::string>& targets,
                       const std::string& s) {
  ArrowLimit out;
  out.targets = targets;
  const Ring& rs = rings.ring(s);
  for (const auto& t : targets) {
    RingMap a = rings.map(s, t);
    if (!a.is_module_finite()) {
      throw Error(ErrorCode::NotModuleFinite,
                  "arrow " + arrow_name(s, t) + ": " + a.target().name() + " is not finite over " + rs.name());
    }
    out.factors.push_back(restrict_scalars(x.value(t), a));
  }
  out.product = direct_sum(out.factors, rs);
  std::vector<ChainComplex> rel_targets;
  std::vector<std::vector<std::optional<ChainMap>>> blocks;
  for (std::size_t i = 0; i < targets.size(); ++i)
    for (std::size_t j = 0; j < targets.size(); ++j) {
      if (i == j || !x.shape().hom(targets[i], targets[j])) continue;
      ChainMap st = x.structure(targets[i], targets[j]);
      RingMap a = rings.map(s, targets[j]);
      std::map<int, Matrix> comps;
      for (int n = st.lo(); n <= st.hi(); ++n) comps[n] = lift_entries(a, st.at(n));
      ChainMap m(out.factors[i], out.factors[j], std::move(comps));
      rel_targets.push_back(out.factors[j]);
      std::vector<std::optional<ChainMap>> row(targets.size());
      row[i] = m;
      row[j] = negated(ChainMap::identity(out.factors[j]));
      blocks.push_back(std::move(row));
    }
  if (rel_targets.empty()) {
    out.object = out.product;
    out.inclusion = ChainMap::identity(out.product);
    return out;
  }
  KernelComplex k = kernel(rewrap(out.product, direct_sum(rel_targets, rs),
                                  block_map(out.factors, rel_targets, blocks)));
  out.object = k.complex;
  out.inclusion = k.inclusion;
  return out;
}

Latching latching(const ModuleDiagram& x, const std::string& t) {
  Latching out;
  const auto sources = x.shape().arrows_into(t);
  out.colimit = arrow_colimit(x.rings(), x, sources, t);
  std::vector<std::vector<std::optional<ChainMap>>> blocks(1);
  for (const auto& s : sources) blocks[0].push_back(x.structure(s, t));
  if (sources.empty()) {
    out.to_value = ChainMap::zero(out.colimit.object, x.value(t));
  } else {
    out.to_value = rewrap(out.colimit.object, x.value(t), block_map(out.colimit.summands, {x.value(t)}, blocks));
  }
  return out;
}

ChainMap latching_map(const DiagramMap& f, const std::string& t, const Latching& lx, const Latching& ly) {
  const auto& sources = lx.colimit.sources;
  if (sources.empty()) return ChainMap::zero(lx.object(), ly.object());
  std::vector<std::vector<std::optional<ChainMap>>> blocks(sources.size(),
                                                           std::vector<std::optional<ChainMap>>(sources.size()));
  for (std::size_t i = 0; i < sources.size(); ++i) {
    blocks[i][i] = base_change(f.at(sources[i]), f.source().rings().map(sources[i], t));
  }
  return rewrap(lx.object(), ly.object(), block_map(lx.colimit.summands, ly.colimit.summands, blocks));
}

Matching matching(const ModuleDiagram& x, const std::string& s) {
  Matching out;
  const auto targets = x.shape().arrows_out_of(s);
  out.limit = arrow_limit(x.rings(), x, targets, s);
  if (targets.empty()) {
    out.from_value = ChainMap::zero(x.value(s), out.limit.object);
    return out;
  }
  std::vector<std::vector<std::optional<ChainMap>>> blocks;
  for (const auto& t : targets) blocks.push_back({x.adjoint_structure(s, t)});
  ChainMap into_product = rewrap(x.value(s), out.limit.product, block_map({x.value(s)}, out.limit.factors, blocks));
  auto y = factor_through(out.limit.inclusion, into_product);
  if (!y) throw Error(ErrorCode::Internal, "matching: the canonical map misses the limit");
  out.from_value = *y;
  return out;
}

ChainMap matching_map(const DiagramMap& f, const std::string& s, const Matching& mx, const Matching& my) {
  const auto& targets = mx.limit.targets;
  if (targets.empty()) return ChainMap::zero(mx.object(), my.object());
  std::vector<std::vector<std::optional<ChainMap>>> blocks(targets.size(),
                                                           std::vector<std::optional<ChainMap>>(targets.size()));
  for (std::size_t i = 0; i < targets.size(); ++i) {
    blocks[i][i] = restrict_scalars(f.at(targets[i]), f.source().rings().map(s, targets[i]));
  }
  ChainMap prod = rewrap(mx.limit.product, my.limit.product, block_map(mx.limit.factors, my.limit.factors, blocks));
  auto y = factor_through(my.limit.inclusion, prod.after(mx.limit.inclusion));
  if (!y) throw Error(ErrorCode::Internal, "matching map leaves the limit");
  return *y;
}

ModuleDiagram free_diagram(const RingDiagram& rings, const std::string& s, const ChainComplex& a) {
  const FiniteCategory& cat = rings.shape();
  std::map<std::string, ChainComplex> values;
  for (const auto& t : cat.objects()) {
    values[t] = cat.hom(s, t) ? base_change(a, rings.map(s, t)) : ChainComplex::zero(rings.ring(t));
  }
  std::map<ArrowKey, ChainMap> structure;
  for (const auto& [t, u] : cat.arrows()) {
    ChainComplex pushed = base_change(values[t], rings.map(t, u));
    if (cat.hom(s, t)) {
      structure[{t, u}] = rewrap(pushed, values[u], ChainMap::identity(values[u]));
    } else {
      structure[{t, u}] = ChainMap::zero(pushed, values[u]);
    }
  }
  return ModuleDiagram(rings, std::move(values), std::move(structure));
}

ModuleDiagram boundary_free_diagram(const RingDiagram& rings, const std::string& s, const ChainComplex& a) {
  const FiniteCategory& cat = rings.shape();
  std::map<std::string, ChainComplex> values;
  for (const auto& t : cat.objects()) {
    values[t] = (t != s && cat.hom(s, t)) ? base_change(a, rings.map(s, t)) : ChainComplex::zero(rings.ring(t));
  }
  std::map<ArrowKey, ChainMap> structure;
  for (const auto& [t, u] : cat.arrows()) {
    ChainComplex pushed = base_change(values[t], rings.map(t, u));
    if (t != s && cat.hom(s, t)) {
      structure[{t, u}] = rewrap(pushed, values[u], ChainMap::identity(values[u]));
    } else {
      structure[{t, u}] = ChainMap::zero(pushed, values[u]);
    }
  }
  return ModuleDiagram(rings, std::move(values), std::move(structure));
}

DiagramMap free_map(const RingDiagram& rings, const std::string& s, const ChainMap& f) {
  ModuleDiagram fa = free_diagram(rings, s, f.source());
  ModuleDiagram fb = free_diagram(rings, s, f.target());
  std::map<std::string, ChainMap> comps;
  for (const auto& t : rings.shape().objects()) {
    if (rings.shape().hom(s, t)) {
      comps[t] = base_change(f, rings.map(s, t));
    } else {
      comps[t] = ChainMap::zero(fa.value(t), fb.value(t));
    }
  }
  return DiagramMap(fa, fb, std::move(comps));
}

namespace {

// dF^s_A -> F^s_A, identity away from s.
DiagramMap boundary_inclusion(const RingDiagram& rings, const std::string& s, const ChainComplex& a) {
  ModuleDiagram d = boundary_free_diagram(rings, s, a);
  ModuleDiagram f = free_diagram(rings, s, a);
  std::map<std::string, ChainMap> comps;
  for (const auto& t : rings.shape().objects()) {
    if (t != s && rings.shape().hom(s, t)) {
      comps[t] = ChainMap::identity(f.value(t));
    } else {
      comps[t] = ChainMap::zero(d.value(t), f.value(t));
    }
  }
  return DiagramMap(d, f, std::move(comps));
}

DiagramMap boundary_map(const RingDiagram& rings, const std::string& s, const ChainMap& f) {
  ModuleDiagram da = boundary_free_diagram(rings, s, f.source());
  ModuleDiagram db = boundary_free_diagram(rings, s, f.target());
  std::map<std::string, ChainMap> comps;
  for (const auto& t : rings.shape().objects()) {
    if (t != s && rings.shape().hom(s, t)) {
      comps[t] = base_change(f, rings.map(s, t));
    } else {
      comps[t] = ChainMap::zero(da.value(t), db.value(t));
    }
  }
  return DiagramMap(da, db, std::move(comps));
}

}  // namespace

DiagramMap rf_map(const RingDiagram& rings, const std::string& s, const ChainMap& f, Direction direction) {
  rings.shape().index(s);
  if (direction == Direction::Direct) return free_map(rings, s, f);
  DiagramMap inc_a = boundary_inclusion(rings, s, f.source());
  DiagramMap inc_b = boundary_inclusion(rings, s, f.target());
  DiagramMap df = boundary_map(rings, s, f);
  DiagramMap ff = free_map(rings, s, f);
  DiagramPushout p = pushout(inc_a, df);
  // P = coker(dF_A -> F_A + dF_B); the corner map is [F_f | inclusion].
  std::map<std::string, ChainMap> comps;
  for (const auto& t : rings.shape().objects()) {
    const ChainComplex& pt = p.diagram.value(t);
    const ChainComplex& bt = ff.target().value(t);
    std::map<int, Matrix> m;
    for (int n = std::min(pt.lo(), bt.lo()); n <= std::max(pt.hi(), bt.hi()); ++n) {
      m[n] = Matrix::hcat(ff.at(t).at(n), inc_b.at(t).at(n));
    }
    comps[t] = ChainMap(pt, bt, std::move(m));
  }
  return DiagramMap(p.diagram, ff.target(), std::move(comps));
}

std::vector<Probe> generating_probes(const RingDiagram& rings, Direction direction, int lo, int hi) {
  std::vector<Probe> out;
  for (const auto& s : rings.shape().objects()) {
    const Ring& r = rings.ring(s);
    for (int n = lo; n <= hi; ++n) {
      ChainComplex disk = ChainComplex::disk(r, n);
      ChainMap i(ChainComplex::sphere(r, n - 1), disk, {{n - 1, Matrix::identity(1)}});
      out.push_back({"I", s, n, rf_map(rings, s, i, direction)});
    }
    for (int n = lo; n <= hi; ++n) {
      ChainComplex disk = ChainComplex::disk(r, n);
      ChainMap j = ChainMap::zero(ChainComplex::zero(r), disk);
      out.push_back({"J", s, n, rf_map(rings, s, j, direction)});
    }
  }
  return out;
}

ModuleDiagram eval_left_adjoint(const RingDiagram& rings, const std::string& s, const ChainComplex& a) {
  return free_diagram(rings, s, a);
}

DiagramMap eval_counit(const ModuleDiagram& y, const std::string& s) {
  ModuleDiagram l = eval_left_adjoint(y.rings(), s, y.value(s));
  std::map<std::string, ChainMap> comps;
  for (const auto& t : y.shape().objects()) {
    if (y.shape().hom(s, t)) {
      comps[t] = y.structure(s, t);
    } else {
      comps[t] = ChainMap::zero(l.value(t), y.value(t));
    }
  }
  return DiagramMap(l, y, std::move(comps));
}

DecompositionReport colim_decomposition(const RingDiagram& rings) {
  const FiniteCategory& cat = rings.shape();
  ModuleDiagram r = ModuleDiagram::tautological(rings);
  std::vector<ModuleDiagram> frees;
  std::map<std::string, std::size_t> pos;
  for (const auto& s : cat.objects()) {
    pos[s] = frees.size();
    frees.push_back(eval_left_adjoint(rings, s, r.value(s)));
  }
  // For s -> t, the map L^t R(t) -> L^s R(s) adjoint to the identity of R(t).
  std::vector<ModuleDiagram> rel_sources;
  std::vector<std::vector<std::optional<DiagramMap>>> blocks(frees.size());
  for (const auto& [s, t] : cat.arrows()) {
    const ModuleDiagram& lt = frees[pos[t]];
    const ModuleDiagram& ls = frees[pos[s]];
    std::map<std::string, ChainMap> comps;
    for (const auto& u : cat.objects()) {
      if (cat.hom(t, u)) {
        comps[u] = ChainMap::identity(ls.value(u));
      } else {
        comps[u] = ChainMap::zero(lt.value(u), ls.value(u));
      }
    }
    DiagramMap phi(lt, ls, std::move(comps));
    rel_sources.push_back(lt);
    for (std::size_t k = 0; k < frees.size(); ++k) {
      if (k == pos[s]) {
        blocks[k].push_back(phi);
      } else if (k == pos[t]) {
        std::map<std::string, ChainMap> neg;
        for (const auto& u : cat.objects()) neg[u] = negated(ChainMap::identity(lt.value(u)));
        blocks[k].push_back(DiagramMap(lt, lt, std::move(neg)));
      } else {
        blocks[k].push_back(std::nullopt);
      }
    }
  }
  DecompositionReport out;
  ModuleDiagram sum = direct_sum(frees, rings);
  DiagramMap projection = DiagramMap::identity(sum);
  if (!rel_sources.empty()) {
    DiagramCokernel c = cokernel(block_map(rel_sources, frees, blocks));
    out.colimit = c.diagram;
  } else {
    out.colimit = sum;
  }
  std::vector<std::vector<std::optional<DiagramMap>>> counits(1);
  for (const auto& s : cat.objects()) counits[0].push_back(eval_counit(r, s));
  DiagramMap from_sum = frees.empty() ? DiagramMap::zero(sum, r) : block_map(frees, {r}, counits);
  std::map<std::string, ChainMap> comps;
  for (const auto& s : cat.objects()) comps[s] = rewrap(out.colimit.value(s), r.value(s), from_sum.at(s));
  DiagramMap comparison(out.colimit, r, std::move(comps));
  for (const auto& s : cat.objects()) {
    bool iso = is_chain_isomorphism(comparison.at(s));
    out.objects.emplace_back(s, iso);
    out.verdict = out.verdict && iso;
  }
  return out;
}

}  // namespace ringdiag
