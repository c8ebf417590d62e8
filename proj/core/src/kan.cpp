#include "ringdiag/kan.hpp"

#include <algorithm>
#include <functional>

#include "ringdiag/error.hpp"

namespace ringdiag {

namespace {

struct Span {
  int lo = 0;
  int hi = -1;
};

Span span_of(const std::vector<const ChainComplex*>& cs) {
  Span w{0, -1};
  bool any = false;
  for (const auto* c : cs) {
    if (c->empty_window()) continue;
    if (!any) {
      w = {c->lo(), c->hi()};
      any = true;
    } else {
      w.lo = std::min(w.lo, c->lo());
      w.hi = std::max(w.hi, c->hi());
    }
  }
  return w;
}

ChainMap degreewise(const ChainComplex& source, const ChainComplex& target, const std::function<Matrix(int)>& fn) {
  Span w = span_of({&source, &target});
  std::map<int, Matrix> comps;
  for (int n = w.lo; n <= w.hi; ++n) comps[n] = fn(n);
  return ChainMap(source, target, std::move(comps));
}

ChainMap identity_between(const ChainComplex& source, const ChainComplex& target) {
  return degreewise(source, target, [&](int n) { return Matrix::identity(source.rank(n)); });
}

std::size_t offset(const std::vector<ChainComplex>& parts, std::size_t upto, int n) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < upto; ++i) r += parts[i].rank(n);
  return r;
}

std::size_t position(const std::vector<std::string>& ids, const std::string& s) {
  return static_cast<std::size_t>(std::find(ids.begin(), ids.end(), s) - ids.begin());
}

std::vector<std::string> slice_sources(const Inclusion& incl, const std::string& t) {
  std::vector<std::string> out;
  for (const auto& s : incl.sub().objects())
    if (incl.ambient().hom(s, t)) out.push_back(s);
  return out;
}

std::vector<std::string> coslice_targets(const Inclusion& incl, const std::string& t) {
  std::vector<std::string> out;
  for (const auto& s : incl.sub().objects())
    if (incl.ambient().hom(t, s)) out.push_back(s);
  return out;
}

void require_over_sub(const Inclusion& incl, const RingDiagram& rings, const ModuleDiagram& x) {
  if (!(rings.shape() == incl.ambient())) throw Error(ErrorCode::RingMismatch, "ring diagram is not on the ambient shape");
  if (!(x.rings() == rings.restricted(incl))) {
    throw Error(ErrorCode::RingMismatch, "diagram is not over the restricted ring diagram");
  }
}

bool equals_identity(const ChainMap& f) { return chain_maps_equal(f, ChainMap::identity(f.target())); }

}  // namespace

ModuleDiagram restrict_diagram(const Inclusion& incl, const ModuleDiagram& x) {
  if (!(x.shape() == incl.ambient())) throw Error(ErrorCode::UnknownObject, "diagram is not on the ambient shape");
  RingDiagram rings = x.rings().restricted(incl);
  std::map<std::string, ChainComplex> values;
  std::map<ArrowKey, ChainMap> structure;
  for (const auto& s : incl.sub().objects()) values[s] = x.value(s);
  for (const auto& [s, t] : incl.sub().arrows()) structure[{s, t}] = x.structure(s, t);
  return ModuleDiagram(std::move(rings), std::move(values), std::move(structure));
}

DiagramMap restrict_map(const Inclusion& incl, const DiagramMap& f) {
  std::map<std::string, ChainMap> comps;
  for (const auto& s : incl.sub().objects()) comps[s] = f.at(s);
  return DiagramMap(restrict_diagram(incl, f.source()), restrict_diagram(incl, f.target()), std::move(comps));
}

KanExtension left_kan_extension(const Inclusion& incl, const RingDiagram& rings, const ModuleDiagram& x) {
  require_over_sub(incl, rings, x);
  KanExtension out;
  const FiniteCategory& sub = incl.sub();
  std::map<std::string, ChainComplex> values;
  for (const auto& t : incl.ambient().objects()) {
    auto sources = slice_sources(incl, t);
    ArrowColimit colim = arrow_colimit(rings, x, sources, t);
    KanValue v;
    v.general = colim.object;
    std::optional<std::string> top;
    for (const auto& cand : sources) {
      if (std::all_of(sources.begin(), sources.end(), [&](const std::string& s) { return sub.hom(s, cand); })) {
        top = cand;
      }
    }
    if (top) {
      v.collapse = top;
      v.value = base_change(x.value(*top), rings.map(*top, t));
      std::size_t k = position(sources, *top);
      v.to_general = degreewise(v.value, v.general, [&](int n) {
        Matrix m(v.general.rank(n), v.value.rank(n));
        m.set_block(offset(colim.summands, k, n), 0, Matrix::identity(v.value.rank(n)));
        return m;
      });
      std::vector<ChainMap> legs;
      for (const auto& s : sources) legs.push_back(base_change(x.structure(s, *top), rings.map(*top, t)));
      v.from_general = degreewise(v.general, v.value, [&](int n) {
        std::vector<Matrix> parts;
        for (const auto& l : legs) parts.push_back(l.at(n));
        return Matrix::hcat(parts, v.value.rank(n));
      });
      v.collapse_agrees = equals_identity(v.from_general.after(v.to_general)) &&
                          equals_identity(v.to_general.after(v.from_general));
    } else {
      v.value = v.general;
      v.to_general = ChainMap::identity(v.general);
      v.from_general = ChainMap::identity(v.general);
    }
    values[t] = v.value;
    out.values[t] = v;
    out.colimits[t] = colim;
  }
  std::map<ArrowKey, ChainMap> structure;
  for (const auto& [t, u] : incl.ambient().arrows()) {
    const ArrowColimit& ct = out.colimits[t];
    const ArrowColimit& cu = out.colimits[u];
    const KanValue& vt = out.values[t];
    const KanValue& vu = out.values[u];
    ChainComplex pushed = base_change(vt.value, rings.map(t, u));
    structure[{t, u}] = degreewise(pushed, vu.value, [&](int n) {
      Matrix inc(vu.general.rank(n), vt.general.rank(n));
      for (std::size_t i = 0; i < ct.sources.size(); ++i) {
        std::size_t j = position(cu.sources, ct.sources[i]);
        inc.set_block(offset(cu.summands, j, n), offset(ct.summands, i, n),
                      Matrix::identity(ct.summands[i].rank(n)));
      }
      return vu.from_general.at(n) * inc * vt.to_general.at(n);
    });
  }
  out.diagram = ModuleDiagram(rings, std::move(values), std::move(structure));
  return out;
}

ModuleDiagram left_kan(const Inclusion& incl, const RingDiagram& rings, const ModuleDiagram& x) {
  return left_kan_extension(incl, rings, x).diagram;
}

DiagramMap left_kan_map(const Inclusion& incl, const DiagramMap& f, const KanExtension& lx, const KanExtension& ly) {
  const RingDiagram& rings = lx.diagram.rings();
  std::map<std::string, ChainMap> comps;
  for (const auto& t : incl.ambient().objects()) {
    const ArrowColimit& c = lx.colimits.at(t);
    std::vector<ChainMap> parts;
    for (const auto& s : c.sources) parts.push_back(base_change(f.at(s), rings.map(s, t)));
    const KanValue& vx = lx.values.at(t);
    const KanValue& vy = ly.values.at(t);
    comps[t] = degreewise(vx.value, vy.value, [&](int n) {
      std::vector<Matrix> blocks;
      for (const auto& p : parts) blocks.push_back(p.at(n));
      return vy.from_general.at(n) * Matrix::block_diag(blocks) * vx.to_general.at(n);
    });
  }
  return DiagramMap(lx.diagram, ly.diagram, std::move(comps));
}

DiagramMap left_kan_map(const Inclusion& incl, const RingDiagram& rings, const DiagramMap& f) {
  return left_kan_map(incl, f, left_kan_extension(incl, rings, f.source()), left_kan_extension(incl, rings, f.target()));
}

DiagramMap left_kan_unit(const Inclusion& incl, const KanExtension& lx, const ModuleDiagram& x) {
  ModuleDiagram back = restrict_diagram(incl, lx.diagram);
  std::map<std::string, ChainMap> comps;
  for (const auto& s : incl.sub().objects()) comps[s] = identity_between(x.value(s), back.value(s));
  return DiagramMap(x, back, std::move(comps));
}

DiagramMap left_kan_counit(const Inclusion& incl, const KanExtension& ly, const ModuleDiagram& y) {
  std::map<std::string, ChainMap> comps;
  for (const auto& t : incl.ambient().objects()) {
    const ArrowColimit& c = ly.colimits.at(t);
    const KanValue& v = ly.values.at(t);
    std::vector<ChainMap> legs;
    for (const auto& s : c.sources) legs.push_back(y.structure(s, t));
    comps[t] = degreewise(v.value, y.value(t), [&](int n) {
      std::vector<Matrix> parts;
      for (const auto& l : legs) parts.push_back(l.at(n));
      return Matrix::hcat(parts, y.value(t).rank(n)) * v.to_general.at(n);
    });
  }
  return DiagramMap(ly.diagram, y, std::move(comps));
}

KanExtension right_kan_extension(const Inclusion& incl, const RingDiagram& rings, const ModuleDiagram& x) {
  require_over_sub(incl, rings, x);
  KanExtension out;
  const FiniteCategory& sub = incl.sub();
  std::map<std::string, ChainComplex> values;
  for (const auto& t : incl.ambient().objects()) {
    auto targets = coslice_targets(incl, t);
    ArrowLimit lim = arrow_limit(rings, x, targets, t);
    KanValue v;
    v.general = lim.object;
    std::optional<std::string> bottom;
    for (const auto& cand : targets) {
      if (std::all_of(targets.begin(), targets.end(), [&](const std::string& s) { return sub.hom(cand, s); })) {
        bottom = cand;
      }
    }
    if (bottom) {
      v.collapse = bottom;
      v.value = restrict_scalars(x.value(*bottom), rings.map(t, *bottom));
      std::size_t k = position(targets, *bottom);
      v.from_general = degreewise(v.general, v.value, [&](int n) {
        std::size_t off = offset(lim.factors, k, n);
        return lim.inclusion.at(n).row_range(off, off + v.value.rank(n));
      });
      std::vector<ChainMap> legs;
      for (const auto& s : targets) legs.push_back(x.structure(*bottom, s));
      ChainMap stacked = degreewise(v.value, lim.product, [&](int n) {
        Matrix m(lim.product.rank(n), v.value.rank(n));
        for (std::size_t i = 0; i < targets.size(); ++i) {
          m.set_block(offset(lim.factors, i, n), 0, lift_entries(rings.map(t, targets[i]), legs[i].at(n)));
        }
        return m;
      });
      auto phi = factor_through(lim.inclusion, stacked);
      if (!phi) throw Error(ErrorCode::Internal, "right Kan: the one-step value misses the limit at '" + t + "'");
      v.to_general = *phi;
      v.collapse_agrees = equals_identity(v.from_general.after(v.to_general)) &&
                          equals_identity(v.to_general.after(v.from_general));
    } else {
      v.value = v.general;
      v.to_general = ChainMap::identity(v.general);
      v.from_general = ChainMap::identity(v.general);
    }
    values[t] = v.value;
    out.values[t] = v;
    out.limits[t] = lim;
  }
  std::map<ArrowKey, ChainMap> structure;
  for (const auto& [t, u] : incl.ambient().arrows()) {
    const ArrowLimit& lt = out.limits[t];
    const ArrowLimit& lu = out.limits[u];
    const KanValue& vt = out.values[t];
    const KanValue& vu = out.values[u];
    RingMap a = rings.map(t, u);
    ChainComplex pushed = base_change(vt.value, a);
    structure[{t, u}] = degreewise(pushed, vu.value, [&](int n) {
      Matrix proj(lu.product.rank(n), lt.product.rank(n));
      for (std::size_t j = 0; j < lu.targets.size(); ++j) {
        std::size_t i = position(lt.targets, lu.targets[j]);
        proj.set_block(offset(lu.factors, j, n), offset(lt.factors, i, n), Matrix::identity(lu.factors[j].rank(n)));
      }
      Matrix v = map_entries(a, proj * lt.inclusion.at(n) * vt.to_general.at(n));
      auto fac = factor_through(lu.product.module(n), lu.inclusion.at(n), v);
      if (!fac) throw Error(ErrorCode::Internal, "right Kan: structure map leaves the limit");
      return vu.from_general.at(n) * *fac;
    });
  }
  out.diagram = ModuleDiagram(rings, std::move(values), std::move(structure));
  return out;
}

ModuleDiagram right_kan(const Inclusion& incl, const RingDiagram& rings, const ModuleDiagram& x) {
  return right_kan_extension(incl, rings, x).diagram;
}

DiagramMap right_kan_map(const Inclusion& incl, const DiagramMap& f, const KanExtension& rx, const KanExtension& ry) {
  const RingDiagram& rings = rx.diagram.rings();
  std::map<std::string, ChainMap> comps;
  for (const auto& t : incl.ambient().objects()) {
    const ArrowLimit& lx = rx.limits.at(t);
    const ArrowLimit& ly = ry.limits.at(t);
    const KanValue& vx = rx.values.at(t);
    const KanValue& vy = ry.values.at(t);
    comps[t] = degreewise(vx.value, vy.value, [&](int n) {
      std::vector<Matrix> blocks;
      for (const auto& s : lx.targets) blocks.push_back(lift_entries(rings.map(t, s), f.at(s).at(n)));
      Matrix v = Matrix::block_diag(blocks) * lx.inclusion.at(n) * vx.to_general.at(n);
      auto fac = factor_through(ly.product.module(n), ly.inclusion.at(n), v);
      if (!fac) throw Error(ErrorCode::Internal, "right Kan map leaves the limit");
      return vy.from_general.at(n) * *fac;
    });
  }
  return DiagramMap(rx.diagram, ry.diagram, std::move(comps));
}

DiagramMap right_kan_map(const Inclusion& incl, const RingDiagram& rings, const DiagramMap& f) {
  return right_kan_map(incl, f, right_kan_extension(incl, rings, f.source()),
                       right_kan_extension(incl, rings, f.target()));
}

DiagramMap right_kan_unit(const Inclusion& incl, const KanExtension& ry, const ModuleDiagram& y) {
  const RingDiagram& rings = y.rings();
  std::map<std::string, ChainMap> comps;
  for (const auto& t : incl.ambient().objects()) {
    const ArrowLimit& l = ry.limits.at(t);
    const KanValue& v = ry.values.at(t);
    comps[t] = degreewise(y.value(t), v.value, [&](int n) {
      Matrix m(l.product.rank(n), y.value(t).rank(n));
      for (std::size_t i = 0; i < l.targets.size(); ++i) {
        m.set_block(offset(l.factors, i, n), 0,
                    lift_entries(rings.map(t, l.targets[i]), y.structure(t, l.targets[i]).at(n)));
      }
      auto fac = factor_through(l.product.module(n), l.inclusion.at(n), m);
      if (!fac) throw Error(ErrorCode::Internal, "right Kan unit leaves the limit");
      return v.from_general.at(n) * *fac;
    });
  }
  return DiagramMap(y, ry.diagram, std::move(comps));
}

DiagramMap right_kan_counit(const Inclusion& incl, const KanExtension& rx, const ModuleDiagram& x) {
  ModuleDiagram back = restrict_diagram(incl, rx.diagram);
  std::map<std::string, ChainMap> comps;
  for (const auto& s : incl.sub().objects()) comps[s] = identity_between(back.value(s), x.value(s));
  return DiagramMap(back, x, std::move(comps));
}

ChainMap extension_unit(const ChainComplex& p, const RingMap& f) {
  return identity_between(p, restrict_scalars(base_change(p, f), f));
}

ChainMap extension_counit(const ChainComplex& q, const RingMap& f) {
  return identity_between(base_change(restrict_scalars(q, f), f), q);
}

TriangleReport extension_triangles(const ChainComplex& p, const ChainComplex& q, const RingMap& f) {
  TriangleReport out;
  ChainComplex fp = base_change(p, f);
  ChainMap left = extension_counit(fp, f).after(base_change(extension_unit(p, f), f));
  out.left = equals_identity(left) && left.source() == fp;
  ChainComplex rq = restrict_scalars(q, f);
  ChainMap right = restrict_scalars(extension_counit(q, f), f).after(extension_unit(rq, f));
  out.right = equals_identity(right) && right.source() == rq;
  return out;
}

TriangleReport left_kan_triangles(const Inclusion& incl, const RingDiagram& rings, const ModuleDiagram& x,
                                  const ModuleDiagram& y) {
  TriangleReport out;
  KanExtension lx = left_kan_extension(incl, rings, x);
  DiagramMap eta = left_kan_unit(incl, lx, x);
  KanExtension lz = left_kan_extension(incl, rings, eta.target());
  DiagramMap lifted = left_kan_map(incl, eta, lx, lz);
  DiagramMap eps = left_kan_counit(incl, lz, lx.diagram);
  out.left = diagram_maps_equal(eps.after(lifted), DiagramMap::identity(lx.diagram));

  ModuleDiagram ry = restrict_diagram(incl, y);
  KanExtension ly = left_kan_extension(incl, rings, ry);
  DiagramMap eta_y = left_kan_unit(incl, ly, ry);
  DiagramMap eps_y = restrict_map(incl, left_kan_counit(incl, ly, y));
  out.right = diagram_maps_equal(eps_y.after(eta_y), DiagramMap::identity(ry));
  return out;
}

TriangleReport right_kan_triangles(const Inclusion& incl, const RingDiagram& rings, const ModuleDiagram& y,
                                   const ModuleDiagram& x) {
  TriangleReport out;
  ModuleDiagram ry = restrict_diagram(incl, y);
  KanExtension ky = right_kan_extension(incl, rings, ry);
  DiagramMap eta = restrict_map(incl, right_kan_unit(incl, ky, y));
  DiagramMap eps = right_kan_counit(incl, ky, ry);
  out.left = diagram_maps_equal(eps.after(eta), DiagramMap::identity(ry));

  KanExtension kx = right_kan_extension(incl, rings, x);
  KanExtension kz = right_kan_extension(incl, rings, restrict_diagram(incl, kx.diagram));
  DiagramMap unit = right_kan_unit(incl, kz, kx.diagram);
  DiagramMap lifted = right_kan_map(incl, right_kan_counit(incl, kx, x), kz, kx);
  out.right = diagram_maps_equal(lifted.after(unit), DiagramMap::identity(kx.diagram));
  return out;
}

}  // namespace ringdiag
