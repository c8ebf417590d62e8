#include "ringdiag/diagram.hpp"
#include "ringdiag/error.hpp"

namespace ringdiag {

namespace {

ChainMap with_source(const ChainComplex& source, const ChainMap& like) {
  std::map<int, Matrix> comps;
  for (int n = like.lo(); n <= like.hi(); ++n) comps[n] = like.at(n);
  return ChainMap(source, like.target(), std::move(comps));
}

ChainMap with_target(const ChainComplex& target, const ChainMap& like) {
  std::map<int, Matrix> comps;
  for (int n = like.lo(); n <= like.hi(); ++n) comps[n] = like.at(n);
  return ChainMap(like.source(), target, std::move(comps));
}

// Injective with free cokernel in every degree; the source may carry relations.
bool injective_with_free_cokernel(const ChainMap& f) {
  for (int n = f.lo(); n <= f.hi(); ++n) {
    FPModule s = f.source().module(n);
    FPModule t = f.target().module(n);
    if (!is_injective(s, t, f.at(n))) return false;
    if (!cokernel(s, t, f.at(n)).is_free()) return false;
  }
  return true;
}

void finish(CornerReport& report, const DiagramMap& f, bool trivial, bool objectwise_diagnostic) {
  for (auto& c : report.checks) {
    if (trivial && objectwise_diagnostic) c.objectwise_weq = is_quasi_iso(f.at(c.object));
    report.verdict = report.verdict && c.criterion;
  }
  if (trivial && objectwise_diagnostic && report.verdict) {
    for (const auto& c : report.checks)
      if (!c.objectwise_weq) report.diagnostic_conflict = true;
  }
}

}  // namespace

CornerReport cofibration_corners(const DiagramMap& f, bool trivial, bool objectwise_diagnostic) {
  const ModuleDiagram& x = f.source();
  const ModuleDiagram& y = f.target();
  CornerReport report;
  for (const auto& s : x.shape().objects()) {
    const ChainComplex& ys = y.value(s);
    if (!ys.is_free()) {
      throw Error(ErrorCode::UnsupportedShape, "cofibration corner at '" + s + "': Y(" + s + ") is not free");
    }
    Latching lx = latching(x, s);
    Latching ly = latching(y, s);
    ChainMap lf = latching_map(f, s, lx, ly);
    // P = coker(L_s X -> X(s) + L_s Y), z -> (l_X z, -L_s f z)
    ChainMap diff =
        with_source(lx.object(), block_map({lx.object()}, {x.value(s), ly.object()}, {{lx.to_value}, {negated(lf)}}));
    CokernelComplex p = cokernel(diff);
    ChainMap out = block_map({x.value(s), ly.object()}, {ys}, {{f.at(s), ly.to_value}});
    ChainMap corner = with_source(p.complex, with_target(ys, out));
    CornerCheck check;
    check.object = s;
    check.criterion = injective_with_free_cokernel(corner) && (!trivial || is_quasi_iso(corner));
    check.corner = corner;
    report.checks.push_back(std::move(check));
  }
  finish(report, f, trivial, objectwise_diagnostic);
  return report;
}

bool is_diagram_cofibration(const DiagramMap& f, bool trivial) {
  return cofibration_corners(f, trivial, false).verdict;
}

CornerReport fibration_corners(const DiagramMap& f, bool trivial, bool objectwise_diagnostic) {
  const ModuleDiagram& x = f.source();
  const ModuleDiagram& y = f.target();
  CornerReport report;
  for (const auto& s : x.shape().objects()) {
    Matching mx = matching(x, s);
    Matching my = matching(y, s);
    ChainMap mf = matching_map(f, s, mx, my);
    const ChainComplex& ys = y.value(s);
    // Q = ker(Y(s) + M_s X -> M_s Y), (y, m) -> mu_Y y - M_s f m
    ChainMap diff = with_target(my.object(), block_map({ys, mx.object()}, {my.object()}, {{my.from_value, negated(mf)}}));
    KernelComplex q = kernel(diff);
    ChainMap into = block_map({x.value(s)}, {ys, mx.object()}, {{f.at(s)}, {mx.from_value}});
    ChainMap into_sum = with_source(x.value(s), into);
    auto corner = factor_through(q.inclusion, with_target(q.inclusion.target(), into_sum));
    if (!corner) throw Error(ErrorCode::Internal, "fibration corner at '" + s + "' misses the pullback");
    CornerCheck check;
    check.object = s;
    check.criterion = is_fibration(*corner) && (!trivial || is_quasi_iso(*corner));
    check.corner = *corner;
    report.checks.push_back(std::move(check));
  }
  finish(report, f, trivial, objectwise_diagnostic);
  return report;
}

bool is_diagram_fibration(const DiagramMap& f, bool trivial) { return fibration_corners(f, trivial, false).verdict; }

bool is_objectwise_cofibration(const DiagramMap& f) {
  for (const auto& s : f.source().shape().objects())
    if (!is_cofibration(f.at(s))) return false;
  return true;
}

}  // namespace ringdiag
