#include "ringdiag/module.hpp"

#include <sstream>

#include "ringdiag/error.hpp"
#include "ringdiag/smith.hpp"

namespace ringdiag {

std::string ModuleInvariants::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "R";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const auto& d : torsion) {
    if (!first) os << " + ";
    os << "R/" << d.get_str();
    first = false;
  }
  return os.str();
}

FPModule::FPModule(Ring ring, std::size_t generators, Matrix relations)
    : ring_(std::move(ring)), generators_(generators), relations_(std::move(relations)) {
  if (relations_.rows() != generators_) {
    if (relations_.rows() == 0 && relations_.cols() == 0) {
      relations_ = Matrix(generators_, 0);
    } else {
      throw Error(ErrorCode::DimensionMismatch, "relation matrix has " + std::to_string(relations_.rows()) +
                                                    " rows for " + std::to_string(generators_) + " generators");
    }
  }
  relations_ = relations_.reduced(ring_);
}

FPModule FPModule::free(const Ring& ring, std::size_t rank) { return FPModule(ring, rank, Matrix(rank, 0)); }

FPModule FPModule::cyclic(const Ring& ring, const Integer& order) {
  Matrix rel(1, 1);
  rel(0, 0) = Rational(order);
  return FPModule(ring, 1, rel);
}

FPModule FPModule::from_invariants(const Ring& ring, const ModuleInvariants& inv) {
  std::size_t g = inv.free_rank + inv.torsion.size();
  Matrix rel(g, inv.torsion.size());
  for (std::size_t i = 0; i < inv.torsion.size(); ++i) rel(inv.free_rank + i, i) = Rational(inv.torsion[i]);
  return FPModule(ring, g, rel);
}

Matrix FPModule::lifted_relations() const {
  if (ring_.modulus() == 0) return relations_;
  return Matrix::hcat(relations_, Matrix::identity(generators_).scaled(Rational(ring_.modulus())));
}

ModuleInvariants FPModule::invariants() const {
  ModuleInvariants out;
  if (generators_ == 0) return out;
  SmithForm f = smith_normal_form(ring_.cover(), lifted_relations());
  const Integer& n = ring_.modulus();
  if (n == 0) out.free_rank = generators_ - f.rank;
  for (const auto& d : f.diagonal) {
    if (d == 1) continue;
    if (n > 0 && d == n) {
      ++out.free_rank;
    } else {
      out.torsion.push_back(d);
    }
  }
  return out;
}

std::string FPModule::to_string() const {
  std::string s = invariants().to_string();
  std::string rn = ring_.name();
  std::string out;
  for (char c : s) {
    if (c == 'R') {
      out += rn;
    } else {
      out += c;
    }
  }
  return out + " over " + rn;
}

bool is_valid_map(const FPModule& source, const FPModule& target, const Matrix& f) {
  if (f.rows() != target.generators() || f.cols() != source.generators()) return false;
  if (source.ring() != target.ring()) return false;
  Matrix image = f * source.relations();
  if (image.cols() == 0) return true;
  return in_span(target.ring().cover(), target.lifted_relations(), image);
}

void require_valid_map(const FPModule& source, const FPModule& target, const Matrix& f, const std::string& what) {
  if (source.ring() != target.ring()) {
    throw Error(ErrorCode::RingMismatch, what + ": " + source.ring().name() + " vs " + target.ring().name());
  }
  if (f.rows() != target.generators() || f.cols() != source.generators()) {
    throw Error(ErrorCode::DimensionMismatch,
                what + ": matrix is " + std::to_string(f.rows()) + "x" + std::to_string(f.cols()) + ", expected " +
                    std::to_string(target.generators()) + "x" + std::to_string(source.generators()));
  }
  if (!is_valid_map(source, target, f)) {
    throw Error(ErrorCode::InvalidMap, what + ": relations are not sent to relations");
  }
}

bool maps_equal(const FPModule& target, const Matrix& f, const Matrix& g) {
  if (f.rows() != g.rows() || f.cols() != g.cols()) return false;
  return is_zero_map(target, f - g);
}

bool is_zero_map(const FPModule& target, const Matrix& f) {
  if (f.is_zero()) return true;
  return in_span(target.ring().cover(), target.lifted_relations(), f);
}

namespace {

// Presentation of Lambda^k / Y, pruned of unit invariants; `gens` (g x k) maps
// the k lattice coordinates to ambient generators.
Subobject prune(const Ring& ring, const Matrix& gens, const Matrix& coords) {
  const Ring pid = ring.cover();
  const std::size_t k = coords.rows();
  SmithForm f = smith_normal_form(pid, coords);
  std::vector<std::size_t> kept;
  std::vector<Integer> orders;  // 0 for free coordinates
  for (std::size_t i = 0; i < k; ++i) {
    if (i < f.rank) {
      const Integer& d = f.diagonal[i];
      if (d == 1) continue;
      kept.push_back(i);
      orders.push_back(ring.modulus() > 0 && d == ring.modulus() ? Integer(0) : d);
    } else {
      kept.push_back(i);
      orders.push_back(0);
    }
  }
  std::size_t torsion = 0;
  for (const auto& d : orders)
    if (d != 0) ++torsion;
  Matrix rel(kept.size(), torsion);
  std::size_t c = 0;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (orders[i] != 0) rel(i, c++) = Rational(orders[i]);
  }
  Subobject out;
  out.module = FPModule(ring, kept.size(), rel);
  out.inclusion = (gens * f.U_inv.select_cols(kept)).reduced(ring);
  return out;
}

}  // namespace

Simplified simplify(const FPModule& m) {
  Subobject s = prune(m.ring(), Matrix::identity(m.generators()), m.lifted_relations());
  Simplified out;
  out.module = s.module;
  out.from_new = s.inclusion;
  // to_new: solve from_new * y == x for each old generator x, modulo relations
  Matrix to_new(s.module.generators(), m.generators());
  for (std::size_t j = 0; j < m.generators(); ++j) {
    Matrix e(m.generators(), 1);
    e(j, 0) = 1;
    auto y = factor_through(m, out.from_new, e);
    if (!y) throw Error(ErrorCode::Internal, "simplify: generator not reachable");
    to_new.set_block(0, j, *y);
  }
  out.to_new = to_new.reduced(m.ring());
  return out;
}

Subobject lattice_quotient(const Ring& ring, const Matrix& upper, const Matrix& lower) {
  Matrix coords(upper.cols(), lower.cols());
  if (lower.cols() > 0 && upper.cols() > 0) {
    auto y = solve(ring.cover(), upper, lower);
    if (!y) throw Error(ErrorCode::Internal, "lattice quotient: lower lattice not inside upper");
    coords = *y;
  }
  return prune(ring, upper, coords);
}

Subobject subquotient(const FPModule& ambient, const Matrix& basis) {
  return lattice_quotient(ambient.ring(), basis, ambient.lifted_relations());
}

Matrix kernel_lattice(const FPModule& source, const FPModule& target, const Matrix& f) {
  const Ring pid = source.ring().cover();
  Matrix a = Matrix::hcat(f, target.lifted_relations());
  Matrix n = kernel_basis(pid, a);
  return image_basis(pid, n.row_range(0, source.generators()));
}

Subobject kernel(const FPModule& source, const FPModule& target, const Matrix& f) {
  require_valid_map(source, target, f, "kernel");
  return subquotient(source, kernel_lattice(source, target, f));
}

Subobject image(const FPModule& source, const FPModule& target, const Matrix& f) {
  require_valid_map(source, target, f, "image");
  const Ring pid = target.ring().cover();
  Matrix gens = Matrix::hcat(f, target.lifted_relations());
  Matrix basis = image_basis(pid, gens);
  return subquotient(target, basis);
}

FPModule cokernel(const FPModule& source, const FPModule& target, const Matrix& f) {
  require_valid_map(source, target, f, "cokernel");
  return FPModule(target.ring(), target.generators(), Matrix::hcat(target.relations(), f));
}

bool is_injective(const FPModule& source, const FPModule& target, const Matrix& f) {
  return kernel(source, target, f).module.is_zero();
}

bool is_surjective(const FPModule& source, const FPModule& target, const Matrix& f) {
  return cokernel(source, target, f).is_zero();
}

bool is_isomorphism(const FPModule& source, const FPModule& target, const Matrix& f) {
  return is_injective(source, target, f) && is_surjective(source, target, f);
}

std::optional<Matrix> factor_through(const FPModule& ambient, const Matrix& inclusion, const Matrix& v) {
  const Ring pid = ambient.ring().cover();
  Matrix a = Matrix::hcat(inclusion, ambient.lifted_relations());
  auto sol = solve(pid, a, v);
  if (!sol) return std::nullopt;
  return sol->row_range(0, inclusion.cols()).reduced(ambient.ring());
}

FPModule direct_sum(const FPModule& a, const FPModule& b) {
  if (a.ring() != b.ring()) throw Error(ErrorCode::RingMismatch, "direct sum over different rings");
  return FPModule(a.ring(), a.generators() + b.generators(), Matrix::block_diag(a.relations(), b.relations()));
}

FPModule direct_sum(const std::vector<FPModule>& parts, const Ring& ring) {
  std::vector<Matrix> rels;
  std::size_t g = 0;
  for (const auto& p : parts) {
    if (p.ring() != ring) throw Error(ErrorCode::RingMismatch, "direct sum over different rings");
    rels.push_back(p.relations());
    g += p.generators();
  }
  return FPModule(ring, g, Matrix::block_diag(rels));
}

Matrix map_entries(const RingMap& f, const Matrix& m) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = f.apply(m(i, j));
  return out;
}

Matrix lift_entries(const RingMap& f, const Matrix& m) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = f.lift(m(i, j));
  return out;
}

FPModule base_change(const FPModule& m, const RingMap& f) {
  if (m.ring() != f.source()) throw Error(ErrorCode::RingMismatch, "base_change: module is not over the source");
  return FPModule(f.target(), m.generators(), map_entries(f, m.relations()));
}

FPModule restrict_scalars(const FPModule& m, const RingMap& f) {
  if (m.ring() != f.target()) throw Error(ErrorCode::RingMismatch, "restrict: module is not over the target");
  if (!f.is_module_finite()) {
    throw Error(ErrorCode::NotModuleFinite,
                "restriction along " + f.source().name() + " -> " + f.target().name() + " is not module-finite");
  }
  Matrix rel = lift_entries(f, m.relations());
  if (f.source() != f.target() && f.target().modulus() > 0) {
    rel = Matrix::hcat(rel, Matrix::identity(m.generators()).scaled(Rational(f.target().modulus())));
  }
  return FPModule(f.source(), m.generators(), rel);
}

}  // namespace ringdiag
