#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ringdiag/matrix.hpp"
#include "ringdiag/ring.hpp"

namespace ringdiag {

/// Normal form of a finitely presented module: free rank plus the invariant
/// factor chain d_1 | d_2 | ... of its torsion.  Over a quotient ring Z[S^-1]/(n)
/// a cyclic summand R/(n) = R is free, so factors equal to n count towards
/// free_rank and torsion lists only the proper divisors of n.
struct ModuleInvariants {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  std::string to_string() const;
  friend bool operator==(const ModuleInvariants&, const ModuleInvariants&) = default;
};

/// R^g / (column span of the relation matrix).  Relations are stored reduced
/// over R; the modulus relations of a quotient ring are implicit.
class FPModule {
 public:
  FPModule() = default;
  FPModule(Ring ring, std::size_t generators, Matrix relations);

  static FPModule free(const Ring& ring, std::size_t rank);
  static FPModule zero(const Ring& ring) { return free(ring, 0); }
  static FPModule cyclic(const Ring& ring, const Integer& order);
  static FPModule from_invariants(const Ring& ring, const ModuleInvariants& inv);

  const Ring& ring() const { return ring_; }
  std::size_t generators() const { return generators_; }
  const Matrix& relations() const { return relations_; }
  bool has_relations() const { return !relations_.is_zero(); }

  /// Relations over ring().cover(), with modulus * identity appended for a
  /// quotient ring.
  Matrix lifted_relations() const;

  ModuleInvariants invariants() const;
  bool is_zero() const { return invariants().is_zero(); }
  /// Isomorphic to a free module (torsion-free normal form).
  bool is_free() const { return invariants().torsion.empty(); }

  std::string to_string() const;

  friend bool operator==(const FPModule&, const FPModule&) = default;

 private:
  Ring ring_;
  std::size_t generators_ = 0;
  Matrix relations_;
};

/// A submodule (or subquotient) given by a presentation and the matrix sending
/// its generators into the ambient generators.
struct Subobject {
  FPModule module;
  Matrix inclusion;
};

/// A minimal presentation: unit invariant factors dropped.
struct Simplified {
  FPModule module;
  Matrix to_new;    // new gens x old gens
  Matrix from_new;  // old gens x new gens
};

// Module maps are matrices on generators: rows index target generators,
// columns index source generators, entries in the common ring.

bool is_valid_map(const FPModule& source, const FPModule& target, const Matrix& f);
void require_valid_map(const FPModule& source, const FPModule& target, const Matrix& f,
                       const std::string& what);
/// f and g induce the same map into `target`.
bool maps_equal(const FPModule& target, const Matrix& f, const Matrix& g);
bool is_zero_map(const FPModule& target, const Matrix& f);

Simplified simplify(const FPModule& m);
/// span(upper) / span(lower) over ring.cover(), presented over `ring`;
/// `upper` has independent columns and contains every column of `lower`.
/// The inclusion expresses the new generators in the coordinates of `upper`'s
/// rows.
Subobject lattice_quotient(const Ring& ring, const Matrix& upper, const Matrix& lower);
/// Cover-level lattice basis of {x : f x lies in the target relations}.
Matrix kernel_lattice(const FPModule& source, const FPModule& target, const Matrix& f);
/// The subquotient span(basis) / span(lifted ambient relations); `basis` is a
/// cover-level lattice basis containing the ambient relations.
Subobject subquotient(const FPModule& ambient, const Matrix& basis);

Subobject kernel(const FPModule& source, const FPModule& target, const Matrix& f);
Subobject image(const FPModule& source, const FPModule& target, const Matrix& f);
/// Target generators, relations extended by the columns of f.
FPModule cokernel(const FPModule& source, const FPModule& target, const Matrix& f);

bool is_injective(const FPModule& source, const FPModule& target, const Matrix& f);
bool is_surjective(const FPModule& source, const FPModule& target, const Matrix& f);
bool is_isomorphism(const FPModule& source, const FPModule& target, const Matrix& f);

/// y with inclusion * y == v modulo the ambient relations.
std::optional<Matrix> factor_through(const FPModule& ambient, const Matrix& inclusion, const Matrix& v);

FPModule direct_sum(const FPModule& a, const FPModule& b);
FPModule direct_sum(const std::vector<FPModule>& parts, const Ring& ring);

Matrix map_entries(const RingMap& f, const Matrix& m);
/// Entrywise lift along a module-finite map; throws NotModuleFinite.
Matrix lift_entries(const RingMap& f, const Matrix& m);

/// Extension of scalars: the same presentation read over the target ring.
FPModule base_change(const FPModule& m, const RingMap& f);
/// Restriction of scalars along a module-finite f: source -> m.ring().
FPModule restrict_scalars(const FPModule& m, const RingMap& f);

}  // namespace ringdiag
