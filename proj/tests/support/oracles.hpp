#pragma once

// Reference computations that share no code with the engine's linear algebra.
// Slow by construction; only for small inputs.

#include <map>
#include <string>
#include <vector>

#include "ringdiag/diagram.hpp"

namespace oracle {

using ringdiag::Integer;
using ringdiag::Rational;
using IntMatrix = std::vector<std::vector<Integer>>;

/// Bareiss fraction-free determinant.
Integer determinant(IntMatrix m);

/// d_k / d_{k-1} where d_k is the gcd of all k x k minors; zero factors
/// (beyond the rank) are omitted.
std::vector<Integer> minor_gcd_factors(const IntMatrix& m);

/// Rank over Q by plain Gaussian elimination on fractions.
std::size_t rational_rank(const std::vector<std::vector<Rational>>& m);

/// The matrix with every column scaled by the lcm of its denominators.
IntMatrix clear_denominators(const ringdiag::Matrix& m);

/// A finitely generated abelian group as a sorted list of elementary divisors
/// (prime powers) plus a free rank.  Comparable across presentations.
struct Group {
  std::size_t free_rank = 0;
  std::vector<Integer> prime_powers;
  friend bool operator==(const Group&, const Group&) = default;
};
std::string to_string(const Group& g);

/// The underlying abelian group of engine invariants over Z[S^-1]/(n): free
/// summands become Z[S^-1] (free) or Z/n (torsion).
Group group_of(const ringdiag::ModuleInvariants& inv, const ringdiag::Ring& ring);

/// Homology of a degreewise free complex over Z[S^-1] (no relations):
/// rank from rational ranks, torsion from the minor-gcd factors of the
/// incoming differential with S-primes stripped.
std::map<int, Group> free_complex_homology(const ringdiag::ChainComplex& c);

/// Homology of any complex over Z/n (n > 0) by enumerating every element of
/// every chain group.  Returns the elementary divisors of each H_k computed
/// from the counts |H_k[m]| for prime powers m.
std::map<int, Group> finite_complex_homology(const ringdiag::ChainComplex& c);

/// Every ordering of the objects along which each non-identity arrow goes up
/// (direct) or down (inverse).
std::vector<std::vector<std::string>> all_linear_extensions(const ringdiag::FiniteCategory& cat, bool direct);

/// Strictly increasing flags x_0 < ... < x_k in the underlying poset, by
/// enumerating every (k+1)-tuple of objects.
std::size_t count_flags(const ringdiag::FiniteCategory& cat, std::size_t k);

}  // namespace oracle
