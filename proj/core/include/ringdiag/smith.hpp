#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ringdiag/matrix.hpp"
#include "ringdiag/ring.hpp"

namespace ringdiag {

/// U * m * V = D with U, V invertible over the ring and D diagonal,
/// d_1 | d_2 | ... | d_rank, each d_i a positive integer free of inverted primes.
struct SmithForm {
  Matrix U;
  Matrix U_inv;
  Matrix D;
  Matrix V;
  Matrix V_inv;
  std::vector<Integer> diagonal;  // the nonzero d_i, length == rank
  std::size_t rank = 0;
  std::vector<std::string> transcript;
};

/// Smith normal form over a domain-type ring Z[S^-1] or Q (modulus 0).
/// Pivots are chosen by minimal unit-free absolute value, ties broken by
/// row-major position.
SmithForm smith_normal_form(const Ring& pid, const Matrix& m, bool record_transcript = false);

/// The non-unit diagonal entries (the units are dropped), plus the number of
/// zero rows of D, i.e. rows() - rank.
struct InvariantFactors {
  std::vector<Integer> nonunit;
  std::size_t corank = 0;
};
InvariantFactors invariant_factors(const Ring& pid, const Matrix& m);

// Linear algebra over a domain-type ring.  Columns are vectors.

/// Columns form a basis of {x : A x = 0}.
Matrix kernel_basis(const Ring& pid, const Matrix& a);
/// Columns form a basis of the column span of A.
Matrix image_basis(const Ring& pid, const Matrix& a);
/// Some X with A X = B, if one exists.
std::optional<Matrix> solve(const Ring& pid, const Matrix& a, const Matrix& b);
/// Every column of B lies in the column span of A.
bool in_span(const Ring& pid, const Matrix& a, const Matrix& b);

}  // namespace ringdiag
