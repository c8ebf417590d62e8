#pragma once

#include <string>
#include <vector>

#include "ringdiag/diagram.hpp"

namespace ringdiag {

/// Total complex of the normalized cosimplicial replacement of X, restricted
/// to `base`.  Cosimplicial degree k collects restrict(X(s_k)) over chains
/// s_0 -> ... -> s_k of non-identity arrows; Tot_N = sum over k of C^k_{N+k}
/// with differential delta + (-1)^k d_X.
struct Totalization {
  ChainComplex complex;
  /// chains[k] lists the k-chains in the order their summands appear.
  std::vector<std::vector<std::vector<std::string>>> chains;
};

/// Throws NotModuleFinite when base -> R(s) is not module-finite for some s,
/// NoCanonicalMap when there is no map at all.
Totalization bk_totalization(const ModuleDiagram& x, const Ring& base);
ChainComplex bk_holim(const ModuleDiagram& x, const Ring& base);
/// The induced map of totalizations.
ChainMap bk_holim_map(const DiagramMap& f, const Ring& base);

/// P_n = A_n + B_n + C_{n+1}, d(a, b, c) = (da, db, f a - g b - dc).
ChainComplex homotopy_pullback(const ChainMap& f, const ChainMap& g);

}  // namespace ringdiag
