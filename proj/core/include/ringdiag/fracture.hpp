#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ringdiag/cellular.hpp"
#include "ringdiag/holim.hpp"

namespace ringdiag {

/// base = Z[S0^-1], the corners with p resp. q also inverted, and the apex
/// with both inverted.
class LocalizationSquare {
 public:
  LocalizationSquare() = default;
  /// Throws InvalidSquare when p == q, p or q lies in S0, or either is not
  /// prime.
  LocalizationSquare(std::vector<Integer> s0, Integer p, Integer q);

  const std::vector<Integer>& s0() const { return s0_; }
  const Integer& p() const { return p_; }
  const Integer& q() const { return q_; }
  const Ring& base() const { return base_; }
  const Ring& corner_p() const { return corner_p_; }
  const Ring& corner_q() const { return corner_q_; }
  const Ring& apex() const { return apex_; }

  /// The shape "p" -> "pq" <- "q".
  static FiniteCategory shape();
  RingDiagram ring_diagram() const;
  /// The same square reduced modulo d: base/(d) and its localizations.
  Ring quotient_base(const Integer& d) const;
  RingDiagram quotient_diagram(const Integer& d) const;

  std::string to_string() const;

  friend bool operator==(const LocalizationSquare&, const LocalizationSquare&) = default;

 private:
  std::vector<Integer> s0_;
  Integer p_;
  Integer q_;
  Ring base_;
  Ring corner_p_;
  Ring corner_q_;
  Ring apex_;
};

/// y = p_term - q_term with p_term in the p-corner and q_term in the q-corner.
/// For y = x / (p^i q^j r) with r a unit of the base, alpha in [0, p^i)
/// solves alpha q^j = 1 mod p^i and beta = (1 - alpha q^j) / p^i.
struct PartialFraction {
  Rational value;
  int p_exponent = 0;
  int q_exponent = 0;
  Integer alpha;
  Integer beta;
  Rational p_term;
  Rational q_term;
  Rational residue;  // value - (p_term - q_term)
};
/// Throws InvalidRing when y is not in the apex.
PartialFraction partial_fraction(const LocalizationSquare& sq, const Rational& y);

struct PullbackReport {
  bool kernel_is_base = false;  // the two corners meet exactly in the base
  bool surjective = false;      // every sampled apex element splits
  std::vector<PartialFraction> witnesses;
  bool verdict = false;
};
/// Witnesses for x / (p^i q^j) with 0 <= i, j <= depth and a few numerators.
PullbackReport verify_ring_pullback(const LocalizationSquare& sq, int depth = 2);

struct FactorCheck {
  std::string factor;  // "free rank r" or "torsion d"
  ModuleInvariants corner_p;
  ModuleInvariants corner_q;
  ModuleInvariants apex;
  bool corners_match = false;  // computed localizations equal the closed forms
  bool exact = false;
};

struct FractureReport {
  ModuleInvariants module;
  std::vector<FactorCheck> factors;
  std::vector<PartialFraction> witnesses;
  /// H_n of the homotopy limit of the fracture diagram, as base modules.
  std::vector<std::pair<int, ModuleInvariants>> holim_homology;
  /// The torsion part's homotopy limit cross-checked against the homotopy
  /// pullback of its two corner maps.
  bool torsion_cross_check = true;
  bool verdict = false;
  std::vector<std::string> notes;
};
/// Throws RingMismatch when m is not over sq.base().
FractureReport fracture_reconstruct(const FPModule& m, const LocalizationSquare& sq);

struct WindowCheck {
  int bound = 0;
  Integer kernel_defect = 0;  // nonzero elements of M dying in both corners, or corner overlap beyond the base
  Integer middle_defect = 0;  // corner pairs agreeing in the apex but not coming from M
  Integer image_defect = 0;   // apex window elements not reached by differences
  Integer order_p = 0;        // window group orders (torsion part)
  Integer order_q = 0;
  Integer order_pq = 0;
  bool exact() const { return kernel_defect == 0 && middle_defect == 0 && image_defect == 0; }
};
struct TruncationReport {
  std::vector<WindowCheck> windows;  // bounds B and B + 1
  bool defects_shrink = false;
  bool verdict = false;
};
/// Brute-force check of the fracture sequence on the elements with
/// denominators p^i q^j, i, j <= B, for B and B + 1.  Throws DimensionMismatch
/// for B < 1.
TruncationReport truncation_oracle(const FPModule& m, const LocalizationSquare& sq, int bound);
/// The same, then compared with `against`; throws OracleDisagreement.
TruncationReport truncation_oracle(const FPModule& m, const LocalizationSquare& sq, int bound,
                                   const FractureReport& against);

/// (base change to the fracture diagram, homotopy limit).  The derived unit
/// takes a module concentrated in one degree.
ModuleAdjunction fracture_adjunction(const LocalizationSquare& sq);

struct HasseReport {
  bool restriction_matches = false;  // the extended diagram restricts to the original
  bool kan_matches = false;          // left Kan from the added object recovers the corners
  CellVerdict unit;                  // M -> holim of its fracture diagram
  bool verdict = false;
  std::vector<std::string> notes;
};
/// Throws Internal when the restriction and Kan checks disagree.
HasseReport hasse_pipeline(const LocalizationSquare& sq, const FPModule& m);

}  // namespace ringdiag
