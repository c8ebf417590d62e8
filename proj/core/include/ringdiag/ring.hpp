#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ringdiag {

using Integer = mpz_class;
using Rational = mpq_class;

/// The ring Z[S^-1]/(n): integers with a finite prime set S inverted (or every
/// prime, giving Q), taken modulo n >= 0 with n coprime to S.
///
/// Elements are stored as rationals.  Canonical forms:
///   n = 0: the reduced fraction (its denominator is S-smooth);
///   n > 0: the integer representative in [0, n);
///   n = 1: the zero ring, every element is 0.
///
/// Linear algebra over a quotient ring is never done directly; it is done over
/// cover() = Z[S^-1] with n-multiples adjoined as extra relations.
class Ring {
 public:
  Ring() = default;  // Z

  static Ring integers() { return Ring(); }
  static Ring rationals();
  static Ring zero();
  /// Validates primes and the coprimality of n with S; throws InvalidRing.
  static Ring make(std::vector<Integer> inverted, Integer modulus = 0);
  static Ring make_all(Integer modulus = 0);
  static Ring localized(std::initializer_list<long> primes, long modulus = 0);

  bool inverts_all() const { return all_; }
  const std::vector<Integer>& inverted() const { return inverted_; }
  const Integer& modulus() const { return modulus_; }
  bool is_zero_ring() const { return modulus_ == 1; }
  bool is_quotient() const { return modulus_ > 0; }

  /// Z[S^-1] (or Q) with the same inverted set and no quotient.
  Ring cover() const;

  bool inverts(const Integer& prime) const;
  bool is_inverted_prime(const Integer& prime) const;
  /// |k| with every inverted prime removed; 0 stays 0.
  Integer strip_units(const Integer& k) const;

  bool contains(const Rational& x) const;
  Rational canonical(const Rational& x) const;
  bool is_unit(const Rational& x) const;

  // Euclidean structure, only meaningful when modulus() == 0.
  Integer norm(const Rational& x) const;
  /// x = unit_part(x) * norm(x) for x != 0.
  Rational unit_part(const Rational& x) const;
  bool divides(const Rational& a, const Rational& b) const;
  std::pair<Rational, Rational> divmod(const Rational& a, const Rational& b) const;

  std::string name() const;

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.all_ == b.all_ && a.modulus_ == b.modulus_ && a.inverted_ == b.inverted_;
  }
  friend bool operator!=(const Ring& a, const Ring& b) { return !(a == b); }

 private:
  bool all_ = false;
  std::vector<Integer> inverted_;  // sorted, unique primes
  Integer modulus_ = 0;
};

/// The unique unital map between two rings of the class, when it exists.
class RingMap {
 public:
  /// Throws NoCanonicalMap naming the violated clause.
  static RingMap canonical(const Ring& source, const Ring& target);
  static std::optional<std::string> obstruction(const Ring& source, const Ring& target);
  static RingMap identity(const Ring& r) { return RingMap(r, r); }

  const Ring& source() const { return source_; }
  const Ring& target() const { return target_; }

  Rational apply(const Rational& x) const;

  /// Target finitely generated as a source module: a quotient target, or the
  /// identity.  Such maps are surjective, so lift() is defined.
  bool is_module_finite() const;
  /// A source element mapping to y; throws NotModuleFinite.
  Rational lift(const Rational& y) const;

  RingMap then(const RingMap& next) const;

 private:
  RingMap(Ring s, Ring t) : source_(std::move(s)), target_(std::move(t)) {}
  Ring source_;
  Ring target_;
};

bool is_probable_prime(const Integer& p);
std::string to_string(const Rational& x);
Rational parse_rational(const std::string& text);

}  // namespace ringdiag
