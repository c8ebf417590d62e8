#include "ringdiag/ring.hpp"

#include <algorithm>
#include <sstream>

#include "ringdiag/error.hpp"

namespace ringdiag {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingComposite: return "MissingComposite";
    case ErrorCode::ParallelMorphisms: return "ParallelMorphisms";
    case ErrorCode::NonIdentityEndomorphism: return "NonIdentityEndomorphism";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::UnknownObject: return "UnknownObject";
    case ErrorCode::InvalidRing: return "InvalidRing";
    case ErrorCode::NoCanonicalMap: return "NoCanonicalMap";
    case ErrorCode::NotModuleFinite: return "NotModuleFinite";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidComplex: return "InvalidComplex";
    case ErrorCode::InvalidMap: return "InvalidMap";
    case ErrorCode::TransitivityViolation: return "TransitivityViolation";
    case ErrorCode::UnsupportedShape: return "UnsupportedShape";
    case ErrorCode::InvalidSquare: return "InvalidSquare";
    case ErrorCode::OracleDisagreement: return "OracleDisagreement";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

bool is_probable_prime(const Integer& p) {
  if (p < 2) return false;
  return mpz_probab_prime_p(p.get_mpz_t(), 30) > 0;
}

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw Error(ErrorCode::InvalidMap, "cannot parse rational '" + text + "'");
  if (q.get_den() == 0) throw Error(ErrorCode::InvalidMap, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

namespace {

Integer abs_int(const Integer& k) { return k < 0 ? Integer(-k) : k; }

Integer positive_mod(const Integer& a, const Integer& n) {
  Integer r = a % n;
  if (r < 0) r += n;
  return r;
}

}  // namespace

Ring Ring::rationals() {
  Ring r;
  r.all_ = true;
  return r;
}

Ring Ring::zero() {
  Ring r;
  r.modulus_ = 1;
  return r;
}

Ring Ring::make(std::vector<Integer> inverted, Integer modulus) {
  if (modulus < 0) throw Error(ErrorCode::InvalidRing, "modulus must be >= 0");
  std::sort(inverted.begin(), inverted.end());
  inverted.erase(std::unique(inverted.begin(), inverted.end()), inverted.end());
  for (const auto& p : inverted) {
    if (!is_probable_prime(p)) throw Error(ErrorCode::InvalidRing, p.get_str() + " is not prime");
    if (modulus > 0 && modulus % p == 0) {
      throw Error(ErrorCode::InvalidRing,
                  "modulus " + modulus.get_str() + " is divisible by inverted prime " + p.get_str());
    }
  }
  Ring r;
  r.inverted_ = std::move(inverted);
  r.modulus_ = std::move(modulus);
  return r;
}

Ring Ring::make_all(Integer modulus) {
  if (modulus != 0 && modulus != 1) {
    throw Error(ErrorCode::InvalidRing, "Q admits only modulus 0 or 1");
  }
  Ring r = rationals();
  r.modulus_ = std::move(modulus);
  return r;
}

Ring Ring::localized(std::initializer_list<long> primes, long modulus) {
  std::vector<Integer> ps;
  for (long p : primes) ps.emplace_back(p);
  return make(std::move(ps), Integer(modulus));
}

Ring Ring::cover() const {
  Ring r = *this;
  r.modulus_ = 0;
  return r;
}

bool Ring::is_inverted_prime(const Integer& prime) const {
  if (all_) return true;
  return std::binary_search(inverted_.begin(), inverted_.end(), prime);
}

bool Ring::inverts(const Integer& prime) const {
  if (is_inverted_prime(prime)) return true;
  if (modulus_ > 0) return gcd(prime, modulus_) == 1;
  return false;
}

Integer Ring::strip_units(const Integer& k) const {
  Integer a = abs_int(k);
  if (a == 0) return a;
  if (all_) return 1;
  for (const auto& p : inverted_) {
    while (a % p == 0) a /= p;
  }
  return a;
}

bool Ring::contains(const Rational& x) const {
  if (all_) return true;
  Integer den = x.get_den();
  if (modulus_ > 0) {
    // any denominator invertible mod n represents an element
    if (gcd(den, modulus_) == 1) return true;
  }
  return strip_units(den) == 1;
}

Rational Ring::canonical(const Rational& x) const {
  if (!contains(x)) {
    throw Error(ErrorCode::InvalidRing, to_string(x) + " is not an element of " + name());
  }
  if (modulus_ == 0) {
    Rational y = x;
    y.canonicalize();
    return y;
  }
  if (modulus_ == 1) return Rational(0);
  Integer inv;
  Integer den = x.get_den();
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus_.get_mpz_t()) == 0) {
    throw Error(ErrorCode::InvalidRing, "denominator of " + to_string(x) + " not invertible in " + name());
  }
  return Rational(positive_mod(Integer(x.get_num()) * inv, modulus_));
}

bool Ring::is_unit(const Rational& x) const {
  if (modulus_ == 1) return true;
  if (modulus_ > 0) {
    Rational c = canonical(x);
    return gcd(Integer(c.get_num()), modulus_) == 1;
  }
  if (x == 0) return false;
  return norm(x) == 1;
}

Integer Ring::norm(const Rational& x) const {
  if (x == 0) return 0;
  return strip_units(x.get_num());
}

Rational Ring::unit_part(const Rational& x) const {
  Integer n = norm(x);
  return x / Rational(n);
}

bool Ring::divides(const Rational& a, const Rational& b) const {
  if (b == 0) return true;
  if (a == 0) return false;
  Integer na = norm(a);
  Integer nb = norm(b);
  return nb % na == 0;
}

std::pair<Rational, Rational> Ring::divmod(const Rational& a, const Rational& b) const {
  if (b == 0) throw Error(ErrorCode::Internal, "division by zero");
  if (a == 0) return {Rational(0), Rational(0)};
  Integer nb = norm(b);
  Rational ub = b / Rational(nb);
  Integer na = norm(a);
  Rational ua = a / Rational(na);
  Integer q0;
  Integer r0;
  mpz_fdiv_qr(q0.get_mpz_t(), r0.get_mpz_t(), na.get_mpz_t(), nb.get_mpz_t());
  Rational q = ua * Rational(q0) / ub;
  Rational r = ua * Rational(r0);
  q.canonicalize();
  r.canonicalize();
  return {q, r};
}

std::string Ring::name() const {
  std::ostringstream os;
  if (all_) {
    os << "Q";
  } else if (inverted_.empty()) {
    os << "Z";
  } else {
    Integer prod = 1;
    for (const auto& p : inverted_) prod *= p;
    os << "Z[1/" << prod.get_str() << "]";
  }
  if (modulus_ > 0) os << "/(" << modulus_.get_str() << ")";
  return os.str();
}

std::optional<std::string> RingMap::obstruction(const Ring& source, const Ring& target) {
  // (a) inverted primes of the source must be units in the target
  if (source.inverts_all()) {
    if (!target.inverts_all() && target.modulus() != 1) {
      return "clause (a): every prime is inverted in " + source.name() + " but not in " + target.name();
    }
  } else {
    for (const auto& p : source.inverted()) {
      if (!target.inverts(p)) {
        return "clause (a): " + p.get_str() + " is not invertible in " + target.name();
      }
    }
  }
  // (b) the target modulus divides the target-unit-free part of the source modulus
  if (source.modulus() > 0) {
    Integer free_part = target.strip_units(source.modulus());
    bool ok = target.modulus() == 0 ? free_part == 0 : free_part % target.modulus() == 0;
    if (!ok) {
      return "clause (b): " + target.modulus().get_str() + " does not divide the unit-free part " +
             free_part.get_str() + " of " + source.modulus().get_str();
    }
  }
  return std::nullopt;
}

RingMap RingMap::canonical(const Ring& source, const Ring& target) {
  if (auto why = obstruction(source, target)) {
    throw Error(ErrorCode::NoCanonicalMap, source.name() + " -> " + target.name() + ": " + *why);
  }
  return RingMap(source, target);
}

Rational RingMap::apply(const Rational& x) const { return target_.canonical(x); }

bool RingMap::is_module_finite() const {
  return target_.modulus() > 0 || target_ == source_;
}

Rational RingMap::lift(const Rational& y) const {
  if (!is_module_finite()) {
    throw Error(ErrorCode::NotModuleFinite, target_.name() + " is not finite over " + source_.name());
  }
  return source_.canonical(target_.canonical(y));
}

RingMap RingMap::then(const RingMap& next) const {
  if (next.source_ != target_) throw Error(ErrorCode::RingMismatch, "cannot compose ring maps");
  return RingMap::canonical(source_, next.target_);
}

}  // namespace ringdiag
