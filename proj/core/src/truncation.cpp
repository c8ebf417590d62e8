#include <map>
#include <set>

#include "ringdiag/error.hpp"
#include "ringdiag/fracture.hpp"

namespace ringdiag {

namespace {

Integer ipow(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

Integer mod(const Integer& a, const Integer& d) {
  Integer r = a % d;
  if (r < 0) r += d;
  return r;
}

constexpr unsigned long kWindowLimit = 20000000;

// Free part: W_p / base = (1/p^B) base / base, likewise for q and pq.  The
// difference map W_p/base + W_q/base -> W_pq/base must be bijective.
void free_window(const Integer& p, const Integer& q, int bound, WindowCheck& out) {
  const Integer pb = ipow(p, static_cast<unsigned long>(bound));
  const Integer qb = ipow(q, static_cast<unsigned long>(bound));
  const Integer n = pb * qb;
  if (n > kWindowLimit) throw Error(ErrorCode::DimensionMismatch, "truncation window too large: " + n.get_str());
  const unsigned long np = pb.get_ui();
  const unsigned long nq = qb.get_ui();
  const unsigned long nn = n.get_ui();
  std::vector<char> hit(nn, 0);
  unsigned long zeros = 0;
  unsigned long reached = 0;
  for (unsigned long u = 0; u < np; ++u)
    for (unsigned long v = 0; v < nq; ++v) {
      long long key = static_cast<long long>((u * nq) % nn) - static_cast<long long>((v * np) % nn);
      if (key < 0) key += static_cast<long long>(nn);
      if (key == 0) ++zeros;
      if (!hit[static_cast<unsigned long>(key)]) {
        hit[static_cast<unsigned long>(key)] = 1;
        ++reached;
      }
    }
  out.kernel_defect += Integer(zeros) - 1;
  out.image_defect += Integer(nn - reached);
}

struct TorsionWindow {
  Integer kernel_defect, middle_defect, image_defect;
  Integer order_p, order_q, order_pq;
};

// Z/d with the elements x / p^i, x / q^j and x / (p^i q^j), i, j <= B.  An
// element a / p^B is identified with p^K a mod d for K large enough that p^K
// kills all p-power torsion of Z/d; this identifies exactly the elements
// equal in the localization.
TorsionWindow torsion_window(const Integer& d, const Integer& p, const Integer& q, int bound) {
  TorsionWindow out;
  const unsigned long big = mpz_sizeinbase(d.get_mpz_t(), 2) + 1;
  const Integer pk = mod(ipow(p, big), d);
  const Integer qk = mod(ipow(q, big), d);
  const Integer pqk = mod(pk * qk, d);
  const Integer pb = ipow(p, static_cast<unsigned long>(bound));
  const Integer qb = ipow(q, static_cast<unsigned long>(bound));
  auto key_p = [&](const Integer& a) { return mod(pk * a, d); };
  auto key_q = [&](const Integer& b) { return mod(qk * b, d); };
  auto key_pq = [&](const Integer& c) { return mod(pqk * c, d); };

  std::map<Integer, Integer> wp;  // class -> numerator over p^B
  std::map<Integer, Integer> wq;
  std::set<Integer> wpq;
  for (Integer x = 0; x < d; ++x)
    for (int i = 0; i <= bound; ++i) {
      const Integer pi = ipow(p, static_cast<unsigned long>(bound - i));
      const Integer qi = ipow(q, static_cast<unsigned long>(bound - i));
      wp.emplace(key_p(x * pi), x * pi);
      wq.emplace(key_q(x * qi), x * qi);
      for (int j = 0; j <= bound; ++j) {
        wpq.insert(key_pq(x * pi * ipow(q, static_cast<unsigned long>(bound - j))));
      }
    }
  out.order_p = wp.size();
  out.order_q = wq.size();
  out.order_pq = wpq.size();

  std::set<std::pair<Integer, Integer>> from_m;
  Integer dead = 0;
  for (Integer x = 0; x < d; ++x) {
    Integer a = key_p(x * pb);
    Integer b = key_q(x * qb);
    if (a == 0 && b == 0) ++dead;
    from_m.emplace(a, b);
  }
  out.kernel_defect = dead - 1;

  std::map<Integer, Integer> count_p;
  std::map<Integer, Integer> count_q;
  for (const auto& [k, a] : wp) ++count_p[key_pq(a * qb)];
  for (const auto& [k, b] : wq) ++count_q[key_pq(b * pb)];
  Integer agreeing = 0;
  for (const auto& [k, c] : count_p)
    if (auto it = count_q.find(k); it != count_q.end()) agreeing += c * it->second;
  out.middle_defect = agreeing - Integer(from_m.size());

  std::set<Integer> diffs;
  for (const auto& [a, ca] : count_p)
    for (const auto& [b, cb] : count_q) diffs.insert(mod(a - b, d));
  out.image_defect = Integer(wpq.size()) - Integer(diffs.size());
  return out;
}

// Z/d splits into its prime-power parts, so each is enumerated on its own.
std::vector<Integer> elementary_divisors(const std::vector<Integer>& factors) {
  std::vector<Integer> out;
  for (Integer d : factors) {
    for (Integer r = 2; r * r <= d; ++r) {
      Integer pe = 1;
      while (d % r == 0) {
        d /= r;
        pe *= r;
      }
      if (pe > 1) out.push_back(pe);
    }
    if (d > 1) out.push_back(d);
  }
  return out;
}

WindowCheck window(const ModuleInvariants& inv, const LocalizationSquare& sq, int bound) {
  WindowCheck w;
  w.bound = bound;
  w.order_p = 1;
  w.order_q = 1;
  w.order_pq = 1;
  if (inv.free_rank > 0) free_window(sq.p(), sq.q(), bound, w);
  for (const auto& d : elementary_divisors(inv.torsion)) {
    TorsionWindow t = torsion_window(d, sq.p(), sq.q(), bound);
    w.kernel_defect += t.kernel_defect;
    w.middle_defect += t.middle_defect;
    w.image_defect += t.image_defect;
    w.order_p *= t.order_p;
    w.order_q *= t.order_q;
    w.order_pq *= t.order_pq;
  }
  return w;
}

Integer torsion_order(const ModuleInvariants& inv) {
  Integer n = 1;
  for (const auto& t : inv.torsion) n *= t;
  return n;
}

}  // namespace

TruncationReport truncation_oracle(const FPModule& m, const LocalizationSquare& sq, int bound) {
  if (bound < 1) throw Error(ErrorCode::DimensionMismatch, "truncation bound must be at least 1");
  if (m.ring() != sq.base()) throw Error(ErrorCode::RingMismatch, "module is not over the square's base");
  ModuleInvariants inv = m.invariants();
  TruncationReport out;
  out.windows.push_back(window(inv, sq, bound));
  out.windows.push_back(window(inv, sq, bound + 1));
  auto total = [](const WindowCheck& w) -> Integer { return w.kernel_defect + w.middle_defect + w.image_defect; };
  out.defects_shrink = total(out.windows[1]) <= total(out.windows[0]);
  out.verdict = out.windows[0].exact() && out.windows[1].exact();
  return out;
}

TruncationReport truncation_oracle(const FPModule& m, const LocalizationSquare& sq, int bound,
                                   const FractureReport& against) {
  TruncationReport out = truncation_oracle(m, sq, bound);
  if (out.verdict != against.verdict) {
    throw Error(ErrorCode::OracleDisagreement, std::string("truncation oracle says ") +
                                                   (out.verdict ? "exact" : "not exact") +
                                                   ", fracture reconstruction says " +
                                                   (against.verdict ? "exact" : "not exact"));
  }
  Integer op = 1, oq = 1, opq = 1;
  for (const auto& f : against.factors) {
    op *= torsion_order(f.corner_p);
    oq *= torsion_order(f.corner_q);
    opq *= torsion_order(f.apex);
  }
  for (const auto& w : out.windows) {
    if (w.order_p != op || w.order_q != oq || w.order_pq != opq) {
      throw Error(ErrorCode::OracleDisagreement,
                  "window " + std::to_string(w.bound) + " torsion orders (" + w.order_p.get_str() + ", " +
                      w.order_q.get_str() + ", " + w.order_pq.get_str() + ") differ from the corners (" +
                      op.get_str() + ", " + oq.get_str() + ", " + opq.get_str() + ")");
    }
  }
  return out;
}

}  // namespace ringdiag
