#include "ringdiag/smith.hpp"

#include "ringdiag/error.hpp"

namespace ringdiag {

namespace {

void require_domain(const Ring& pid) {
  if (pid.modulus() != 0) {
    throw Error(ErrorCode::Internal, "Smith normal form needs a domain-type ring, got " + pid.name());
  }
}

// Tracks A, and the accumulated U, U^-1, V, V^-1 under elementary operations.
class Reducer {
 public:
  Reducer(const Ring& pid, const Matrix& m)
      : pid_(pid),
        a_(m),
        u_(Matrix::identity(m.rows())),
        u_inv_(Matrix::identity(m.rows())),
        v_(Matrix::identity(m.cols())),
        v_inv_(Matrix::identity(m.cols())) {}

  void swap_rows(std::size_t i, std::size_t j) {
    a_.swap_rows(i, j);
    u_.swap_rows(i, j);
    u_inv_.swap_cols(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    a_.swap_cols(i, j);
    v_.swap_cols(i, j);
    v_inv_.swap_rows(i, j);
  }
  // row_t += c * row_s
  void add_row(std::size_t t, std::size_t s, const Rational& c) {
    a_.add_row_multiple(t, s, c);
    u_.add_row_multiple(t, s, c);
    u_inv_.add_col_multiple(s, t, -c);
  }
  // col_t += c * col_s
  void add_col(std::size_t t, std::size_t s, const Rational& c) {
    a_.add_col_multiple(t, s, c);
    v_.add_col_multiple(t, s, c);
    v_inv_.add_row_multiple(s, t, -c);
  }
  void scale_row(std::size_t r, const Rational& c) {
    a_.scale_row(r, c);
    u_.scale_row(r, c);
    u_inv_.scale_col(r, 1 / c);
  }

  Matrix& a() { return a_; }
  SmithForm finish() {
    SmithForm f;
    f.D = std::move(a_);
    f.U = std::move(u_);
    f.U_inv = std::move(u_inv_);
    f.V = std::move(v_);
    f.V_inv = std::move(v_inv_);
    return f;
  }

 private:
  const Ring& pid_;
  Matrix a_;
  Matrix u_;
  Matrix u_inv_;
  Matrix v_;
  Matrix v_inv_;
};

}  // namespace

SmithForm smith_normal_form(const Ring& pid, const Matrix& m, bool record_transcript) {
  require_domain(pid);
  Reducer red(pid, m);
  Matrix& a = red.a();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::string> transcript;
  std::size_t t = 0;

  for (; t < std::min(rows, cols); ++t) {
    bool found_any = false;
    for (;;) {
      // minimal-norm pivot in the trailing block
      std::size_t pi = 0, pj = 0;
      Integer best = -1;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a(i, j) == 0) continue;
          Integer n = pid.norm(a(i, j));
          if (best < 0 || n < best) {
            best = n;
            pi = i;
            pj = j;
          }
        }
      }
      if (best < 0) break;
      found_any = true;
      red.swap_rows(t, pi);
      red.swap_cols(t, pj);
      if (record_transcript) {
        transcript.push_back("step " + std::to_string(t) + ": pivot " + to_string(a(t, t)) + " from (" +
                             std::to_string(pi) + "," + std::to_string(pj) + ")");
      }

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        auto [q, r] = pid.divmod(a(i, t), a(t, t));
        red.add_row(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        auto [q, r] = pid.divmod(a(t, j), a(t, t));
        red.add_col(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // enforce the divisibility chain
      bool fixed = false;
      for (std::size_t i = t + 1; i < rows && !fixed; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (!pid.divides(a(t, t), a(i, j))) {
            red.add_row(t, i, Rational(1));
            fixed = true;
            break;
          }
        }
      }
      if (!fixed) break;
    }
    if (!found_any) break;
    Rational unit = pid.unit_part(a(t, t));
    if (unit != 1) red.scale_row(t, 1 / unit);
  }

  SmithForm f = red.finish();
  f.rank = t;
  for (std::size_t i = 0; i < t; ++i) f.diagonal.push_back(Integer(f.D(i, i).get_num()));
  f.transcript = std::move(transcript);
  return f;
}

InvariantFactors invariant_factors(const Ring& pid, const Matrix& m) {
  SmithForm f = smith_normal_form(pid, m);
  InvariantFactors out;
  for (const auto& d : f.diagonal) {
    if (d != 1) out.nonunit.push_back(d);
  }
  out.corank = m.rows() - f.rank;
  return out;
}

Matrix kernel_basis(const Ring& pid, const Matrix& a) {
  SmithForm f = smith_normal_form(pid, a);
  std::vector<std::size_t> idx;
  for (std::size_t j = f.rank; j < a.cols(); ++j) idx.push_back(j);
  return f.V.select_cols(idx);
}

Matrix image_basis(const Ring& pid, const Matrix& a) {
  SmithForm f = smith_normal_form(pid, a);
  Matrix out(a.rows(), f.rank);
  for (std::size_t j = 0; j < f.rank; ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) = f.U_inv(i, j) * f.D(j, j);
  }
  return out;
}

std::optional<Matrix> solve(const Ring& pid, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "solve: row mismatch");
  SmithForm f = smith_normal_form(pid, a);
  Matrix y = f.U * b;
  Matrix z(a.cols(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i < f.rank) {
        Rational q = y(i, c) / f.D(i, i);
        if (!pid.contains(q)) return std::nullopt;
        z(i, c) = q;
      } else if (y(i, c) != 0) {
        return std::nullopt;
      }
    }
  }
  return f.V * z;
}

bool in_span(const Ring& pid, const Matrix& a, const Matrix& b) { return solve(pid, a, b).has_value(); }

}  // namespace ringdiag
