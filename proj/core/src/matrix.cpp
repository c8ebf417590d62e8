#include "ringdiag/matrix.hpp"

#include <sstream>

#include "ringdiag/error.hpp"

namespace ringdiag {

Matrix::Matrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::diagonal(const std::vector<Rational>& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::column(const std::vector<Rational>& v) {
  Matrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) {
    throw Error(ErrorCode::DimensionMismatch, "product of " + std::to_string(rows_) + "x" +
                                                  std::to_string(cols_) + " and " +
                                                  std::to_string(rhs.rows_) + "x" + std::to_string(rhs.cols_));
  }
  Matrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        const Rational& b = rhs(k, j);
        if (b != 0) out(i, j) += a * b;
      }
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw Error(ErrorCode::DimensionMismatch, "sum");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw Error(ErrorCode::DimensionMismatch, "difference");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

Matrix Matrix::operator-() const {
  Matrix out = *this;
  for (auto& v : out.data_) v = -v;
  return out;
}

Matrix Matrix::scaled(const Rational& c) const {
  Matrix out = *this;
  for (auto& v : out.data_) v *= c;
  return out;
}

Matrix Matrix::transposed() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Matrix Matrix::col_range(std::size_t begin, std::size_t end) const {
  Matrix out(rows_, end - begin);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = begin; j < end; ++j) out(i, j - begin) = (*this)(i, j);
  return out;
}

Matrix Matrix::row_range(std::size_t begin, std::size_t end) const {
  Matrix out(end - begin, cols_);
  for (std::size_t i = begin; i < end; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i - begin, j) = (*this)(i, j);
  return out;
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const {
  Matrix out(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = (*this)(i, idx[j]);
  return out;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix out(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(idx[i], j);
  return out;
}

std::vector<Rational> Matrix::col(std::size_t j) const {
  std::vector<Rational> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_block(std::size_t r, std::size_t c, const Matrix& block) {
  if (r + block.rows_ > rows_ || c + block.cols_ > cols_) {
    throw Error(ErrorCode::DimensionMismatch, "block does not fit");
  }
  for (std::size_t i = 0; i < block.rows_; ++i)
    for (std::size_t j = 0; j < block.cols_; ++j) (*this)(r + i, c + j) = block(i, j);
}

Matrix Matrix::hcat(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "hcat row mismatch");
  Matrix out(a.rows_, a.cols_ + b.cols_);
  out.set_block(0, 0, a);
  out.set_block(0, a.cols_, b);
  return out;
}

Matrix Matrix::vcat(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.cols_) throw Error(ErrorCode::DimensionMismatch, "vcat column mismatch");
  Matrix out(a.rows_ + b.rows_, a.cols_);
  out.set_block(0, 0, a);
  out.set_block(a.rows_, 0, b);
  return out;
}

Matrix Matrix::block_diag(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows_ + b.rows_, a.cols_ + b.cols_);
  out.set_block(0, 0, a);
  out.set_block(a.rows_, a.cols_, b);
  return out;
}

Matrix Matrix::hcat(const std::vector<Matrix>& parts, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows_ != rows) throw Error(ErrorCode::DimensionMismatch, "hcat row mismatch");
    cols += p.cols_;
  }
  Matrix out(rows, cols);
  std::size_t c = 0;
  for (const auto& p : parts) {
    out.set_block(0, c, p);
    c += p.cols_;
  }
  return out;
}

Matrix Matrix::block_diag(const std::vector<Matrix>& parts) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (const auto& p : parts) {
    rows += p.rows_;
    cols += p.cols_;
  }
  Matrix out(rows, cols);
  std::size_t r = 0;
  std::size_t c = 0;
  for (const auto& p : parts) {
    out.set_block(r, c, p);
    r += p.rows_;
    c += p.cols_;
  }
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& v : data_)
    if (v != 0) return false;
  return true;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void Matrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void Matrix::add_row_multiple(std::size_t target, std::size_t source, const Rational& c) {
  if (c == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) {
    const Rational& s = (*this)(source, j);
    if (s != 0) (*this)(target, j) += c * s;
  }
}

void Matrix::add_col_multiple(std::size_t target, std::size_t source, const Rational& c) {
  if (c == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const Rational& s = (*this)(i, source);
    if (s != 0) (*this)(i, target) += c * s;
  }
}

void Matrix::scale_row(std::size_t r, const Rational& c) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) *= c;
}

void Matrix::scale_col(std::size_t c, const Rational& s) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) *= s;
}

Matrix Matrix::reduced(const Ring& ring) const {
  Matrix out = *this;
  for (auto& v : out.data_) v = ring.canonical(v);
  return out;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << " ";
      os << ringdiag::to_string((*this)(i, j));
    }
  }
  os << "]";
  if (rows_ == 0 || cols_ == 0) os << "(" << rows_ << "x" << cols_ << ")";
  return os.str();
}

}  // namespace ringdiag
