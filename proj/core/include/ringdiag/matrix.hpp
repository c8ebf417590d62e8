#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "ringdiag/ring.hpp"

namespace ringdiag {

/// Dense row-major matrix of exact rationals.  A matrix carries no ring; the
/// owning module or map decides which ring its entries live in.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix diagonal(const std::vector<Rational>& d);
  static Matrix column(const std::vector<Rational>& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix operator-() const;
  Matrix scaled(const Rational& c) const;
  Matrix transposed() const;

  Matrix col_range(std::size_t begin, std::size_t end) const;
  Matrix row_range(std::size_t begin, std::size_t end) const;
  Matrix select_cols(const std::vector<std::size_t>& idx) const;
  Matrix select_rows(const std::vector<std::size_t>& idx) const;
  std::vector<Rational> col(std::size_t j) const;

  /// Copies `block` into this matrix with its top-left corner at (r, c).
  void set_block(std::size_t r, std::size_t c, const Matrix& block);

  static Matrix hcat(const Matrix& a, const Matrix& b);
  static Matrix vcat(const Matrix& a, const Matrix& b);
  static Matrix block_diag(const Matrix& a, const Matrix& b);
  static Matrix hcat(const std::vector<Matrix>& parts, std::size_t rows);
  static Matrix block_diag(const std::vector<Matrix>& parts);

  bool is_zero() const;

  // Elementary operations, used by the Smith normal form routine.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void add_row_multiple(std::size_t target, std::size_t source, const Rational& c);
  void add_col_multiple(std::size_t target, std::size_t source, const Rational& c);
  void scale_row(std::size_t r, const Rational& c);
  void scale_col(std::size_t c, const Rational& s);

  /// Reduces every entry to its canonical form in `ring`.
  Matrix reduced(const Ring& ring) const;

  std::string to_string() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace ringdiag
