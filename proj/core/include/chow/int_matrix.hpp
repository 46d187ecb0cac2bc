#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace chow {

// All lattice arithmetic is exact; no entry ever lives in a machine word.
using Int = boost::multiprecision::cpp_int;

// Dense row-major matrix over Z.  Zero-row and zero-column shapes are legal
// and show up constantly (empty complexes, Pic of a point, ...), so nothing
// here may assume rows() > 0 or cols() > 0.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const std::vector<Int>& diag);
  // Rows listed top to bottom; all rows must have equal length.
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows);
  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);
  // A matrix with `rows` rows and no columns (the zero map out of 0).
  static IntMatrix empty_cols(std::size_t rows) { return IntMatrix(rows, 0); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  bool operator==(const IntMatrix& other) const = default;

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix operator-() const;

  std::vector<Int> column(std::size_t j) const;
  std::vector<Int> apply(const std::vector<Int>& v) const;  // this * v

  // [this | rhs] and [this ; rhs].
  IntMatrix hstack(const IntMatrix& rhs) const;
  IntMatrix vstack(const IntMatrix& rhs) const;
  // Columns [first, first+count) as their own matrix.
  IntMatrix slice_cols(std::size_t first, std::size_t count) const;
  IntMatrix slice_rows(std::size_t first, std::size_t count) const;
  void set_block(std::size_t r0, std::size_t c0, const IntMatrix& block);

  // Exact determinant by Bareiss fraction-free elimination; square only.
  Int determinant() const;
  bool is_unimodular() const;

  std::string to_string() const;  // diagnostics only

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> entries_;
};

}  // namespace chow
