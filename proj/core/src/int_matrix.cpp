#include "chow/int_matrix.hpp"

#include <sstream>

#include "chow/errors.hpp"

namespace chow {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Int>& diag) {
  IntMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<std::vector<Int>> conv;
  conv.reserve(rows.size());
  for (const auto& r : rows) conv.emplace_back(r.begin(), r.end());
  return from_rows(conv);
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c)
      fail(ErrorCode::ShapeMismatch, "from_rows: ragged row lengths");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

bool IntMatrix::is_zero() const {
  for (const Int& e : entries_)
    if (e != 0) return false;
  return true;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_)
    fail(ErrorCode::ShapeMismatch, "matrix product: inner dimensions differ");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix out = *this;
  for (Int& e : out.entries_) e = -e;
  return out;
}

std::vector<Int> IntMatrix::column(std::size_t j) const {
  std::vector<Int> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& v) const {
  if (v.size() != cols_)
    fail(ErrorCode::ShapeMismatch, "apply: vector length != cols");
  std::vector<Int> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

IntMatrix IntMatrix::hstack(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_)
    fail(ErrorCode::ShapeMismatch, "hstack: row counts differ");
  IntMatrix out(rows_, cols_ + rhs.cols_);
  out.set_block(0, 0, *this);
  out.set_block(0, cols_, rhs);
  return out;
}

IntMatrix IntMatrix::vstack(const IntMatrix& rhs) const {
  if (cols_ != rhs.cols_)
    fail(ErrorCode::ShapeMismatch, "vstack: column counts differ");
  IntMatrix out(rows_ + rhs.rows_, cols_);
  out.set_block(0, 0, *this);
  out.set_block(rows_, 0, rhs);
  return out;
}

IntMatrix IntMatrix::slice_cols(std::size_t first, std::size_t count) const {
  if (first + count > cols_)
    fail(ErrorCode::ShapeMismatch, "slice_cols: range out of bounds");
  IntMatrix out(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
  return out;
}

IntMatrix IntMatrix::slice_rows(std::size_t first, std::size_t count) const {
  if (first + count > rows_)
    fail(ErrorCode::ShapeMismatch, "slice_rows: range out of bounds");
  IntMatrix out(count, cols_);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(first + i, j);
  return out;
}

void IntMatrix::set_block(std::size_t r0, std::size_t c0, const IntMatrix& block) {
  if (r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_)
    fail(ErrorCode::ShapeMismatch, "set_block: block exceeds matrix bounds");
  for (std::size_t i = 0; i < block.rows_; ++i)
    for (std::size_t j = 0; j < block.cols_; ++j)
      (*this)(r0 + i, c0 + j) = block(i, j);
}

Int IntMatrix::determinant() const {
  if (!is_square()) fail(ErrorCode::ShapeMismatch, "determinant: matrix not square");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix a = *this;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t pivot = k;
      while (pivot < n && a(pivot, k) == 0) ++pivot;
      if (pivot == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

bool IntMatrix::is_unimodular() const {
  if (!is_square()) return false;
  const Int d = determinant();
  return d == 1 || d == -1;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << rows_ << "x" << cols_ << " [";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i == 0 ? "[" : " [");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace chow
