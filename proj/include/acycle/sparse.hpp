#pragma once

// Exact sparse column matrices, incremental rank oracle, determinants and
// the integer Smith normal form.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "acycle/field.hpp"

namespace acycle {

template <class D>
struct Entry {
  std::uint32_t row;
  typename D::value_type value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Column entries sorted by strictly increasing row, all nonzero.
template <class D>
using SparseColumn = std::vector<Entry<D>>;

template <class D>
class SparseColumnMatrix {
 public:
  using value_type = typename D::value_type;

  explicit SparseColumnMatrix(std::size_t rows = 0) : rows_(rows) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }

  const SparseColumn<D>& column(std::size_t j) const { return columns_[j]; }
  const std::vector<SparseColumn<D>>& columns() const { return columns_; }

  /// Appends a column after checking row bounds, order and nonzero entries.
  void push_back(SparseColumn<D> col) {
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (col[i].row >= rows_) throw std::out_of_range("sparse column: row index out of range");
      if (i > 0 && col[i].row <= col[i - 1].row)
        throw std::invalid_argument("sparse column: rows not strictly increasing");
      if (D::is_zero(col[i].value)) throw std::invalid_argument("sparse column: explicit zero");
    }
    columns_.push_back(std::move(col));
  }

  value_type at(std::size_t i, std::size_t j) const {
    for (const auto& e : columns_[j])
      if (e.row == i) return e.value;
    return value_type(0);
  }

  /// Submatrix on the given columns, in the given order.
  SparseColumnMatrix select_columns(std::span<const std::size_t> cols) const {
    SparseColumnMatrix out(rows_);
    out.columns_.reserve(cols.size());
    for (auto j : cols) out.columns_.push_back(columns_.at(j));
    return out;
  }

  /// Submatrix on the given rows (must be increasing); rows are renumbered
  /// 0..rows.size()-1.
  SparseColumnMatrix select_rows(std::span<const std::size_t> rows) const {
    std::vector<std::int64_t> remap(rows_, -1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i > 0 && rows[i] <= rows[i - 1]) throw std::invalid_argument("select_rows: rows must increase");
      remap.at(rows[i]) = static_cast<std::int64_t>(i);
    }
    SparseColumnMatrix out(rows.size());
    for (const auto& col : columns_) {
      SparseColumn<D> c;
      for (const auto& e : col)
        if (remap[e.row] >= 0) c.push_back({static_cast<std::uint32_t>(remap[e.row]), e.value});
      out.columns_.push_back(std::move(c));
    }
    return out;
  }

  friend bool operator==(const SparseColumnMatrix&, const SparseColumnMatrix&) = default;

 private:
  std::size_t rows_;
  std::vector<SparseColumn<D>> columns_;
};

/// Maps an integer column into a field.
template <class F>
SparseColumn<F> convert_column(const SparseColumn<Integer>& col) {
  SparseColumn<F> out;
  out.reserve(col.size());
  for (const auto& e : col) {
    auto v = F::from_int(e.value);
    if (!F::is_zero(v)) out.push_back({e.row, std::move(v)});
  }
  return out;
}

template <class F>
SparseColumnMatrix<F> convert(const SparseColumnMatrix<Integer>& m) {
  SparseColumnMatrix<F> out(m.rows());
  for (const auto& col : m.columns()) out.push_back(convert_column<F>(col));
  return out;
}

/// a <- a + factor * b by sorted merge. scratch is reused storage.
template <class F>
void add_scaled(SparseColumn<F>& a, const SparseColumn<F>& b, const typename F::value_type& factor,
                SparseColumn<F>& scratch) {
  scratch.clear();
  scratch.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].row < b[j].row)) {
      scratch.push_back(std::move(a[i++]));
    } else if (i == a.size() || b[j].row < a[i].row) {
      scratch.push_back({b[j].row, F::mul(factor, b[j].value)});
      ++j;
    } else {
      auto v = F::add(a[i].value, F::mul(factor, b[j].value));
      if (!F::is_zero(v)) scratch.push_back({a[i].row, std::move(v)});
      ++i;
      ++j;
    }
  }
  a.swap(scratch);
}

/// Incremental linear-independence test over a field. Keeps an echelon basis
/// keyed by lowest (largest-row) pivot; each accepted column is normalised
/// so that its pivot entry is 1.
template <class F>
class RankOracle {
 public:
  /// max_rank, when given, is a known upper bound on the rank of every
  /// column stream fed to the oracle; once reached, further columns are
  /// rejected without reduction.
  explicit RankOracle(std::size_t rows, std::optional<std::size_t> max_rank = std::nullopt)
      : pivot_(rows, -1), max_rank_(max_rank) {}

  std::size_t rows() const { return pivot_.size(); }
  std::size_t accepted() const { return basis_.size(); }
  bool saturated() const { return max_rank_ && basis_.size() >= *max_rank_; }

  /// Accepts the column iff it is independent of the accepted ones. State is
  /// unchanged on rejection.
  bool try_add(SparseColumn<F> col) {
    check(col);
    if (saturated()) return false;
    reduce(col);
    if (col.empty()) return false;
    auto inv = F::inv(col.back().value);
    for (auto& e : col) e.value = F::mul(e.value, inv);
    pivot_[col.back().row] = static_cast<std::int64_t>(basis_.size());
    basis_.push_back(std::move(col));
    return true;
  }

  /// Independence probe that never modifies the oracle.
  bool independent(SparseColumn<F> col) const {
    check(col);
    if (saturated()) return false;
    reduce(col);
    return !col.empty();
  }

  /// Reduces col against the accepted basis in place.
  void reduce(SparseColumn<F>& col) const {
    SparseColumn<F> scratch;
    while (!col.empty()) {
      auto p = pivot_[col.back().row];
      if (p < 0) break;
      auto factor = F::neg(col.back().value);
      add_scaled<F>(col, basis_[static_cast<std::size_t>(p)], factor, scratch);
    }
  }

 private:
  void check(const SparseColumn<F>& col) const {
    if (!col.empty() && col.back().row >= pivot_.size())
      throw std::out_of_range("RankOracle: column dimension mismatch");
  }

  std::vector<SparseColumn<F>> basis_;
  std::vector<std::int64_t> pivot_;
  std::optional<std::size_t> max_rank_;
};

/// Rank over the field F.
template <class F>
std::size_t rank(const SparseColumnMatrix<F>& m) {
  RankOracle<F> oracle(m.rows(), std::min(m.rows(), m.cols()));
  for (const auto& col : m.columns()) oracle.try_add(col);
  return oracle.accepted();
}

/// Exact rank over the rationals of an integer matrix. Fraction-free
/// elimination in 64-bit arithmetic, redone with GMP integers on overflow.
std::size_t rational_rank(const SparseColumnMatrix<Integer>& m);

/// Dense row-major matrix used by the determinant and Smith form routines.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

 private:
  std::size_t rows_, cols_;
  std::vector<T> data_;
};

template <class T, class D>
DenseMatrix<T> to_dense(const SparseColumnMatrix<D>& m) {
  DenseMatrix<T> out(m.rows(), m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& e : m.column(j)) out(e.row, j) = T(e.value);
  return out;
}

/// Bareiss fraction-free determinant; every division is exact. Works for
/// mpz_class and mpq_class.
template <class T>
T bareiss_determinant(DenseMatrix<T> a) {
  if (a.rows() != a.cols()) throw std::domain_error("determinant: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return T(1);
  T prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t r = k + 1;
      while (r < n && sgn(a(r, k)) == 0) ++r;
      if (r == n) return T(0);
      a.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  T det = a(n - 1, n - 1);
  return sign < 0 ? T(-det) : det;
}

/// Exact determinant of a square integer matrix.
mpz_class determinant(const SparseColumnMatrix<Integer>& m);
/// Exact determinant of a square rational matrix.
mpq_class determinant(const SparseColumnMatrix<Rational>& m);

/// Elementary divisors d_1 | d_2 | ... | d_r of an integer matrix, r = rank.
struct SmithForm {
  std::vector<mpz_class> divisors;
  std::size_t rank() const { return divisors.size(); }
  /// Product of all divisors; the torsion order of the cokernel.
  mpz_class product() const;
};

SmithForm smith_normal_form(const SparseColumnMatrix<Integer>& m);
SmithForm smith_normal_form(const DenseMatrix<mpz_class>& m);

}  // namespace acycle
