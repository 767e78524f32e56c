#include "acycle/sparse.hpp"

#include <cstdlib>

namespace acycle {
namespace {

struct Overflow {};

// Checked 64-bit helpers; the GMP overloads never fail.
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t magnitude(std::int64_t a) {
  if (a == INT64_MIN) throw Overflow{};
  return a < 0 ? -a : a;
}
inline bool is_zero(std::int64_t a) { return a == 0; }

inline mpz_class mul(const mpz_class& a, const mpz_class& b) { return a * b; }
inline mpz_class sub(const mpz_class& a, const mpz_class& b) { return a - b; }
inline mpz_class add(const mpz_class& a, const mpz_class& b) { return a + b; }
inline mpz_class magnitude(const mpz_class& a) { return abs(a); }
inline bool is_zero(const mpz_class& a) { return sgn(a) == 0; }

inline mpz_class to_mpz(std::int64_t a) {
  mpz_class z;
  mpz_set_si(z.get_mpz_t(), static_cast<long>(a));
  return z;
}

template <class T>
std::size_t bareiss_rank(DenseMatrix<T> a) {
  const std::size_t m = a.rows(), n = a.cols();
  T prev(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && is_zero(a(p, c))) ++p;
    if (p == m) continue;
    a.swap_rows(r, p);
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) a(i, j) = sub(mul(a(i, j), a(r, c)), mul(a(i, c), a(r, j))) / prev;
      a(i, c) = T(0);
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

// Elimination with minimal-magnitude pivoting. Produces d_1 | ... | d_r.
template <class T>
std::vector<T> smith_divisors(DenseMatrix<T> a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<T> divisors;
  for (std::size_t r = 0; r < std::min(m, n); ++r) {
    auto place_min_pivot = [&](bool whole_block) {
      std::size_t bi = m, bj = n;
      T best(0);
      for (std::size_t i = r; i < m; ++i)
        for (std::size_t j = r; j < n; ++j) {
          if (!whole_block && i != r && j != r) continue;
          if (is_zero(a(i, j))) continue;
          T mag = magnitude(a(i, j));
          if (bi == m || mag < best) {
            best = mag;
            bi = i;
            bj = j;
          }
        }
      if (bi == m) return false;
      a.swap_rows(r, bi);
      a.swap_cols(r, bj);
      return true;
    };
    if (!place_min_pivot(true)) break;
    for (;;) {
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (is_zero(a(i, r))) continue;
        T q = a(i, r) / a(r, r);
        for (std::size_t j = r; j < n; ++j) a(i, j) = sub(a(i, j), mul(q, a(r, j)));
        if (!is_zero(a(i, r))) clean = false;
      }
      for (std::size_t j = r + 1; j < n; ++j) {
        if (is_zero(a(r, j))) continue;
        T q = a(r, j) / a(r, r);
        for (std::size_t i = r; i < m; ++i) a(i, j) = sub(a(i, j), mul(q, a(i, r)));
        if (!is_zero(a(r, j))) clean = false;
      }
      if (!clean) {
        place_min_pivot(false);
        continue;
      }
      // Row r and column r are clear; enforce divisibility of the rest.
      std::size_t bad = m;
      for (std::size_t i = r + 1; i < m && bad == m; ++i)
        for (std::size_t j = r + 1; j < n; ++j)
          if (!is_zero(a(i, j) % a(r, r))) {
            bad = i;
            break;
          }
      if (bad == m) break;
      for (std::size_t j = r; j < n; ++j) a(r, j) = add(a(r, j), a(bad, j));
    }
    divisors.push_back(magnitude(a(r, r)));
  }
  return divisors;
}

DenseMatrix<mpz_class> widen(const DenseMatrix<std::int64_t>& a) {
  DenseMatrix<mpz_class> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = to_mpz(a(i, j));
  return out;
}

}  // namespace

std::size_t rational_rank(const SparseColumnMatrix<Integer>& m) {
  auto dense = to_dense<std::int64_t>(m);
  try {
    return bareiss_rank(dense);
  } catch (const Overflow&) {
    return bareiss_rank(widen(dense));
  }
}

mpz_class determinant(const SparseColumnMatrix<Integer>& m) {
  if (m.rows() != m.cols()) throw std::domain_error("determinant: matrix is not square");
  return bareiss_determinant(widen(to_dense<std::int64_t>(m)));
}

mpq_class determinant(const SparseColumnMatrix<Rational>& m) {
  if (m.rows() != m.cols()) throw std::domain_error("determinant: matrix is not square");
  return bareiss_determinant(to_dense<mpq_class>(m));
}

mpz_class SmithForm::product() const {
  mpz_class p = 1;
  for (const auto& d : divisors) p *= d;
  return p;
}

SmithForm smith_normal_form(const DenseMatrix<mpz_class>& m) { return {smith_divisors(m)}; }

SmithForm smith_normal_form(const SparseColumnMatrix<Integer>& m) {
  auto dense = to_dense<std::int64_t>(m);
  try {
    SmithForm out;
    for (auto d : smith_divisors(dense)) out.divisors.push_back(to_mpz(d));
    return out;
  } catch (const Overflow&) {
    return smith_normal_form(widen(dense));
  }
}

}  // namespace acycle
