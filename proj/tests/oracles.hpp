#pragma once

// Independent reference implementations for the tests. Nothing here goes
// through the library's boundary construction or reduction code.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Face = std::vector<int>;
using Dense = std::vector<std::vector<mpq_class>>;

// Plain Gauss-Jordan over Q.
inline std::size_t rank_q(Dense a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      mpq_class f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

inline std::size_t rank_mod(std::vector<std::vector<std::int64_t>> a, std::int64_t p) {
  if (a.empty()) return 0;
  auto pw = [p](std::int64_t b, std::int64_t e) {
    __int128 r = 1, x = ((b % p) + p) % p;
    for (; e; e >>= 1, x = x * x % p)
      if (e & 1) r = r * x % p;
    return static_cast<std::int64_t>(r);
  };
  for (auto& row : a)
    for (auto& v : row) v = ((v % p) + p) % p;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t q = r;
    while (q < rows && a[q][c] == 0) ++q;
    if (q == rows) continue;
    std::swap(a[q], a[r]);
    std::int64_t inv = pw(a[r][c], p - 2);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (!a[i][c]) continue;
      std::int64_t f = static_cast<std::int64_t>(static_cast<__int128>(a[i][c]) * inv % p);
      for (std::size_t j = c; j < cols; ++j)
        a[i][j] = static_cast<std::int64_t>(((a[i][j] - static_cast<__int128>(f) * a[r][j]) % p + p) % p);
    }
    ++r;
  }
  return r;
}

// Cofactor expansion along the first row.
inline mpq_class det_laplace(const Dense& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  mpq_class s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j] == 0) continue;
    Dense minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<mpq_class> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    mpq_class c = a[0][j] * det_laplace(minor);
    s += (j % 2) ? mpq_class(-c) : c;
  }
  return s;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  subsets(n, k, 0, cur, out);
  return out;
}

// Determinant divisors D_k = gcd of all k x k minors; elementary divisors
// are D_k / D_{k-1}. Exhaustive, so only for tiny matrices.
inline std::vector<mpz_class> elementary_divisors_by_minors(const std::vector<std::vector<long>>& m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<mpz_class> out;
  mpz_class prev = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    mpz_class g = 0;
    for (const auto& rs : subsets(rows, k))
      for (const auto& cs : subsets(cols, k)) {
        Dense sub;
        for (auto i : rs) {
          std::vector<mpq_class> row;
          for (auto j : cs) row.push_back(m[i][j]);
          sub.push_back(row);
        }
        mpz_class det = det_laplace(sub).get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

// All faces of a list of generating simplices, by dimension.
inline std::vector<std::set<Face>> close(const std::vector<Face>& gens, int n) {
  std::vector<std::set<Face>> by_dim(1);
  for (int v = 0; v < n; ++v) by_dim[0].insert({v});
  for (const auto& g : gens) {
    const std::size_t k = g.size();
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      Face f;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (1u << i)) f.push_back(g[i]);
      if (by_dim.size() < f.size()) by_dim.resize(f.size());
      by_dim[f.size() - 1].insert(f);
    }
  }
  return by_dim;
}

// Augmented boundary matrix (dense) built from scratch: rows = (k-1)-faces.
inline Dense boundary_dense(const std::vector<std::set<Face>>& cx, int k) {
  if (k == 0) return Dense(1, std::vector<mpq_class>(cx[0].size(), 1));
  std::map<Face, std::size_t> row;
  for (const auto& f : cx[k - 1]) row.emplace(f, row.size());
  Dense a(cx[k - 1].size(), std::vector<mpq_class>(cx[k].size(), 0));
  std::size_t c = 0;
  for (const auto& s : cx[k]) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      Face f = s;
      f.erase(f.begin() + static_cast<long>(j));
      a[row.at(f)][c] = (j % 2) ? -1 : 1;
    }
    ++c;
  }
  return a;
}

// Reduced Betti number over Q.
inline long betti(const std::vector<std::set<Face>>& cx, int k) {
  if (k < 0 || k >= static_cast<int>(cx.size())) return 0;
  long f = static_cast<long>(cx[k].size());
  long r_k = static_cast<long>(rank_q(boundary_dense(cx, k)));
  long r_k1 = k + 1 < static_cast<int>(cx.size()) ? static_cast<long>(rank_q(boundary_dense(cx, k + 1))) : 0;
  return f - r_k - r_k1;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  bool unite(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

// Kruskal: sum of the minimum spanning forest weights of edges (u, v, w)
// on vertices born at 0. Also the degree-0 lifetime sum.
template <class W>
W kruskal(int n, std::vector<std::tuple<W, int, int>> edges) {
  std::sort(edges.begin(), edges.end());
  UnionFind uf(n);
  W total = 0;
  for (const auto& [w, u, v] : edges)
    if (uf.unite(u, v)) total += w;
  return total;
}

// The 6-vertex real projective plane.
inline std::vector<Face> rp2_triangles() {
  return {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5}, {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}};
}

}  // namespace oracle
