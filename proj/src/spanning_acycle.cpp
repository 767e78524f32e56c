#include "acycle/spanning_acycle.hpp"

#include <algorithm>
#include <numeric>

#include "acycle/random.hpp"

namespace acycle {

namespace {

// Lex-successor of a sorted k-subset of {0..n-1}; false after the last one.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

mpz_class binomial_mpz(std::size_t n, std::size_t k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

std::vector<std::size_t> indices_of(const SimplicialComplex& x, const std::vector<Simplex>& s, int k) {
  std::vector<std::size_t> idx;
  idx.reserve(s.size());
  for (const auto& sigma : s) {
    if (sigma.dim() != k) throw ComplexError("simplex of the wrong dimension in acycle candidate");
    auto i = x.index_of(sigma);
    if (!i) throw ComplexError("candidate simplex is not in the complex");
    idx.push_back(*i);
  }
  auto sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ComplexError("duplicate simplex in acycle candidate");
  return idx;
}

// gamma_k via dim ker d_{k-1}: f_{k-1} - rank d_{k-1}, and 1 in degree 0.
template <class F>
std::size_t gamma_fast(const SimplicialComplex& x, int k) {
  if (k == 0) return 1;
  return x.f(k - 1) - boundary_rank<F>(x, k - 1);
}

// Greedy basis of the degree-k boundary columns in event order. Throws
// PreconditionError when the basis falls short of gamma_k, which happens
// exactly when beta_{k-1}(X^(k)) != 0.
template <class F>
SpanningAcycleResult greedy_acycle(const Filtration& f, int k) {
  const auto& x = f.complex();
  SpanningAcycleResult r;
  r.degree = k;
  r.gamma = gamma_fast<F>(x, k);
  RankOracle<F> oracle(reduced_boundary_rows(x, k), r.gamma);
  for (const auto& e : filtration_events(f, k)) {
    if (e.dim != k) continue;
    if (oracle.try_add(convert_column<F>(boundary_column(x, k, e.index)))) {
      r.simplices.push_back(x.simplices(k)[e.index]);
      r.weight += *e.time;
      if (oracle.saturated()) break;
    }
  }
  if (r.simplices.size() != r.gamma) {
    auto beta = static_cast<std::int64_t>(r.gamma - r.simplices.size());
    throw PreconditionError("beta_" + std::to_string(k - 1) + "(X^(" + std::to_string(k) + ")) = " +
                                std::to_string(beta) + ", expected 0",
                            k - 1, beta);
  }
  return r;
}

template <class F>
void check_lower_hypothesis(const SimplicialComplex& x, int d) {
  if (d < 2) return;
  auto b = betti<F>(x.skeleton(d - 1), d - 2);
  if (b != 0)
    throw PreconditionError("beta_" + std::to_string(d - 2) + "(X^(" + std::to_string(d - 1) + ")) = " +
                                std::to_string(b) + ", expected 0",
                            d - 2, b);
}

void require_degree(const SimplicialComplex& x, int d, int lo) {
  if (d < lo || d > x.dim())
    throw std::domain_error("degree " + std::to_string(d) + " outside [" + std::to_string(lo) + ", dim X]");
}

// Boundary of an arbitrary d-simplex with rows indexed by the (d-1)-simplices
// of y; every facet must be present.
SparseColumn<Integer> boundary_in(const SimplicialComplex& y, const Simplex& s) {
  SparseColumn<Integer> col;
  for (std::size_t j = 0; j < s.size(); ++j) {
    auto i = y.index_of(s.facet(j));
    if (!i) throw ComplexError("facet missing from the complex");
    col.push_back({static_cast<std::uint32_t>(*i), (j % 2) ? std::int64_t(-1) : std::int64_t(1)});
  }
  std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.row < b.row; });
  return col;
}

SparseColumnMatrix<Integer> columns_of(const SimplicialComplex& x, int k, const std::vector<std::size_t>& idx) {
  SparseColumnMatrix<Integer> m(reduced_boundary_rows(x, k));
  for (auto i : idx) m.push_back(boundary_column(x, k, i));
  return m;
}

}  // namespace

template <class F>
std::size_t boundary_rank(const SimplicialComplex& x, int k) {
  if (k < 0 || k > x.dim()) return 0;
  const std::size_t rows = reduced_boundary_rows(x, k);
  RankOracle<F> oracle(rows, std::min(rows, x.f(k)));
  for (std::size_t i = 0; i < x.f(k) && !oracle.saturated(); ++i)
    oracle.try_add(convert_column<F>(boundary_column(x, k, i)));
  return oracle.accepted();
}

template <class F>
std::int64_t betti(const SimplicialComplex& x, int k) {
  if (k < 0 || k > x.dim()) return 0;
  return static_cast<std::int64_t>(x.f(k)) - static_cast<std::int64_t>(boundary_rank<F>(x, k)) -
         static_cast<std::int64_t>(boundary_rank<F>(x, k + 1));
}

std::int64_t gamma_closed_form(const SimplicialComplex& x, int k) {
  std::int64_t s = 0;
  for (int j = 0; j < k; ++j) s += (j % 2 ? -1 : 1) * static_cast<std::int64_t>(x.f(j));
  return (k % 2 ? -1 : 1) * (1 - s);
}

template <class F>
std::size_t gamma(const SimplicialComplex& x, int k) {
  require_degree(x, k, 0);
  auto sk = x.skeleton(k);
  auto value = static_cast<std::int64_t>(sk.f(k)) - betti<F>(sk, k) + betti<F>(sk, k - 1);
  bool lower_acyclic = true;
  for (int j = 1; j < k && lower_acyclic; ++j) lower_acyclic = betti<F>(x.skeleton(j), j - 1) == 0;
  if (lower_acyclic && gamma_closed_form(x, k) != value)
    throw std::logic_error("gamma: closed form disagrees with the rank computation");
  return static_cast<std::size_t>(value);
}

bool is_spanning_acycle(const SimplicialComplex& x, const std::vector<Simplex>& s, int k) {
  require_degree(x, k, 0);
  auto idx = indices_of(x, s, k);
  if (idx.size() != gamma_fast<Rational>(x, k)) return false;
  return rational_rank(columns_of(x, k, idx)) == idx.size();
}

nlohmann::json to_json(const SpanningAcycleResult& r) {
  nlohmann::json simplices = nlohmann::json::array();
  for (const auto& s : r.simplices) simplices.push_back(std::vector<Vertex>(s.vertices().begin(), s.vertices().end()));
  return {{"degree", r.degree},
          {"gamma", r.gamma},
          {"simplices", simplices},
          {"weight", format_time(r.weight)},
          {"weight_decimal", r.weight.get_d()},
          {"certified", r.certified}};
}

template <class F>
void check_lifetime_hypotheses(const SimplicialComplex& x, int d) {
  require_degree(x, d, 1);
  check_lower_hypothesis<F>(x, d);
  auto b = betti<F>(x.skeleton(d), d - 1);
  if (b != 0)
    throw PreconditionError("beta_" + std::to_string(d - 1) + "(X^(" + std::to_string(d) + ")) = " +
                                std::to_string(b) + ", expected 0",
                            d - 1, b);
}

template <class F>
SpanningAcycleResult min_spanning_acycle(const Filtration& f, int d, bool certify) {
  require_degree(f.complex(), d, 0);
  check_lower_hypothesis<F>(f.complex(), d);
  auto r = greedy_acycle<F>(f, d);
  if (certify) {
    r.certified = is_spanning_acycle(f.complex(), r.simplices, d);
    if (!r.certified) throw StructuralError("greedy result fails the exact acycle check");
  }
  return r;
}

template <class F>
Time max_complement_weight(const Filtration& f, int d) {
  require_degree(f.complex(), d, 1);
  Time total = std::accumulate(f.births(d - 1).begin(), f.births(d - 1).end(), Time(0));
  return total - greedy_acycle<F>(f, d - 1).weight;
}

template <class F>
Time lifetime_via_msa(const Filtration& f, int d) {
  require_degree(f.complex(), d, 1);
  auto msa = min_spanning_acycle<F>(f, d, false);
  return msa.weight - max_complement_weight<F>(f, d);
}

std::optional<mpz_class> homology_order(const SimplicialComplex& y, int j) {
  if (j < 0 || j > y.dim()) return mpz_class(1);
  if (betti<Rational>(y, j) != 0) return std::nullopt;
  if (j + 1 > y.dim()) return mpz_class(1);
  return smith_normal_form(reduced_boundary(y, j + 1)).product();
}

SimplicialComplex acycle_subcomplex(const SimplicialComplex& x, const std::vector<Simplex>& s, int k) {
  require_degree(x, k, 0);
  indices_of(x, s, k);
  std::vector<Simplex> all;
  for (int j = 0; j < k; ++j) all.insert(all.end(), x.simplices(j).begin(), x.simplices(j).end());
  all.insert(all.end(), s.begin(), s.end());
  return SimplicialComplex(x.n_vertices(), std::move(all));
}

mpz_class torsion_order(const SimplicialComplex& x, const std::vector<Simplex>& s, int k) {
  if (!is_spanning_acycle(x, s, k)) throw std::invalid_argument("torsion_order: not a spanning acycle");
  if (k == 0) return 1;
  auto idx = indices_of(x, s, k);
  return smith_normal_form(columns_of(x, k, idx)).product();
}

KalaiResult kalai_sum(std::size_t n, int d, std::uint64_t cap) {
  if (d < 1 || n < 2 || static_cast<std::size_t>(d) > n - 1)
    throw std::domain_error("kalai_sum: need 1 <= d <= n-1");
  auto x = build_skeleton(n, d);
  const std::size_t g = binomial(n - 1, static_cast<std::uint64_t>(d));
  const std::size_t fd = x.f(d);
  mpz_class candidates = binomial_mpz(fd, g);
  if (candidates > mpz_class(static_cast<unsigned long>(cap)))
    throw EnumerationCapError("kalai_sum: " + candidates.get_str() + " candidate subsets exceed the cap",
                              candidates);
  auto full = boundary_matrix(x, d).matrix;
  KalaiResult r;
  r.expected = 1;
  mpz_pow_ui(r.expected.get_mpz_t(), mpz_class(static_cast<unsigned long>(n)).get_mpz_t(),
             binomial(n - 2, static_cast<std::uint64_t>(d)));
  r.candidates = candidates.get_ui();
  std::vector<std::size_t> c(g);
  std::iota(c.begin(), c.end(), 0);
  do {
    auto sub = full.select_columns(c);
    if (rational_rank(sub) != g) continue;
    auto order = smith_normal_form(sub).product();
    ++r.acycles;
    ++r.torsion_counts[order];
    r.sum += order * order;
  } while (next_combination(c, fd));
  return r;
}

DetExpansionReport det_expansion_check(const SimplicialComplex& x, int d, const std::vector<Simplex>& k_rows,
                                       std::vector<mpq_class> x_weights, std::vector<mpq_class> y_weights,
                                       std::uint64_t cap) {
  require_degree(x, d, 1);
  // GMP arithmetic assumes canonical operands.
  for (auto* w : {&x_weights, &y_weights})
    for (auto& v : *w) v.canonicalize();
  if (x_weights.size() != x.f(d - 1) || y_weights.size() != x.f(d))
    throw std::invalid_argument("det_expansion_check: weight vector size mismatch");
  const std::size_t g = gamma<Rational>(x, d);
  if (k_rows.size() != g)
    throw std::invalid_argument("det_expansion_check: |K| = " + std::to_string(k_rows.size()) +
                                " but gamma_d = " + std::to_string(g));
  auto kidx = indices_of(x, k_rows, d - 1);
  std::sort(kidx.begin(), kidx.end());

  DetExpansionReport rep;
  const std::size_t fd = x.f(d);
  mpz_class candidates = binomial_mpz(fd, g);
  if (candidates > mpz_class(static_cast<unsigned long>(cap)))
    throw EnumerationCapError("det_expansion_check: " + candidates.get_str() + " subsets exceed the cap",
                              candidates);

  auto full = boundary_matrix(x, d).matrix;
  auto dk = full.select_rows(kidx);

  // LHS: det(A_K A_K^T), A_K = diag(x_K) d_K diag(y).
  DenseMatrix<mpq_class> a(g, fd);
  for (std::size_t j = 0; j < fd; ++j)
    for (const auto& e : dk.column(j)) a(e.row, j) = x_weights[kidx[e.row]] * mpq_class(e.value) * y_weights[j];
  DenseMatrix<mpq_class> aat(g, g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t k = 0; k < g; ++k) {
      mpq_class s = 0;
      for (std::size_t j = 0; j < fd; ++j) s += a(i, j) * a(k, j);
      aat(i, k) = s;
    }
  rep.lhs = bareiss_determinant(aat);

  mpq_class xk2 = 1;
  for (auto i : kidx) xk2 *= x_weights[i] * x_weights[i];

  std::vector<Simplex> complement;
  for (std::size_t i = 0, p = 0; i < x.f(d - 1); ++i) {
    if (p < kidx.size() && kidx[p] == i) {
      ++p;
      continue;
    }
    complement.push_back(x.simplices(d - 1)[i]);
  }
  rep.complement_is_acycle = is_spanning_acycle(x, complement, d - 1);
  std::optional<mpz_class> h_l;
  if (rep.complement_is_acycle) {
    h_l = homology_order(acycle_subcomplex(x, complement, d - 1), d - 2);
    rep.homology_formula_checked = true;
  } else {
    rep.failure = "X_{d-1} minus K is not a spanning (d-1)-acycle";
  }

  std::vector<std::size_t> c(g);
  std::iota(c.begin(), c.end(), 0);
  do {
    ++rep.terms;
    mpz_class det = determinant(dk.select_columns(c));
    mpq_class ys2 = 1;
    for (auto j : c) ys2 *= y_weights[j] * y_weights[j];
    mpq_class term = mpq_class(det * det) * xk2 * ys2;
    rep.binet_cauchy += term;
    bool acyclic = rational_rank(full.select_columns(c)) == g;
    if (acyclic) {
      rep.rhs += term;
    } else if (det != 0) {
      rep.nonzero_only_on_acycles = false;
      if (rep.failure.empty()) rep.failure = "nonzero minor on a non-acycle";
    }
    if (det != 0) ++rep.acycle_terms;
    if (acyclic && h_l) {
      std::vector<Simplex> s;
      for (auto j : c) s.push_back(x.simplices(d)[j]);
      auto xs = acycle_subcomplex(x, s, d);
      auto h_top = homology_order(xs, d - 1);
      auto h_low = homology_order(xs, d - 2);
      if (!h_top || !h_low || mpz_class(abs(det)) * *h_low != *h_top * *h_l) {
        rep.homology_formula_holds = false;
        if (rep.failure.empty()) rep.failure = "minor disagrees with the homology orders";
      }
    }
  } while (next_combination(c, fd));
  rep.equal = rep.lhs == rep.rhs;
  return rep;
}

template <class F>
ShadowPartition shadow(const SimplicialComplex& y, int d) {
  const std::size_t n = y.n_vertices();
  if (d < 1 || static_cast<std::size_t>(d) > n - 1) throw std::domain_error("shadow: need 1 <= d <= n-1");
  if (y.f(d - 1) != binomial(n, static_cast<std::uint64_t>(d)))
    throw ComplexError("shadow: Y lacks the complete (d-1)-skeleton");
  RankOracle<F> oracle(y.f(d - 1));
  for (std::size_t i = 0; i < y.f(d); ++i) oracle.try_add(convert_column<F>(boundary_column(y, d, i)));
  ShadowPartition p;
  p.degree = d;
  std::vector<std::size_t> c(static_cast<std::size_t>(d) + 1);
  std::iota(c.begin(), c.end(), 0);
  std::uint64_t r = 0;
  do {
    Simplex s(std::vector<Vertex>(c.begin(), c.end()));
    bool adds = oracle.independent(convert_column<F>(boundary_in(y, s)));
    (adds ? p.adders : p.shadow_side).push_back(r++);
  } while (next_combination(c, n));
  return p;
}

SimplicialComplex hull(const SimplicialComplex& y, const ShadowPartition& p) {
  std::vector<Simplex> all;
  for (int k = 0; k <= y.dim(); ++k) all.insert(all.end(), y.simplices(k).begin(), y.simplices(k).end());
  for (auto r : p.shadow_side) {
    auto s = unrank_simplex(y.n_vertices(), p.degree, r);
    if (!y.contains(s)) all.push_back(std::move(s));
  }
  return SimplicialComplex(y.n_vertices(), std::move(all));
}

template <class F>
RankBoundReport rank_bound_check(const SimplicialComplex& y, int d) {
  auto p = shadow<F>(y, d);
  RankBoundReport r;
  const auto n = y.n_vertices();
  r.rank = boundary_rank<F>(y, d);
  r.faces = y.f(d);
  r.beta = betti<F>(y, d - 1);
  r.adders = p.adders.size();
  r.rank_bound = r.rank * n >= static_cast<std::size_t>(d + 1) * r.faces;
  r.betti_bound = r.beta * static_cast<std::int64_t>(n) <= static_cast<std::int64_t>((d + 1) * r.adders);
  return r;
}

#define ACYCLE_INSTANTIATE(F)                                                                  \
  template std::size_t boundary_rank<F>(const SimplicialComplex&, int);                        \
  template std::int64_t betti<F>(const SimplicialComplex&, int);                               \
  template std::size_t gamma<F>(const SimplicialComplex&, int);                                \
  template void check_lifetime_hypotheses<F>(const SimplicialComplex&, int);                   \
  template SpanningAcycleResult min_spanning_acycle<F>(const Filtration&, int, bool);          \
  template Time max_complement_weight<F>(const Filtration&, int);                              \
  template Time lifetime_via_msa<F>(const Filtration&, int);                                   \
  template ShadowPartition shadow<F>(const SimplicialComplex&, int);                           \
  template RankBoundReport rank_bound_check<F>(const SimplicialComplex&, int);

ACYCLE_INSTANTIATE(Rational)
ACYCLE_INSTANTIATE(ModP)
ACYCLE_INSTANTIATE(ModP2)

}  // namespace acycle
