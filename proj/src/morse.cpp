#include "acycle/morse.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace acycle {

std::size_t AcyclicMatching::pairs() const {
  std::size_t c = 0;
  for (auto u : up) c += u >= 0;
  return c;
}

namespace {

AcyclicMatching empty_matching(const SimplicialComplex& x, int d) {
  if (d < 1 || d > x.dim() + 1) throw std::domain_error("matching degree outside [1, dim X + 1]");
  AcyclicMatching m;
  m.degree = d;
  m.up.assign(x.f(d - 1), -1);
  m.down.assign(x.f(d), -1);
  m.f_vector = x.f_vector();
  return m;
}

}  // namespace

AcyclicMatching lex_matching(const SimplicialComplex& x, int d) {
  auto m = empty_matching(x, d);
  const auto& lower = x.simplices(d - 1);
  for (std::size_t i = 0; i < lower.size(); ++i) {
    for (Vertex v = lower[i].back() + 1; v < x.n_vertices(); ++v) {
      auto j = x.index_of(lower[i].with_vertex(v));
      if (!j) continue;
      // s is tau minus its last vertex, so no two s compete for one tau.
      m.up[i] = static_cast<std::int64_t>(*j);
      m.down[*j] = static_cast<std::int64_t>(i);
      break;
    }
  }
  return m;
}

AcyclicMatching make_matching(const SimplicialComplex& x, int d,
                              const std::vector<std::pair<Simplex, Simplex>>& pairs) {
  auto m = empty_matching(x, d);
  for (const auto& [s, t] : pairs) {
    auto i = x.index_of(s), j = x.index_of(t);
    if (!i || !j || s.dim() != d - 1 || t.dim() != d || !t.contains(s))
      throw ComplexError("matching pair is not a facet/coface pair of the complex");
    if (m.up[*i] >= 0 || m.down[*j] >= 0) throw ComplexError("simplex matched twice");
    m.up[*i] = static_cast<std::int64_t>(*j);
    m.down[*j] = static_cast<std::int64_t>(*i);
  }
  return m;
}

std::size_t critical_count(const AcyclicMatching& m, int k) {
  if (k < 0 || static_cast<std::size_t>(k) >= m.f_vector.size()) return 0;
  const std::size_t f = m.f_vector[k];
  if (k == m.degree - 1 || k == m.degree) return f - m.pairs();
  return f;
}

bool verify_acyclic(const SimplicialComplex& x, const AcyclicMatching& m) {
  const int d = m.degree;
  if (d < 1 || m.up.size() != x.f(d - 1) || m.down.size() != x.f(d))
    throw ComplexError("matching does not fit the complex");
  for (std::size_t i = 0; i < m.up.size(); ++i) {
    auto j = m.up[i];
    if (j < 0) continue;
    if (static_cast<std::size_t>(j) >= m.down.size() || m.down[j] != static_cast<std::int64_t>(i) ||
        !x.simplices(d)[j].contains(x.simplices(d - 1)[i]))
      throw ComplexError("malformed matching");
  }
  for (std::size_t j = 0; j < m.down.size(); ++j)
    if (m.down[j] >= 0 && m.up.at(m.down[j]) != static_cast<std::int64_t>(j)) throw ComplexError("malformed matching");

  // Edge Q' -> Q whenever Q' != Q is a facet of phi(Q); acyclic iff Kahn
  // consumes every matched simplex.
  std::vector<std::vector<std::size_t>> out(m.up.size());
  std::vector<std::size_t> indeg(m.up.size(), 0);
  std::size_t matched = 0;
  for (std::size_t q = 0; q < m.up.size(); ++q) {
    if (m.up[q] < 0) continue;
    ++matched;
    const auto& tau = x.simplices(d)[m.up[q]];
    for (std::size_t k = 0; k < tau.size(); ++k) {
      auto p = *x.index_of(tau.facet(k));
      if (p == q || m.up[p] < 0) continue;
      out[p].push_back(q);
      ++indeg[q];
    }
  }
  std::deque<std::size_t> ready;
  for (std::size_t q = 0; q < m.up.size(); ++q)
    if (m.up[q] >= 0 && indeg[q] == 0) ready.push_back(q);
  std::size_t seen = 0;
  while (!ready.empty()) {
    auto q = ready.front();
    ready.pop_front();
    ++seen;
    for (auto r : out[q])
      if (--indeg[r] == 0) ready.push_back(r);
  }
  return seen == matched;
}

ExpectedCritical expected_critical(std::size_t n, int d, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("expected_critical: t outside [0, 1]");
  if (d < 1 || static_cast<std::size_t>(d) > n) throw std::domain_error("expected_critical: need 1 <= d <= n");
  const double pairs_d = d * (d - 1) / 2.0;
  const double present = std::pow(t, pairs_d);
  const double blocked = 1.0 - std::pow(t, d);
  ExpectedCritical e{0.0, 0.0};
  for (std::size_t j = static_cast<std::size_t>(d); j <= n; ++j) {
    double c = std::exp(std::lgamma(double(j)) - std::lgamma(double(d)) - std::lgamma(double(j - d + 1)));
    e.sum += std::round(c) * present * std::pow(blocked, double(n - j));
  }
  double cn = std::exp(std::lgamma(double(n + 1)) - std::lgamma(double(d)) - std::lgamma(double(n - d + 2)));
  e.bound = std::round(cn) * std::pow(t, pairs_d - d);
  return e;
}

}  // namespace acycle
