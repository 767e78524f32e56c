#pragma once

// The lexicographic (d-1, d) acyclic matching and critical-simplex counts.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "acycle/complex.hpp"

namespace acycle {

/// Partial matching phi: Q -> K between (d-1)- and d-simplices. Simplices
/// of every other dimension are critical.
struct AcyclicMatching {
  int degree = 1;                   ///< d
  std::vector<std::int64_t> up;    ///< X_{d-1} index -> X_d index, or -1
  std::vector<std::int64_t> down;  ///< X_d index -> X_{d-1} index, or -1
  std::vector<std::size_t> f_vector;

  std::size_t pairs() const;
};

/// Pairs each (d-1)-simplex s with the lex-minimal d-coface t with s <_lex t,
/// i.e. s + {v} for the smallest vertex v > max(s) that keeps it in X.
/// Requires 1 <= d <= dim X + 1.
AcyclicMatching lex_matching(const SimplicialComplex& x, int d);

/// Builds a matching from explicit pairs; throws ComplexError when a pair
/// is not a facet/coface pair of X or a simplex is used twice.
AcyclicMatching make_matching(const SimplicialComplex& x, int d,
                              const std::vector<std::pair<Simplex, Simplex>>& pairs);

/// Number of critical k-simplices.
std::size_t critical_count(const AcyclicMatching& m, int k);

/// Topological sort of the relation Q' < Q iff Q' is a face of phi(Q).
/// Throws ComplexError if m does not fit X or is not a matching.
bool verify_acyclic(const SimplicialComplex& x, const AcyclicMatching& m);

struct ExpectedCritical {
  double sum;    ///< exact expectation of critical (d-1)-simplices in C(n, t)
  double bound;  ///< C(n, d-1) t^(C(d,2) - d)
};

/// Expected number of critical (d-1)-simplices of the lex matching on the
/// clique complex of G(n, t). Throws std::domain_error unless 0 <= t <= 1.
ExpectedCritical expected_critical(std::size_t n, int d, double t);

}  // namespace acycle
