#pragma once

// Spanning acycles: detection, greedy minimisation over a filtration,
// torsion orders, Kalai sums, determinantal expansions and shadows.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "acycle/complex.hpp"
#include "acycle/field.hpp"
#include "acycle/persistence.hpp"
#include "acycle/sparse.hpp"

namespace acycle {

/// A hypothesis of the lifetime identity fails; carries the offending
/// Betti number.
class PreconditionError : public std::runtime_error {
 public:
  PreconditionError(const std::string& what, int degree, std::int64_t betti)
      : std::runtime_error(what), degree_(degree), betti_(betti) {}
  int degree() const { return degree_; }
  std::int64_t betti() const { return betti_; }

 private:
  int degree_;
  std::int64_t betti_;
};

/// The greedy found fewer independent columns than gamma_d.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration would exceed the configured candidate cap.
class EnumerationCapError : public std::runtime_error {
 public:
  EnumerationCapError(const std::string& what, mpz_class candidates)
      : std::runtime_error(what), candidates_(std::move(candidates)) {}
  const mpz_class& candidates() const { return candidates_; }

 private:
  mpz_class candidates_;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Rank of the augmented k-th boundary of X over F (d_0 is the
/// augmentation, so Betti numbers come out reduced in degree 0). Zero
/// outside [0, dim X].
template <class F = Rational>
std::size_t boundary_rank(const SimplicialComplex& x, int k);

/// Reduced Betti number beta_k(X) over F.
template <class F = Rational>
std::int64_t betti(const SimplicialComplex& x, int k);

/// gamma_k(X) = f_k(X^(k)) - beta_k(X^(k)) + beta_{k-1}(X^(k)). When the
/// skeleta below k are acyclic, the alternating-sum closed form is
/// evaluated too and a mismatch throws std::logic_error.
template <class F = Rational>
std::size_t gamma(const SimplicialComplex& x, int k);

/// Alternating-sum form (-1)^k (1 - sum_{j<k} (-1)^j f_j); only valid
/// when beta_{j-1}(X^(j)) = 0 for 1 <= j < k.
std::int64_t gamma_closed_form(const SimplicialComplex& x, int k);

/// True iff the k-simplices in S have independent boundaries over Q and
/// |S| = gamma_k(X). Throws ComplexError when S is not a subset of X_k.
bool is_spanning_acycle(const SimplicialComplex& x, const std::vector<Simplex>& s, int k);

struct SpanningAcycleResult {
  int degree = 0;
  std::size_t gamma = 0;
  std::vector<Simplex> simplices;  ///< in acceptance order
  Time weight;
  bool certified = false;  ///< re-checked with is_spanning_acycle over Q
};

nlohmann::json to_json(const SpanningAcycleResult& r);

/// Throws PreconditionError unless beta_{d-1}(X^(d)) = beta_{d-2}(X^(d-1)) = 0.
template <class F = Rational>
void check_lifetime_hypotheses(const SimplicialComplex& x, int d);

/// Greedy over the d-simplices in event order, accepting a simplex iff its
/// boundary is independent of those already accepted. For d = 0 the
/// augmentation is used, so the result is the earliest vertex.
/// `certify` re-checks the result with is_spanning_acycle (exact, small
/// inputs only).
template <class F = Rational>
SpanningAcycleResult min_spanning_acycle(const Filtration& f, int d, bool certify = true);

/// wt(X_{d-1}) - wt(minimum spanning (d-1)-acycle).
template <class F = Rational>
Time max_complement_weight(const Filtration& f, int d);

/// L_{d-1} through the minimum spanning acycle formula.
template <class F = Rational>
Time lifetime_via_msa(const Filtration& f, int d);

/// Order of H_j(Y) when finite: the product of the elementary divisors of
/// d_{j+1} (augmented for j = 0). Returns std::nullopt when H_j(Y) is
/// infinite.
std::optional<mpz_class> homology_order(const SimplicialComplex& y, int j);

/// |H_{k-1}(X_S)| for X_S = S + X^(k-1), via the Smith form of the
/// boundary restricted to S. Throws std::invalid_argument unless S is a
/// k-spanning acycle.
mpz_class torsion_order(const SimplicialComplex& x, const std::vector<Simplex>& s, int k);

/// The subcomplex X_S = S + X^(k-1).
SimplicialComplex acycle_subcomplex(const SimplicialComplex& x, const std::vector<Simplex>& s, int k);

struct KalaiResult {
  mpz_class sum;           ///< sum of squared torsion orders
  mpz_class expected;      ///< n^C(n-2, d)
  std::uint64_t candidates = 0;
  std::uint64_t acycles = 0;
  std::map<mpz_class, std::uint64_t> torsion_counts;  ///< order -> count
};

/// Enumerates all gamma_d-subsets of d-simplices of the full d-skeleton on
/// n vertices. Throws EnumerationCapError above `cap` candidates.
KalaiResult kalai_sum(std::size_t n, int d, std::uint64_t cap = kDefaultEnumerationCap);

struct DetExpansionReport {
  bool equal = false;                ///< LHS == RHS
  mpq_class lhs, rhs, binet_cauchy;  ///< binet_cauchy sums over all |K|-subsets
  std::uint64_t terms = 0;           ///< subsets enumerated
  std::uint64_t acycle_terms = 0;    ///< nonzero terms, all spanning acycles
  bool nonzero_only_on_acycles = true;
  bool complement_is_acycle = false;  ///< X_{d-1} minus K in S^(d-1)
  bool homology_formula_checked = false;
  bool homology_formula_holds = true;
  std::string failure;               ///< first failing hypothesis, if any
};

/// Checks det(A_K A_K^T) = sum_{S acycle} det(d_KS)^2 x_K^2 y_S^2 for
/// A = diag(x) d_d diag(y), exactly. x is indexed like X_{d-1}, y like X_d.
DetExpansionReport det_expansion_check(const SimplicialComplex& x, int d, const std::vector<Simplex>& k_rows,
                                       std::vector<mpq_class> x_weights, std::vector<mpq_class> y_weights,
                                       std::uint64_t cap = kDefaultEnumerationCap);

/// Partition of the d-simplices of the full simplex on n vertices by the
/// effect of adding each one to Y. Indices refer to lex order.
struct ShadowPartition {
  int degree = 0;
  std::vector<std::uint64_t> adders;      ///< R_d(Y): beta_{d-1} drops by one
  std::vector<std::uint64_t> shadow_side; ///< S_d(Y): beta_{d-1} unchanged
};

/// Requires Y to contain the complete (d-1)-skeleton (ComplexError
/// otherwise). One rank probe per d-simplex.
template <class F = Rational>
ShadowPartition shadow(const SimplicialComplex& y, int d);

/// Y together with every simplex of S_d(Y).
SimplicialComplex hull(const SimplicialComplex& y, const ShadowPartition& p);

struct RankBoundReport {
  std::size_t rank = 0;      ///< rank of d_d on Y
  std::size_t faces = 0;     ///< |Y_d|
  std::int64_t beta = 0;     ///< beta_{d-1}(Y)
  std::size_t adders = 0;    ///< |R_d(Y)|
  bool rank_bound = false;   ///< rank >= (d+1)/n |Y_d|
  bool betti_bound = false;  ///< beta_{d-1} <= (d+1)/n |R_d|
  bool holds() const { return rank_bound && betti_bound; }
};

template <class F = Rational>
RankBoundReport rank_bound_check(const SimplicialComplex& y, int d);

}  // namespace acycle
