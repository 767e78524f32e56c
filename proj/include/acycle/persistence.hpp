#pragma once

// Persistence diagrams, lifetime sums, Betti curves and the l1/l2 lifetime
// functionals of a filtration.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include <json.hpp>

#include "acycle/complex.hpp"
#include "acycle/field.hpp"
#include "acycle/sparse.hpp"

namespace acycle {

/// Coefficient domain selector for runtime dispatch.
enum class Backend { rational, modp, modp2 };

const char* to_string(Backend b);
Backend parse_backend(const std::string& name);

/// A birth/death pair; an empty death means the class never dies.
struct PersistencePair {
  Time birth;
  std::optional<Time> death;

  bool infinite() const { return !death.has_value(); }
  friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
};

/// Degree-k diagram. Degree 0 is always reduced: the oldest essential
/// component is removed. Zero-lifetime pairs are never stored.
struct PersistenceDiagram {
  int degree = 0;
  std::vector<PersistencePair> pairs;

  std::size_t finite_count() const;
  std::size_t infinite_count() const { return pairs.size() - finite_count(); }
  /// Pairs sorted by (birth, death) with infinite deaths last.
  PersistenceDiagram sorted() const;
  friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;
};

/// Standard column reduction over F in canonical event order. Reduces the
/// degree-k boundary first, then the degree-(k+1) boundary, stopping as
/// soon as its rank reaches dim ker d_k (all later columns are zero).
template <class F>
PersistenceDiagram compute_persistence(const Filtration& f, int k);

PersistenceDiagram compute_persistence(const Filtration& f, int k, Backend backend);

/// Sum of lifetimes; std::nullopt encodes an infinite sum.
std::optional<Time> lifetime_sum(const PersistenceDiagram& d);

/// Right-continuous integer step function: value steps[i].second holds on
/// [steps[i].first, steps[i+1].first); zero before the first breakpoint.
class BettiCurve {
 public:
  BettiCurve(int degree, std::vector<std::pair<Time, std::int64_t>> steps);

  int degree() const { return degree_; }
  const std::vector<std::pair<Time, std::int64_t>>& steps() const { return steps_; }
  std::int64_t value_at(const Time& t) const;
  /// Value after the last breakpoint.
  std::int64_t final_value() const { return steps_.empty() ? 0 : steps_.back().second; }

 private:
  int degree_;
  std::vector<std::pair<Time, std::int64_t>> steps_;
};

/// Betti curve recomputed by incremental ranks at every event time (no
/// pairing involved). Reduced in degree 0.
template <class F>
BettiCurve betti_curve(const Filtration& f, int k);

BettiCurve betti_curve(const Filtration& f, int k, Backend backend);

/// Betti curve read off a diagram: beta(t) = #{(b, d) : b <= t < d}.
BettiCurve betti_curve(const PersistenceDiagram& d);

/// Exact integral of the curve over [0, upto].
Time integrate_betti(const BettiCurve& c, const Time& upto);

/// Rank of the (t-s)-persistent homology: #{(b, d) : b <= s, t < d}.
/// Throws std::domain_error when s > t.
std::int64_t persistent_betti(const PersistenceDiagram& d, const Time& s, const Time& t);

/// Sum of squared lifetimes. Throws std::domain_error on an infinite pair.
Time l2_norm_sq(const PersistenceDiagram& d);

/// 2 * double integral of persistent_betti over {s <= t}, evaluated exactly
/// on the grid spanned by the diagram coordinates.
Time l2_via_integral(const PersistenceDiagram& d);

// Serialization: JSON array of {degree, birth: "p/q", death: "p/q" | "inf"}.
nlohmann::json diagram_to_json(const std::vector<PersistenceDiagram>& diagrams);
std::vector<PersistenceDiagram> diagrams_from_json(const nlohmann::json& j);
/// CSV with columns degree,birth,death,lifetime,birth_exact,death_exact.
void write_diagram_csv(std::ostream& out, const std::vector<PersistenceDiagram>& diagrams);

}  // namespace acycle
