#include "acycle/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace acycle {

const char* to_string(Backend b) {
  switch (b) {
    case Backend::rational: return "rational";
    case Backend::modp: return "modp";
    case Backend::modp2: return "modp2";
  }
  return "?";
}

Backend parse_backend(const std::string& name) {
  if (name == "rational" || name == "Q") return Backend::rational;
  if (name == "modp" || name == "gfp") return Backend::modp;
  if (name == "modp2") return Backend::modp2;
  throw std::invalid_argument("unknown backend '" + name + "'");
}

std::size_t PersistenceDiagram::finite_count() const {
  return static_cast<std::size_t>(std::count_if(pairs.begin(), pairs.end(), [](const auto& p) { return !p.infinite(); }));
}

PersistenceDiagram PersistenceDiagram::sorted() const {
  PersistenceDiagram out = *this;
  std::sort(out.pairs.begin(), out.pairs.end(), [](const PersistencePair& a, const PersistencePair& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    if (a.infinite() != b.infinite()) return !a.infinite();
    return !a.infinite() && *a.death < *b.death;
  });
  return out;
}

namespace {

// Position of every simplex of dimension `dim` in event order, i.e. the row
// numbering used by the reduction.
std::vector<std::uint32_t> event_positions(const std::vector<Event>& events, int dim, std::size_t count,
                                           std::vector<std::size_t>& order) {
  std::vector<std::uint32_t> pos(count);
  order.clear();
  for (const auto& e : events)
    if (e.dim == dim) {
      pos[e.index] = static_cast<std::uint32_t>(order.size());
      order.push_back(e.index);
    }
  return pos;
}

template <class F>
SparseColumn<F> remapped_column(const SimplicialComplex& x, int k, std::size_t i,
                                const std::vector<std::uint32_t>& row_pos) {
  auto col = convert_column<F>(boundary_column(x, k, i));
  if (k > 0)
    for (auto& e : col) e.row = row_pos[e.row];
  std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.row < b.row; });
  return col;
}

}  // namespace

template <class F>
PersistenceDiagram compute_persistence(const Filtration& f, int k) {
  if (k < 0) throw std::domain_error("compute_persistence: negative degree");
  const auto& x = f.complex();
  PersistenceDiagram diagram{k, {}};
  if (k > x.dim()) return diagram;

  auto events = filtration_events(f, k + 1);
  std::vector<std::size_t> order_lo, order_k, order_hi;
  auto pos_lo = k > 0 ? event_positions(events, k - 1, x.f(k - 1), order_lo) : std::vector<std::uint32_t>{};
  auto pos_k = event_positions(events, k, x.f(k), order_k);
  event_positions(events, k + 1, x.f(k + 1), order_hi);

  // Degree-k boundary: which k-simplices are positive (create a class).
  std::vector<bool> positive(x.f(k), false);
  std::size_t rank_k = 0;
  {
    RankOracle<F> oracle(reduced_boundary_rows(x, k));
    for (auto i : order_k) {
      if (oracle.try_add(remapped_column<F>(x, k, i, pos_lo)))
        ++rank_k;
      else
        positive[i] = true;
    }
  }

  // Degree-(k+1) boundary: lowest-pivot pairing.
  const std::size_t kernel = x.f(k) - rank_k;
  std::vector<SparseColumn<F>> reduced(x.f(k));  // indexed by pivot row
  std::vector<bool> paired(x.f(k), false);
  std::size_t pivots = 0;
  SparseColumn<F> scratch;
  for (auto j : order_hi) {
    if (pivots == kernel) break;
    auto col = remapped_column<F>(x, k + 1, j, pos_k);
    while (!col.empty() && !reduced[col.back().row].empty()) {
      auto factor = F::neg(col.back().value);
      add_scaled<F>(col, reduced[col.back().row], factor, scratch);
    }
    if (col.empty()) continue;
    auto row = col.back().row;
    auto sigma = order_k[row];
    paired[sigma] = true;
    ++pivots;
    const Time& b = f.birth(k, sigma);
    const Time& d = f.birth(k + 1, j);
    if (b != d) diagram.pairs.push_back({b, d});
    auto inv = F::inv(col.back().value);
    for (auto& e : col) e.value = F::mul(e.value, inv);
    reduced[row] = std::move(col);
  }

  for (auto i : order_k)
    if (positive[i] && !paired[i]) diagram.pairs.push_back({f.birth(k, i), std::nullopt});
  return diagram;
}

template PersistenceDiagram compute_persistence<Rational>(const Filtration&, int);
template PersistenceDiagram compute_persistence<ModP>(const Filtration&, int);
template PersistenceDiagram compute_persistence<ModP2>(const Filtration&, int);

PersistenceDiagram compute_persistence(const Filtration& f, int k, Backend backend) {
  switch (backend) {
    case Backend::rational: return compute_persistence<Rational>(f, k);
    case Backend::modp: return compute_persistence<ModP>(f, k);
    case Backend::modp2: return compute_persistence<ModP2>(f, k);
  }
  throw std::logic_error("unreachable backend");
}

std::optional<Time> lifetime_sum(const PersistenceDiagram& d) {
  Time total = 0;
  for (const auto& p : d.pairs) {
    if (p.infinite()) return std::nullopt;
    total += *p.death - p.birth;
  }
  return total;
}

// ------------------------------------------------------------ Betti curves

BettiCurve::BettiCurve(int degree, std::vector<std::pair<Time, std::int64_t>> steps)
    : degree_(degree), steps_(std::move(steps)) {
  for (std::size_t i = 1; i < steps_.size(); ++i)
    if (!(steps_[i - 1].first < steps_[i].first)) throw std::invalid_argument("BettiCurve: breakpoints must increase");
}

std::int64_t BettiCurve::value_at(const Time& t) const {
  auto it = std::upper_bound(steps_.begin(), steps_.end(), t,
                             [](const Time& v, const auto& step) { return v < step.first; });
  if (it == steps_.begin()) return 0;
  return std::prev(it)->second;
}

namespace {

void push_step(std::vector<std::pair<Time, std::int64_t>>& steps, const Time& t, std::int64_t v) {
  std::int64_t previous = steps.empty() ? 0 : steps.back().second;
  if (v != previous) steps.emplace_back(t, v);
}

}  // namespace

template <class F>
BettiCurve betti_curve(const Filtration& f, int k) {
  if (k < 0) throw std::domain_error("betti_curve: negative degree");
  const auto& x = f.complex();
  std::vector<std::pair<Time, std::int64_t>> steps;
  if (k > x.dim()) return BettiCurve(k, {});

  // Final rank of d_k bounds the rank of d_{k+1} at every time.
  std::size_t final_rank_k = 0;
  {
    RankOracle<F> probe(reduced_boundary_rows(x, k));
    for (std::size_t i = 0; i < x.f(k); ++i) final_rank_k += probe.try_add(convert_column<F>(boundary_column(x, k, i)));
  }
  RankOracle<F> low(reduced_boundary_rows(x, k));
  RankOracle<F> high(x.f(k), x.f(k) - final_rank_k);
  std::int64_t fk = 0;

  auto events = filtration_events(f, k + 1);
  for (std::size_t e = 0; e < events.size();) {
    const Time& t = *events[e].time;
    for (; e < events.size() && *events[e].time == t; ++e) {
      const auto& ev = events[e];
      if (ev.dim == k) {
        ++fk;
        low.try_add(convert_column<F>(boundary_column(x, k, ev.index)));
      } else if (ev.dim == k + 1) {
        high.try_add(convert_column<F>(boundary_column(x, k + 1, ev.index)));
      }
    }
    auto beta = fk - static_cast<std::int64_t>(low.accepted()) - static_cast<std::int64_t>(high.accepted());
    // Reduced degree 0 of the empty complex is taken as 0.
    if (k == 0 && fk == 0) beta = 0;
    push_step(steps, t, beta);
  }
  return BettiCurve(k, std::move(steps));
}

template BettiCurve betti_curve<Rational>(const Filtration&, int);
template BettiCurve betti_curve<ModP>(const Filtration&, int);
template BettiCurve betti_curve<ModP2>(const Filtration&, int);

BettiCurve betti_curve(const Filtration& f, int k, Backend backend) {
  switch (backend) {
    case Backend::rational: return betti_curve<Rational>(f, k);
    case Backend::modp: return betti_curve<ModP>(f, k);
    case Backend::modp2: return betti_curve<ModP2>(f, k);
  }
  throw std::logic_error("unreachable backend");
}

BettiCurve betti_curve(const PersistenceDiagram& d) {
  std::set<Time> times;
  for (const auto& p : d.pairs) {
    times.insert(p.birth);
    if (p.death) times.insert(*p.death);
  }
  std::vector<std::pair<Time, std::int64_t>> steps;
  for (const auto& t : times) {
    std::int64_t v = 0;
    for (const auto& p : d.pairs)
      if (p.birth <= t && (p.infinite() || t < *p.death)) ++v;
    push_step(steps, t, v);
  }
  return BettiCurve(d.degree, std::move(steps));
}

Time integrate_betti(const BettiCurve& c, const Time& upto) {
  Time total = 0;
  const auto& s = c.steps();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].first >= upto) break;
    Time end = (i + 1 < s.size() && s[i + 1].first < upto) ? s[i + 1].first : upto;
    total += (end - s[i].first) * s[i].second;
  }
  return total;
}

std::int64_t persistent_betti(const PersistenceDiagram& d, const Time& s, const Time& t) {
  if (s > t) throw std::domain_error("persistent_betti: need s <= t");
  std::int64_t count = 0;
  for (const auto& p : d.pairs)
    if (p.birth <= s && (p.infinite() || t < *p.death)) ++count;
  return count;
}

Time l2_norm_sq(const PersistenceDiagram& d) {
  Time total = 0;
  for (const auto& p : d.pairs) {
    if (p.infinite()) throw std::domain_error("l2_norm_sq: infinite pair");
    Time l = *p.death - p.birth;
    total += l * l;
  }
  return total;
}

Time l2_via_integral(const PersistenceDiagram& d) {
  std::set<Time> coords;
  for (const auto& p : d.pairs) {
    if (p.infinite()) throw std::domain_error("l2_via_integral: infinite pair");
    coords.insert(p.birth);
    coords.insert(*p.death);
  }
  std::vector<Time> c(coords.begin(), coords.end());
  // On the open cell (c_i, c_{i+1}) x (c_j, c_{j+1}) the persistent Betti
  // number is constant: pairs with b <= c_i and d >= c_{j+1}.
  Time total = 0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    for (std::size_t j = i; j + 1 < c.size(); ++j) {
      std::int64_t beta = 0;
      for (const auto& p : d.pairs)
        if (p.birth <= c[i] && *p.death >= c[j + 1]) ++beta;
      if (beta == 0) continue;
      Time ws = c[i + 1] - c[i];
      Time wt = c[j + 1] - c[j];
      Time area = (i == j) ? Time(ws * ws / 2) : Time(ws * wt);
      total += area * beta;
    }
  }
  return 2 * total;
}

// ----------------------------------------------------------- serialization

nlohmann::json diagram_to_json(const std::vector<PersistenceDiagram>& diagrams) {
  auto out = nlohmann::json::array();
  for (const auto& d : diagrams)
    for (const auto& p : d.pairs)
      out.push_back({{"degree", d.degree},
                     {"birth", format_time(p.birth)},
                     {"death", p.death ? format_time(*p.death) : std::string("inf")}});
  return out;
}

std::vector<PersistenceDiagram> diagrams_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("diagram JSON must be an array");
  std::vector<PersistenceDiagram> out;
  for (const auto& item : j) {
    int degree = item.at("degree").get<int>();
    if (degree < 0) throw std::invalid_argument("diagram JSON: negative degree");
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& d) { return d.degree == degree; });
    if (it == out.end()) {
      out.push_back({degree, {}});
      it = std::prev(out.end());
    }
    auto death = item.at("death").get<std::string>();
    it->pairs.push_back({parse_time(item.at("birth").get<std::string>()),
                         death == "inf" ? std::nullopt : std::optional<Time>(parse_time(death))});
  }
  return out;
}

void write_diagram_csv(std::ostream& out, const std::vector<PersistenceDiagram>& diagrams) {
  out << "degree,birth,death,lifetime,birth_exact,death_exact\n";
  std::ostringstream line;
  out << std::setprecision(17);
  for (const auto& d : diagrams)
    for (const auto& p : d.pairs) {
      out << d.degree << ',' << p.birth.get_d() << ',';
      if (p.death) {
        out << p.death->get_d() << ',' << Time(*p.death - p.birth).get_d();
      } else {
        out << "inf,inf";
      }
      out << ',' << format_time(p.birth) << ',' << (p.death ? format_time(*p.death) : std::string("inf")) << '\n';
    }
}

}  // namespace acycle
