#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "acycle/persistence.hpp"
#include "acycle/random.hpp"
#include "oracles.hpp"

using namespace acycle;

namespace {

Time q(const char* s) { return parse_time(s); }

Filtration k3() {
  return Filtration::from_list(3, {{Simplex{0}, 0}, {Simplex{1}, 0}, {Simplex{2}, 0},
                                   {Simplex{0, 1}, q("1/4")}, {Simplex{0, 2}, q("1/2")}, {Simplex{1, 2}, q("3/4")}});
}

Filtration filled_triangle() {
  return Filtration::from_list(3, {{Simplex{0}, 0}, {Simplex{1}, 0}, {Simplex{2}, 0},
                                   {Simplex{0, 1}, q("1/4")}, {Simplex{0, 2}, q("1/2")}, {Simplex{1, 2}, q("3/4")},
                                   {Simplex{0, 1, 2}, 1}});
}

PersistenceDiagram diagram(int k, std::vector<std::pair<const char*, const char*>> pairs) {
  PersistenceDiagram d;
  d.degree = k;
  for (auto [b, e] : pairs) {
    PersistencePair p{q(b), std::nullopt};
    if (std::string(e) != "inf") p.death = q(e);
    d.pairs.push_back(p);
  }
  return d;
}

// Betti number of the sublevel complex at time t, from scratch.
long brute_betti(const Filtration& f, const Time& t, int k) {
  auto y = f.sublevel(t);
  std::vector<oracle::Face> gens;
  for (int j = 0; j <= y.dim(); ++j)
    for (const auto& s : y.simplices(j)) gens.push_back(oracle::Face(s.vertices().begin(), s.vertices().end()));
  return oracle::betti(oracle::close(gens, static_cast<int>(y.n_vertices())), k);
}

}  // namespace

TEST_CASE("degree 0 of K3 is two merges") {
  auto d = compute_persistence<Rational>(k3(), 0).sorted();
  CHECK(d.pairs == diagram(0, {{"0", "1/4"}, {"0", "1/2"}}).pairs);
  CHECK(*lifetime_sum(d) == q("3/4"));
  std::vector<std::tuple<Time, int, int>> edges{{q("1/4"), 0, 1}, {q("1/2"), 0, 2}, {q("3/4"), 1, 2}};
  CHECK(*lifetime_sum(d) == oracle::kruskal<Time>(3, edges));
  // Without the filling triangle the 1-cycle never dies.
  auto h1 = compute_persistence<Rational>(k3(), 1);
  CHECK(h1.pairs == diagram(1, {{"3/4", "inf"}}).pairs);
  CHECK_FALSE(lifetime_sum(h1).has_value());
}

TEST_CASE("triangle kills the cycle") {
  auto d = compute_persistence<Rational>(filled_triangle(), 1);
  CHECK(d.pairs == diagram(1, {{"3/4", "1"}}).pairs);
  CHECK(*lifetime_sum(d) == q("1/4"));
  auto c = betti_curve<Rational>(filled_triangle(), 1);
  CHECK(c.value_at(q("1/2")) == 0);
  CHECK(c.value_at(q("3/4")) == 1);
  CHECK(c.value_at(q("99/100")) == 1);
  CHECK(c.value_at(1) == 0);
  CHECK(integrate_betti(c, 1) == q("1/4"));
  CHECK(integrate_betti(betti_curve(d), 1) == q("1/4"));
}

TEST_CASE("empty degrees") {
  auto f = k3();
  CHECK(compute_persistence<Rational>(f, 2).pairs.empty());
  CHECK(*lifetime_sum(PersistenceDiagram{}) == 0);
  CHECK(integrate_betti(BettiCurve(1, {}), 5) == 0);
  auto all_zero = Filtration(build_skeleton(5, 2), {std::vector<Time>(5), std::vector<Time>(10), std::vector<Time>(10)});
  for (int k = 0; k <= 2; ++k) CHECK(compute_persistence<Rational>(all_zero, k).finite_count() == 0);
  CHECK_THROWS(compute_persistence<Rational>(f, -1));
}

TEST_CASE("persistent betti") {
  auto d = diagram(1, {{"3/4", "1"}});
  CHECK(persistent_betti(d, q("3/4"), q("7/8")) == 1);
  CHECK(persistent_betti(d, q("1/2"), q("7/8")) == 0);
  CHECK_THROWS_AS(persistent_betti(d, 1, q("1/2")), std::domain_error);
  auto c = betti_curve(d);
  for (const char* t : {"0", "3/4", "7/8", "1", "2"}) CHECK(persistent_betti(d, q(t), q(t)) == c.value_at(q(t)));
}

TEST_CASE("l2 identity") {
  CHECK(l2_norm_sq(PersistenceDiagram{}) == 0);
  CHECK(l2_via_integral(PersistenceDiagram{}) == 0);
  auto one = diagram(0, {{"0", "1"}});
  CHECK(l2_norm_sq(one) == 1);
  CHECK(l2_via_integral(one) == 1);
  auto two = diagram(0, {{"0", "1"}, {"1/4", "1/2"}});
  CHECK(l2_norm_sq(two) == q("17/16"));
  CHECK(l2_via_integral(two) == q("17/16"));
  CHECK_THROWS_AS(l2_norm_sq(diagram(0, {{"0", "inf"}})), std::domain_error);

  CounterRng rng(SeedSpec{21, 0});
  for (int it = 0; it < 100; ++it) {
    PersistenceDiagram d;
    std::size_t m = rng.below(6);
    for (std::size_t i = 0; i < m; ++i) {
      Time a(static_cast<long>(rng.below(16)), 16), b(static_cast<long>(rng.below(16)), 16);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      d.pairs.push_back({a, b});
    }
    CHECK(l2_norm_sq(d) == l2_via_integral(d));
  }
}

TEST_CASE("lifetime sum equals integrated Betti curve") {
  for (std::uint64_t t = 0; t < 25; ++t) {
    auto f = t % 2 ? clique_process(7, SeedSpec{31, t}, 3) : lm_process(7, 1 + static_cast<int>(t % 3), SeedSpec{31, t});
    for (int k = 0; k < f.complex().dim(); ++k) {
      auto d = compute_persistence<Rational>(f, k);
      auto c = betti_curve<Rational>(f, k);
      auto s = lifetime_sum(d);
      if (!s) continue;
      CHECK(*s == integrate_betti(c, f.saturation_time()));
      CHECK(*s == integrate_betti(betti_curve(d), f.saturation_time()));
    }
  }
}

TEST_CASE("rank Betti curve matches homology of sublevel complexes") {
  for (std::uint64_t t = 0; t < 6; ++t) {
    auto f = clique_process(6, SeedSpec{41, t}, 3);
    std::set<Time> times;
    for (int k = 0; k <= f.complex().dim(); ++k)
      for (std::size_t i = 0; i < f.complex().f(k); ++i) times.insert(f.birth(k, i));
    for (int k = 0; k <= 2; ++k) {
      auto c = betti_curve<Rational>(f, k);
      auto fromd = betti_curve(compute_persistence<Rational>(f, k));
      for (const auto& s : times) {
        CHECK(c.value_at(s) == brute_betti(f, s, k));
        CHECK(fromd.value_at(s) == c.value_at(s));
      }
    }
  }
}

TEST_CASE("LM diagrams in degree d-1 have no essential classes") {
  for (std::uint64_t t = 0; t < 10; ++t)
    for (int d = 1; d <= 3; ++d) {
      auto f = lm_process(7, d, SeedSpec{51, t});
      CHECK(compute_persistence<ModP>(f, d - 1).infinite_count() == 0);
    }
}

TEST_CASE("pairing does not depend on the backend") {
  for (std::uint64_t t = 0; t < 20; ++t) {
    auto f = clique_process(9, SeedSpec{61, t}, 3);
    for (int k = 0; k <= 2; ++k) {
      auto a = compute_persistence(f, k, Backend::rational).sorted();
      CHECK(a == compute_persistence(f, k, Backend::modp).sorted());
      CHECK(a == compute_persistence(f, k, Backend::modp2).sorted());
    }
  }
}

TEST_CASE("serialization") {
  std::vector<PersistenceDiagram> ds{diagram(0, {{"0", "1/4"}, {"0", "1/2"}}), diagram(1, {{"3/4", "inf"}})};
  auto j = diagram_to_json(ds);
  CHECK(j.size() == 3);
  CHECK(j[2]["death"] == "inf");
  CHECK(j[2]["degree"] == 1);
  CHECK(j[0]["birth"] == "0");
  CHECK(diagrams_from_json(j) == ds);
  std::ostringstream out;
  write_diagram_csv(out, ds);
  auto text = out.str();
  CHECK(text.rfind("degree,birth,death,lifetime,birth_exact,death_exact", 0) == 0);
  CHECK(text.find("1/4") != std::string::npos);
  CHECK(text.find("inf") != std::string::npos);
  CHECK(parse_backend("modp") == Backend::modp);
  CHECK_THROWS(parse_backend("reals"));
}
