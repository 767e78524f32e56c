#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "acycle/asymptotics.hpp"

using namespace acycle;

namespace {

constexpr double kZeta3 = 1.2020569031595942854;

// Independent midpoint-free Simpson rule on a uniform grid.
template <class Fn>
double simpson(Fn f, double a, double b, int n) {
  double hh = (b - a) / n, s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * hh) * (i % 2 ? 4 : 2);
  return s * hh / 3;
}

}  // namespace

TEST_CASE("root t_c") {
  for (int d = 1; d <= 3; ++d) CHECK(t_c(0, d) == 1.0);
  for (double c : {0.0, 0.3, 0.9, 1.0}) CHECK(t_c(c, 1) == 1.0);
  for (double c : {1.01, 1.5, 2.0, 5.0, 12.0, 30.0}) {
    double t = t_c(c, 1);
    CHECK(t < 1.0);
    CHECK(std::abs(psi(t, 1) - c) < 1e-10 * std::max(1.0, c));
  }
  for (int d = 1; d <= 4; ++d)
    for (double c : {0.5, 2.0, 3.0, 4.0, 7.5, 20.0, 45.0}) {
      double t = t_c(c, d), s = s_c(c, d);
      CHECK(std::abs(t - std::exp(-c * std::pow(1 - t, d))) < 1e-12);
      CHECK(std::abs((1 - s) - t) < 1e-12);
    }
  CHECK_THROWS_AS(t_c(-1, 1), std::domain_error);
  CHECK_THROWS_AS(t_c(1, 0), std::domain_error);
}

TEST_CASE("threshold") {
  CHECK(t_star(1) == 1.0);
  CHECK(c_star(1) == 1.0);
  for (double t : {0.9, 0.99, 0.999, 0.9999}) CHECK(psi(t, 1) == doctest::Approx(1.0).epsilon(1e-3 + (1 - t)));
  for (int d = 2; d <= 4; ++d) {
    double t = t_star(d);
    CHECK(t > 0);
    CHECK(t < 1);
    CHECK(std::abs((d + 1) * (1 - t) + (1 + d * t) * std::log(t)) < 1e-12);
    CHECK(c_star(d) == doctest::Approx(psi(t, d)).epsilon(1e-12));
  }
  CHECK(t_star(2) == doctest::Approx(0.116586).epsilon(1e-5));
  CHECK(c_star(2) == doctest::Approx(2.753806).epsilon(1e-6));
  CHECK_THROWS_AS(psi(0, 1), std::domain_error);
  CHECK_THROWS_AS(psi(1, 1), std::domain_error);
}

TEST_CASE("integrand") {
  for (double c : {0.0, 0.25, 0.5, 1.0}) CHECK(h(c, 1) == doctest::Approx(1 - c / 2).epsilon(1e-14));
  for (int d = 1; d <= 3; ++d) {
    CHECK(h(0, d) == 1.0);
    CHECK(std::abs(h(60, d)) < 1e-12);
  }
  // Straight from the defining formula, away from the threshold.
  for (int d = 1; d <= 3; ++d)
    for (double c : {c_star(d) + 0.5, 6.0, 10.0}) {
      double t = t_c(c, d), s = 1 - t;
      double want = c * t * std::pow(s, d) + c * std::pow(s, d + 1) / (d + 1) + t - c / (d + 1);
      CHECK(h(c, d) == doctest::Approx(want).epsilon(1e-9));
    }
  // Below the threshold t = 1, so h = 1 - c/(d+1).
  CHECK(h(2.0, 2) == doctest::Approx(1 - 2.0 / 3).epsilon(1e-14));
}

TEST_CASE("limit constant for d = 1") {
  auto e = limit_constant(1, 1e-6);
  CHECK(std::abs(e.value - kZeta3) < 1e-6);
  CHECK(e.error_estimate <= 1e-6);
  CHECK_FALSE(e.conjectural);
  auto s = limit_constant_substituted(1e-6);
  CHECK(std::abs(s.value - e.value) < 2e-6);
  CHECK(std::abs(s.value - kZeta3) < 1e-6);
  // The piece below the threshold is exactly 3/4.
  CHECK(simpson([](double c) { return h(c, 1); }, 0, 1, 2) == doctest::Approx(0.75).epsilon(1e-15));
  // Coarse independent quadrature of the same integral.
  double coarse = simpson([](double c) { return h(c, 1); }, 0, 1, 2) +
                  simpson([](double c) { return h(c, 1); }, 1, 60, 20000);
  CHECK(std::abs(coarse - kZeta3) < 1e-5);
  auto j = to_json(e);
  CHECK(j["status"] == "theorem");
  CHECK(j.contains("panels"));
}

TEST_CASE("limit constant for d >= 2 is stable") {
  for (int d = 2; d <= 3; ++d) {
    auto a = limit_constant(d, 1e-7);
    auto b = limit_constant(d, 1e-8, 2.0);
    CHECK(a.value > 0);
    CHECK(a.conjectural);
    CHECK(std::abs(a.value - b.value) < 1e-6);
    CHECK(to_json(a)["status"] == "conjectural");
  }
}

TEST_CASE("zeta values") {
  CHECK(std::abs(zeta(3) - kZeta3) < 1e-13);
  CHECK(std::abs(zeta(4) - std::pow(std::numbers::pi, 4) / 90) < 1e-13);
  CHECK(janson_sigma2() == doctest::Approx(1.6857).epsilon(1e-4));
  CHECK_THROWS_AS(zeta(2), std::invalid_argument);
}
