#include "acycle/asymptotics.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace acycle {

namespace {

// g(t) = t - exp(-c s^d) written so that either coordinate may be the
// small one.
double g_of(double t, double s, double c, int d) {
  if (s < 0.5) return -s - std::expm1(-c * std::pow(s, d));
  return t - std::exp(-c * std::pow(s, d));
}

// Bisects on [lo, hi] in t when the bracket sits near 0 and in s = 1 - t
// when it sits near 1, so the small coordinate keeps full relative
// precision. Returns (t, s) at the root.
struct Root {
  double t, s;
};

Root bisect_root(double t_lo, double t_hi, double c, int d) {
  const bool in_s = t_lo >= 0.5;
  double lo = in_s ? 1.0 - t_hi : t_lo;  // g(lo) ... differs in sign from g(hi)
  double hi = in_s ? 1.0 - t_lo : t_hi;
  auto eval = [&](double u) { return in_s ? g_of(1.0 - u, u, c, d) : g_of(u, 1.0 - u, c, d); };
  const bool lo_negative = eval(lo) < 0;
  for (int it = 0; it < 2000; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if ((eval(mid) < 0) == lo_negative) lo = mid;
    else hi = mid;
    if (hi - lo <= 1e-14 * std::min(1.0, hi)) break;
  }
  double u = 0.5 * (lo + hi);
  return in_s ? Root{1.0 - u, u} : Root{u, 1.0 - u};
}

constexpr int kGrid = 4096;

Root find_root(double c, int d) {
  if (!(c >= 0) || d < 1) throw std::domain_error("t_c: need c >= 0 and d >= 1");
  if (c == 0) return {1.0, 0.0};
  // For d = 1 the root leaves t = 1 only once c > 1; at c = 1 it is a double
  // root there and rounding in the scan would report a spurious one.
  if (d == 1 && c <= 1) return {1.0, 0.0};
  // Scan t left to right for the first point with g >= 0; g(0) < 0.
  double prev = 0.0;
  for (int i = 1; i < kGrid; ++i) {
    double t = double(i) / kGrid;
    if (g_of(t, 1.0 - t, c, d) >= 0) return bisect_root(prev, t, c, d);
    prev = t;
  }
  // Roots close to 1 hide in the last cell: refine it x4 at a time.
  double s_hi = 1.0 / kGrid;
  while (s_hi > 1e-300) {
    double s = s_hi / 4;
    for (int i = 3; i >= 1; --i) {
      double si = s_hi * i / 4;
      if (g_of(1.0 - si, si, c, d) >= 0) return bisect_root(1.0 - s_hi * (i + 1) / 4, 1.0 - si, c, d);
    }
    s_hi = s;
  }
  return {1.0, 0.0};
}

}  // namespace

double s_c(double c, int d) { return find_root(c, d).s; }
double t_c(double c, int d) { return find_root(c, d).t; }

double psi(double t, int d) {
  if (!(t > 0 && t < 1)) throw std::domain_error("psi: t outside (0, 1)");
  return -std::log(t) / std::pow(1.0 - t, d);
}

double t_star(int d) {
  if (d < 1) throw std::domain_error("t_star: d < 1");
  if (d == 1) return 1.0;
  auto f = [d](double s) { return (d + 1) * s + (1 + d * (1 - s)) * std::log1p(-s); };
  // f < 0 near s = 1 (t -> 0), f > 0 for small s.
  double lo = 1e-3, hi = 1 - 1e-12;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? lo : hi) = mid;
  }
  return 1.0 - 0.5 * (lo + hi);
}

double c_star(int d) { return d == 1 ? 1.0 : psi(t_star(d), d); }

double h(double c, int d) {
  if (!(c >= 0)) throw std::domain_error("h: c < 0");
  if (c <= c_star(d)) return 1.0 - c / (d + 1);
  auto [t, s] = find_root(c, d);
  // c/(d+1) (s^(d+1) - 1) via expm1 so that large c keeps its precision.
  double tail = c / (d + 1) * std::expm1((d + 1) * std::log1p(-t));
  return c * t * std::pow(s, d) + t + tail;
}

namespace {

struct Simpson {
  const std::function<double(double)>& f;
  std::vector<Panel>& trace;
  double error = 0;
  int max_depth = 60;

  double rule(double a, double b, double fa, double fm, double fb) const { return (b - a) / 6 * (fa + 4 * fm + fb); }

  double run(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = rule(a, m, fa, flm, fm), right = rule(m, b, fm, frm, fb);
    double diff = left + right - whole;
    if (std::fabs(diff) <= 15 * tol || b - a < 1e-12) {
      if (std::fabs(diff) > 15 * tol) throw ConvergenceError("quadrature: panel width underflow", trace);
      double v = left + right + diff / 15;
      trace.push_back({a, b, v, std::fabs(diff) / 15});
      error += std::fabs(diff) / 15;
      return v;
    }
    if (depth >= max_depth) throw ConvergenceError("quadrature: depth limit reached", trace);
    return run(a, m, fa, flm, fm, left, tol / 2, depth + 1) + run(m, b, fm, frm, fb, right, tol / 2, depth + 1);
  }

  double integrate(double a, double b, double tol) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return run(a, b, fa, fm, fb, rule(a, b, fa, fm, fb), tol, 0);
  }
};

double factorial(int d) {
  double r = 1;
  for (int i = 2; i <= d; ++i) r *= i;
  return r;
}

}  // namespace

nlohmann::json to_json(const LimitEvaluation& e) {
  return {{"d", e.d},
          {"I", e.value},
          {"error_estimate", e.error_estimate},
          {"c_star", e.c_star},
          {"t_star", e.t_star},
          {"c_max", e.c_max},
          {"tail_bound", e.tail_bound},
          {"panels", e.trace.size()},
          {"status", e.conjectural ? "conjectural" : "theorem"}};
}

LimitEvaluation limit_constant(int d, double tol, double c_max_scale) {
  if (d < 1 || !(tol > 0)) throw std::domain_error("limit_constant: need d >= 1 and tol > 0");
  LimitEvaluation e;
  e.d = d;
  e.t_star = t_star(d);
  e.c_star = c_star(d);
  e.conjectural = d >= 2;
  // Past C the integrand is below 2 t_c <= 2 exp(-c/2), so the tail is at
  // most 4 exp(-C/2); aim for a tail of tol * 1e-3.
  e.c_max = c_max_scale * std::max(4 * e.c_star, 2 * std::log(4e3 / tol));
  auto [t, s] = find_root(e.c_max, d);
  if (!(std::pow(s, d) >= 0.5 && e.c_max * d * t <= 1) || std::fabs(h(e.c_max, d)) >= tol * 1e-3)
    throw ConvergenceError("limit_constant: tail bound does not apply at c_max", {});
  e.tail_bound = 4 * std::exp(-e.c_max / 2);

  std::function<double(double)> f = [d](double c) { return h(c, d); };
  Simpson q{f, e.trace};
  const double budget = 0.25 * tol * factorial(d);
  double below = q.integrate(0, e.c_star, budget / 4);
  double above = q.integrate(e.c_star, e.c_max, budget);
  e.value = (below + above) / factorial(d);
  e.error_estimate = (q.error + e.tail_bound) / factorial(d);
  if (e.error_estimate > tol) throw ConvergenceError("limit_constant: error estimate exceeds tol", e.trace);
  return e;
}

LimitEvaluation limit_constant_substituted(double tol) {
  if (!(tol > 0)) throw std::domain_error("limit_constant_substituted: tol <= 0");
  // a(s) = 1 - t + t log t with s = 1 - t, by its series when s is small.
  auto a = [](double s) {
    if (s > 0.1) return s + (1 - s) * std::log1p(-s);
    double term = s, sum = 0;
    for (int k = 2; k < 40; ++k) {
      term *= s;
      sum += term / (k * (k - 1.0));
    }
    return sum;
  };
  std::function<double(double)> f = [&](double t) {
    double s = 1 - t;
    if (t <= 0) return 1.0;
    if (s <= 0) return 0.25;
    double as = a(s);
    return (s + as) * as / (2 * s * s * s);
  };
  LimitEvaluation e;
  Simpson q{f, e.trace};
  e.value = 0.75 + q.integrate(0, 1, 0.25 * tol);
  e.error_estimate = q.error;
  if (e.error_estimate > tol) throw ConvergenceError("substituted route: error estimate exceeds tol", e.trace);
  return e;
}

double zeta(int s) {
  if (s != 3 && s != 4) throw std::invalid_argument("zeta: only s = 3 and s = 4 are supported");
  const int n = 2000;
  double sum = 0;
  for (int k = n; k >= 1; --k) sum += std::pow(double(k), -s);
  // Euler-Maclaurin tail of sum_{k > n} k^-s.
  double N = n;
  double tail = std::pow(N, 1 - s) / (s - 1) - std::pow(N, -s) / 2 + s * std::pow(N, -s - 1) / 12 -
                s * (s + 1.0) * (s + 2.0) * std::pow(N, -s - 3) / 720;
  return sum + tail;
}

double janson_sigma2() { return 6 * zeta(4) - 4 * zeta(3); }

}  // namespace acycle
