#pragma once

// Limiting constants of the normalised lifetime sum: the root t_c, the
// threshold (t_d*, c_d*), the integrand h_d and its integral.

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace acycle {

/// One accepted quadrature panel.
struct Panel {
  double a, b, value, error;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<Panel> trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const std::vector<Panel>& trace() const { return trace_; }

 private:
  std::vector<Panel> trace_;
};

/// Smallest root in (0, 1] of t = exp(-c (1-t)^d). Throws std::domain_error
/// for c < 0 or d < 1.
double t_c(double c, int d);

/// 1 - t_c, accurate when t_c is close to 1.
double s_c(double c, int d);

/// -log t / (1-t)^d on (0, 1); std::domain_error outside.
double psi(double t, int d);

/// Root in (0, 1) of (d+1)(1-t) + (1+dt) log t = 0; 1 for d = 1.
double t_star(int d);
double c_star(int d);

/// c t s^d + c s^(d+1)/(d+1) + t - c/(d+1) with s = 1 - t, where t = t_c
/// above c_d* and t = 1 at or below it.
double h(double c, int d);

struct LimitEvaluation {
  int d = 1;
  double c_star = 1, t_star = 1;
  double value = 0;
  double error_estimate = 0;  ///< quadrature error plus tail bound
  double c_max = 0;
  double tail_bound = 0;
  bool conjectural = false;  ///< every d >= 2
  std::vector<Panel> trace;
};

nlohmann::json to_json(const LimitEvaluation& e);

/// (1/d!) * integral of h_d over [0, inf) by adaptive Simpson split at
/// c_d*. `c_max_scale` stretches the truncation point (for stability
/// checks). Throws ConvergenceError when the error estimate exceeds tol.
LimitEvaluation limit_constant(int d, double tol, double c_max_scale = 1.0);

/// d = 1 through the substitution c = psi_1(t):
/// 3/4 + int_0^1 (2-2t+t log t)(1-t+t log t) / (2(1-t)^3) dt.
LimitEvaluation limit_constant_substituted(double tol);

/// zeta(3) or zeta(4); std::invalid_argument for any other s.
double zeta(int s);

/// 6 zeta(4) - 4 zeta(3).
double janson_sigma2();

}  // namespace acycle
