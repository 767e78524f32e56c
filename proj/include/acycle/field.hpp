#pragma once

// Coefficient domains for sparse linear algebra.
//
// Each domain exposes a value_type plus static arithmetic so that the
// reduction kernels can be written once. Rational is the exact backend used
// for identity checks; ModPrime<P> is the fast backend for Monte Carlo work.

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace acycle {

/// Exact birth times and rational weights.
using Time = mpq_class;

/// Parses "p/q" or "p" into a canonical rational. Throws std::invalid_argument.
Time parse_time(const std::string& text);

/// Canonical "p/q" text ("p" when the denominator is 1).
std::string format_time(const Time& t);

/// Integer entries of boundary and presentation matrices.
struct Integer {
  using value_type = std::int64_t;
  static constexpr const char* name = "Z";
  static bool is_zero(value_type a) { return a == 0; }
};

struct Rational {
  using value_type = mpq_class;
  static constexpr const char* name = "Q";

  static value_type from_int(std::int64_t a) { return value_type(static_cast<long>(a)); }
  static bool is_zero(const value_type& a) { return sgn(a) == 0; }
  static value_type add(const value_type& a, const value_type& b) { return a + b; }
  static value_type sub(const value_type& a, const value_type& b) { return a - b; }
  static value_type mul(const value_type& a, const value_type& b) { return a * b; }
  static value_type neg(const value_type& a) { return -a; }
  static value_type inv(const value_type& a) { return 1 / a; }
};

template <std::uint32_t P>
struct ModPrime {
  using value_type = std::uint32_t;
  static constexpr std::uint32_t modulus = P;
  static constexpr const char* name = "GF(p)";

  static value_type from_int(std::int64_t a) {
    std::int64_t r = a % static_cast<std::int64_t>(P);
    return static_cast<value_type>(r < 0 ? r + P : r);
  }
  static bool is_zero(value_type a) { return a == 0; }
  static value_type add(value_type a, value_type b) {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<value_type>(s >= P ? s - P : s);
  }
  static value_type sub(value_type a, value_type b) {
    return a >= b ? a - b : static_cast<value_type>(std::uint64_t{a} + P - b);
  }
  static value_type mul(value_type a, value_type b) {
    return static_cast<value_type>((std::uint64_t{a} * b) % P);
  }
  static value_type neg(value_type a) { return a == 0 ? 0 : P - a; }
  static value_type inv(value_type a) {
    // Fermat; P is prime.
    std::uint64_t result = 1, base = a, e = P - 2;
    while (e) {
      if (e & 1) result = result * base % P;
      base = base * base % P;
      e >>= 1;
    }
    return static_cast<value_type>(result);
  }
};

/// Default fast field, p = 2^31 - 1.
using ModP = ModPrime<2147483647u>;
/// Second prime used to cross-check modular computations.
using ModP2 = ModPrime<2147483629u>;

}  // namespace acycle
