#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace qsum {

// Two number modes: complex double for numeric work, exact rationals
// (arbitrary precision, GMP-backed) for algebraic identities.
using Complex = std::complex<double>;
using Rational = mpq_class;

// Parameters outside the region where an evaluator is defined:
// divergent series, annulus violations, unsupported exact-mode requests.
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A required denominator factor vanished, or a summand carries a net pole.
struct pole_error : domain_error {
  explicit pole_error(const std::string& msg) : domain_error(msg) {}
};

template <typename T>
inline constexpr bool is_exact_v = false;
template <>
inline constexpr bool is_exact_v<Rational> = true;

inline double abs_approx(const Complex& x) { return std::abs(x); }
inline double abs_approx(const Rational& x) { return std::fabs(x.get_d()); }

inline Complex scalar_from_int(long n, const Complex&) { return Complex(double(n), 0.0); }
inline Rational scalar_from_int(long n, const Rational&) { return Rational(n); }

// Factors whose magnitude falls below this (relative) threshold are treated
// as exact zeros and tracked by order, not by value.  Sampled parameters are
// kept at least pole_margin (1e-4) away from every needed zero, while the
// engineered q-power degeneracies of the specialization checks land below
// 1e-13, so the two regimes are well separated.
inline constexpr double kZeroEps = 1e-9;

inline bool near_zero(const Complex& v, double scale) {
  return std::abs(v) <= kZeroEps * scale;
}
inline bool near_zero(const Rational& v, double /*scale*/) { return sgn(v) == 0; }

// |1 - x| >= margin * (1 + |x|); the rejection test used by all samplers.
template <typename T>
bool pole_margin_ok(const T& x, double margin) {
  T f = T(1) - x;
  return abs_approx(f) >= margin * (1.0 + abs_approx(x));
}

template <typename T>
T pow_int(const T& base, long e) {
  if (e < 0) {
    if (near_zero(base, 1.0)) throw pole_error("pow_int: negative power of zero");
    return T(1) / pow_int(base, -e);
  }
  T acc(1);
  T p = base;
  while (e > 0) {
    if (e & 1) acc = acc * p;
    p = p * p;
    e >>= 1;
  }
  return acc;
}

inline long binom2(long n) { return n * (n - 1) / 2; }  // C(n, 2)

}  // namespace qsum
