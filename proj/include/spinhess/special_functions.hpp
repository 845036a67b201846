#pragma once

// Gamma function for complex arguments, exact harmonic numbers.

#include <array>
#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_int.hpp>

#include "spinhess/common.hpp"

namespace spinhess {

using Rational = boost::multiprecision::cpp_rational;

namespace detail {

// Lanczos approximation, g = 7, 9 terms.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

inline bool near_nonpositive_integer(Complex z, double tol = 1e-12) {
  if (std::abs(z.imag()) > tol || z.real() > 0.5) return false;
  return std::abs(z.real() - std::round(z.real())) <= tol;
}

/// log Gamma(z) for Re z >= 1/2 (principal branch of the Lanczos expression).
inline Complex lanczos_log_gamma(Complex z) {
  z -= 1.0;
  Complex x = kLanczosCoef[0];
  for (int i = 1; i < 9; ++i) x += kLanczosCoef[static_cast<std::size_t>(i)] / (z + double(i));
  const Complex t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace detail

/// Gamma(z).  Reflection Gamma(z) Gamma(1-z) = pi / sin(pi z) for Re z < 1/2.
/// Throws pole_error at non-positive integers.
inline Complex cgamma(Complex z) {
  if (detail::near_nonpositive_integer(z))
    throw pole_error("gamma: pole at non-positive integer");
  if (z.real() < 0.5) {
    const double pi = std::numbers::pi;
    return pi / (std::sin(pi * z) * std::exp(detail::lanczos_log_gamma(1.0 - z)));
  }
  return std::exp(detail::lanczos_log_gamma(z));
}

inline double cgamma(double x) { return cgamma(Complex(x, 0.0)).real(); }

/// 1/Gamma(z), entire; zero at the non-positive integers.
inline Complex rgamma(Complex z) {
  if (detail::near_nonpositive_integer(z, 0.0)) return 0.0;
  return 1.0 / cgamma(z);
}

/// H_m = 1 + 1/2 + ... + 1/m, exactly.
inline Rational harmonic(int m) {
  if (m < 0) throw std::invalid_argument("harmonic: m must be >= 0");
  Rational h = 0;
  for (int j = 1; j <= m; ++j) h += Rational(1, j);
  return h;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational factorial_q(int m) {
  Rational f = 1;
  for (int j = 2; j <= m; ++j) f *= j;
  return f;
}

}  // namespace spinhess
