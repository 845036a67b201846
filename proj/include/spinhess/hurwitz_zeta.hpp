#pragma once

// Hurwitz zeta zeta_H(s, a) and d/ds zeta_H(s, a) by Euler-Maclaurin summation
// in 50-digit arithmetic, with rigorous remainder bounds.

#include <cmath>
#include <vector>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "spinhess/common.hpp"

namespace spinhess {

using Real50 = boost::multiprecision::cpp_bin_float_50;
using Complex50 = boost::multiprecision::cpp_complex_50;

struct HurwitzValue {
  Complex50 value;
  Complex50 derivative;  ///< d/ds
  double value_bound = 0.0;
  double derivative_bound = 0.0;
};

struct HurwitzConfig {
  int direct_terms = 40;   ///< N
  int bernoulli_terms = 30;  ///< M
};

namespace detail {

inline constexpr int kMaxBernoulliIndex = 120;

// B_0, B_2, ..., B_{2 kMaxBernoulliIndex}; built once (thread-safe static init).
inline const std::vector<Real50>& bernoulli_table(int m) {
  static const std::vector<Real50> table = [] {
    std::vector<Real50> t;
    for (int j = 0; j <= kMaxBernoulliIndex; ++j) t.push_back(boost::math::bernoulli_b2n<Real50>(j));
    return t;
  }();
  if (m > kMaxBernoulliIndex) throw resource_limit_error("bernoulli_table: index too large");
  return table;
}

inline Real50 factorial50(int m) {
  Real50 f = 1;
  for (int j = 2; j <= m; ++j) f *= j;
  return f;
}

// Bound on |remainder| of the M-term Euler-Maclaurin tail for exponent s at x = N + a:
// |R| <= |(s)_{2M+1}| |B_{2M+2}| / (2M+2)! * x^{-sigma-2M-1} * |s+2M+1| / (sigma+2M+1).
// `abs_s` and `sigma` may be replaced by worst cases over a disc.
inline double em_remainder_bound(double abs_s, double sigma, double x, int m) {
  const auto& b = bernoulli_table(m + 1);
  double poch = 1.0;
  for (int i = 0; i <= 2 * m; ++i) poch *= abs_s + i;
  const double denom = sigma + 2 * m + 1;
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  const double coef = abs(b[static_cast<std::size_t>(m + 1)] / factorial50(2 * m + 2)).convert_to<double>();
  return coef * poch * std::pow(x, -sigma - 2 * m - 1) * (abs_s + 2 * m + 1) / denom;
}

}  // namespace detail

/// zeta_H(s, a) = sum_{k>=0} (k + a)^{-s} continued to s != 1, together with its s-derivative.
inline HurwitzValue hurwitz_zeta(const Complex50& s, const Real50& a, HurwitzConfig cfg = {}) {
  if (a <= 0) throw std::invalid_argument("hurwitz_zeta: a must be positive");
  const Complex50 one(1);
  if (abs(s - one) < Real50(1e-30)) throw pole_error("hurwitz_zeta: pole at s = 1");
  const int n_direct = cfg.direct_terms;
  const int m = cfg.bernoulli_terms;

  HurwitzValue out;
  out.value = Complex50(0);
  out.derivative = Complex50(0);
  for (int k = 0; k < n_direct; ++k) {
    const Real50 base = a + k;
    const Real50 lb = log(base);
    const Complex50 t = exp(-s * Complex50(lb));
    out.value += t;
    out.derivative -= Complex50(lb) * t;
  }
  const Real50 x = a + n_direct;
  const Real50 lx = log(x);
  const Complex50 xs = exp(-s * Complex50(lx));  // x^{-s}
  const Complex50 sm1 = s - one;
  const Complex50 integral = Complex50(x) * xs / sm1;  // x^{1-s}/(s-1)
  out.value += integral + xs / 2;
  out.derivative += -Complex50(lx) * integral - integral / sm1 - Complex50(lx) * xs / 2;

  const auto& b = detail::bernoulli_table(m + 1);
  Complex50 poch = s;        // (s)_{2j-1}
  Complex50 dpoch = one;     // d/ds (s)_{2j-1}
  Complex50 xpow = xs / x;   // x^{-s-2j+1}
  Real50 fact = 2;           // (2j)!
  for (int j = 1; j <= m; ++j) {
    const Complex50 c = Complex50(b[static_cast<std::size_t>(j)] / fact);
    out.value += c * poch * xpow;
    out.derivative += c * (dpoch - poch * Complex50(lx)) * xpow;
    // advance (s)_{2j-1} -> (s)_{2j+1}
    for (int r = 0; r < 2; ++r) {
      const Complex50 f = s + Complex50(2 * j - 1 + r);
      dpoch = dpoch * f + poch;
      poch = poch * f;
    }
    xpow /= x * x;
    fact *= Real50((2 * j + 1) * (2 * j + 2));
  }

  const double sigma = s.real().convert_to<double>();
  const double abs_s = abs(s).convert_to<double>();
  const double xd = x.convert_to<double>();
  out.value_bound = detail::em_remainder_bound(abs_s, sigma, xd, m);
  // Cauchy estimate on |z - s| = 1/2: |R'(s)| <= 2 max |R(z)|.
  out.derivative_bound = 2.0 * detail::em_remainder_bound(abs_s + 0.5, sigma - 0.5, xd, m);
  return out;
}

inline HurwitzValue hurwitz_zeta(Complex s, double a, HurwitzConfig cfg = {}) {
  return hurwitz_zeta(Complex50(Real50(s.real()), Real50(s.imag())), Real50(a), cfg);
}

inline Complex to_complex(const Complex50& z) {
  return {z.real().convert_to<double>(), z.imag().convert_to<double>()};
}

}  // namespace spinhess
