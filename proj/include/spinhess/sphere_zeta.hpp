#pragma once

// Zeta function and determinant of D^2 on the round sphere S^n: eigenvalues (n/2 + k)^2
// with multiplicity 2 * 2^{floor(n/2)} * binom(k + n - 1, k).

#include <string>
#include <vector>

#include "spinhess/hurwitz_zeta.hpp"
#include "spinhess/special_functions.hpp"

namespace spinhess {

struct SphereSpectrum {
  int n = 0;
  std::vector<std::pair<double, double>> entries;  ///< (eigenvalue, multiplicity)
};

inline double sphere_multiplicity(int n, int k) {
  double b = 1.0;  // binom(k + n - 1, k)
  for (int i = 1; i <= n - 1; ++i) b = b * (k + i) / i;
  return 2.0 * std::ldexp(1.0, n / 2) * std::round(b);
}

inline SphereSpectrum dirac_sq_spectrum(int n, int k_max) {
  if (n < 2) throw std::invalid_argument("dirac_sq_spectrum: n must be >= 2");
  if (k_max < 0) throw std::invalid_argument("dirac_sq_spectrum: k_max must be >= 0");
  SphereSpectrum sp;
  sp.n = n;
  for (int k = 0; k <= k_max; ++k) {
    const double a = 0.5 * n + k;
    sp.entries.emplace_back(a * a, sphere_multiplicity(n, k));
  }
  return sp;
}

/// Exponent of N(lambda) ~ c lambda^p fitted by least squares on log N vs log lambda over
/// the upper half of the spectrum.
inline double weyl_exponent(const SphereSpectrum& sp) {
  std::vector<double> xs, ys;
  double count = 0.0;
  for (std::size_t i = 0; i < sp.entries.size(); ++i) {
    count += sp.entries[i].second;
    if (2 * i >= sp.entries.size()) {
      xs.push_back(std::log(sp.entries[i].first));
      ys.push_back(std::log(count));
    }
  }
  if (xs.size() < 2) throw std::invalid_argument("weyl_exponent: spectrum too short");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= xs.size();
  my /= ys.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
  return sxy / sxx;
}

/// Exact coefficients c_m of P(a) = prod_{i=1}^{n-1} (a - n/2 + i) / (n-1)!, so that
/// binom(k+n-1, k) = P(k + n/2).
inline std::vector<Rational> multiplicity_polynomial(int n) {
  std::vector<Rational> c = {Rational(1)};
  for (int i = 1; i <= n - 1; ++i) {
    const Rational shift = Rational(i) - Rational(n, 2);  // factor (a + shift)
    std::vector<Rational> next(c.size() + 1, Rational(0));
    for (std::size_t m = 0; m < c.size(); ++m) {
      next[m + 1] += c[m];
      next[m] += c[m] * shift;
    }
    c = std::move(next);
  }
  const Rational f = factorial_q(n - 1);
  for (auto& x : c) x /= f;
  return c;
}

inline double sphere_mult0(int n) { return 2.0 * std::ldexp(1.0, n / 2); }

/// Poles of the continuation: s = (m+1)/2 for every m with c_m != 0.
inline std::vector<double> sphere_zeta_poles(int n) {
  std::vector<double> poles;
  const auto c = multiplicity_polynomial(n);
  for (std::size_t m = 0; m < c.size(); ++m)
    if (c[m] != 0) poles.push_back(0.5 * (double(m) + 1.0));
  return poles;
}

struct ZetaValue {
  Complex value;
  double error_bound = 0.0;
};

/// Partial sum over k < k_max plus the Euler-Maclaurin tail  int_M^inf f + f(M)/2 - f'(M)/12,
/// with |remainder| <= (1/12) int_M^inf |f''|.
inline ZetaValue zeta_direct(int n, Complex s, int k_max) {
  if (n < 2) throw std::invalid_argument("zeta_direct: n must be >= 2");
  if (!(2.0 * s.real() > n)) throw std::domain_error("zeta_direct: requires Re(2s) > n (divergent series)");
  if (k_max < 1) throw std::invalid_argument("zeta_direct: k_max must be >= 1");
  const auto cq = multiplicity_polynomial(n);
  std::vector<double> c;
  for (const auto& x : cq) c.push_back(to_double(x));
  const double mult0 = sphere_mult0(n);
  Complex sum = 0.0;
  for (int k = k_max - 1; k >= 0; --k) {
    const double a = 0.5 * n + k;
    sum += sphere_multiplicity(n, k) * std::exp(-2.0 * s * std::log(a));
  }
  const double A = 0.5 * n + k_max;
  const double lA = std::log(A);
  Complex integral = 0.0, fM = 0.0, dfM = 0.0;
  double bound = 0.0;
  const double sigma = s.real();
  for (std::size_t m = 0; m < c.size(); ++m) {
    if (c[m] == 0.0) continue;
    const Complex e = double(m) - 2.0 * s;  // f = sum c_m a^{e}
    integral += c[m] * std::exp((e + 1.0) * lA) / (-(e + 1.0));
    fM += c[m] * std::exp(e * lA);
    dfM += c[m] * e * std::exp((e - 1.0) * lA);
    const double re = double(m) - 2.0 * sigma;
    bound += std::abs(c[m]) * std::abs(e * (e - 1.0)) * std::pow(A, re - 1.0) / (-(re - 1.0));
  }
  const Complex tail = mult0 * (integral + 0.5 * fM - dfM / 12.0);
  return {sum + tail, mult0 * bound / 12.0};
}

/// zeta(s) = mult0 sum_m c_m zeta_H(2s - m, n/2), with d/ds.
struct ContinuedZeta {
  Complex value;
  Complex derivative;
  double value_bound = 0.0;
  double derivative_bound = 0.0;
};

inline ContinuedZeta zeta_continued_full(int n, Complex s, double pole_tol = 1e-8) {
  if (n < 2) throw std::invalid_argument("zeta_continued: n must be >= 2");
  for (double p : sphere_zeta_poles(n))
    if (std::abs(s - p) < pole_tol) throw pole_error("zeta_continued: s = " + std::to_string(p) + " is a pole");
  const auto c = multiplicity_polynomial(n);
  const Real50 mult0(sphere_mult0(n));
  const Complex50 s50(Real50(s.real()), Real50(s.imag()));
  const Real50 a = Real50(n) / 2;
  Complex50 v(0), dv(0);
  double vb = 0.0, db = 0.0;
  for (std::size_t m = 0; m < c.size(); ++m) {
    if (c[m] == 0) continue;
    const Real50 cm = Real50(numerator(c[m])) / Real50(denominator(c[m]));
    const HurwitzValue h = hurwitz_zeta(Complex50(2) * s50 - Complex50(Real50(m)), a);
    v += Complex50(cm) * h.value;
    dv += Complex50(2 * cm) * h.derivative;
    const double cd = abs(cm).convert_to<double>();
    vb += cd * h.value_bound;
    db += 2.0 * cd * h.derivative_bound;
  }
  const double m0 = mult0.convert_to<double>();
  return {to_complex(Complex50(mult0) * v), to_complex(Complex50(mult0) * dv), m0 * vb, m0 * db};
}

inline Complex zeta_continued(int n, Complex s) { return zeta_continued_full(n, s).value; }

struct ZetaResult {
  int n = 0;
  double zeta_at_0 = 0.0;
  double zeta_prime_at_0 = 0.0;
  double log_det = 0.0;  ///< -zeta'(0)
  double det = 0.0;
  std::string method = "continued";
};

inline ZetaResult det_dirac_sq(int n) {
  const auto z = zeta_continued_full(n, 0.0);
  ZetaResult r;
  r.n = n;
  r.zeta_at_0 = z.value.real();
  r.zeta_prime_at_0 = z.derivative.real();
  r.log_det = -r.zeta_prime_at_0;
  r.det = std::exp(r.log_det);
  return r;
}

struct PatternRow {
  int n = 0;
  std::string extremal_type;  ///< "local max" or "local min"
  int sign_logdet = 0;
  double logdet = 0.0;
  double det = 0.0;
};

/// Extremal type from (-1)^{floor(n/2)}: local max when floor(n/2) is even.
inline std::string extremal_type(int n) { return (n / 2) % 2 == 0 ? "local max" : "local min"; }

inline std::vector<PatternRow> pattern_table(int n_max) {
  if (n_max < 4) throw std::invalid_argument("pattern_table: n_max must be >= 4");
  std::vector<PatternRow> rows;
  for (int n = 2; n <= n_max; ++n) {
    const auto z = det_dirac_sq(n);
    rows.push_back({n, extremal_type(n), z.log_det > 0 ? 1 : (z.log_det < 0 ? -1 : 0), z.log_det, z.det});
  }
  return rows;
}

}  // namespace spinhess
