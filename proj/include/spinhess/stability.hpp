#pragma once

// From the modified zeta Hessian to Hess zeta'(0): eta constants, the Gamma-factor
// lemma, the odd/even leading symbols, the factorized symbols H_n, positivity radius,
// hypoellipticity estimates and symbol square roots.

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "spinhess/fiber_algebra.hpp"
#include "spinhess/log_symbol.hpp"
#include "spinhess/special_functions.hpp"

namespace spinhess {

/// eta_j = 2 H_{2j+1} - H_j, exact.
inline Rational eta(int j) {
  if (j < 1) throw std::invalid_argument("eta: j must be >= 1");
  return 2 * harmonic(2 * j + 1) - harmonic(j);
}

inline double eta_value(int j) { return to_double(eta(j)); }

struct GammaLemmaCoeff {
  bool odd = false;
  int k = 0;                ///< n = 2k+1 or n = 2k
  double coefficient = 0.0;  ///< odd: factor of W(0); even: factor of W'(0) + eta_k W(0)
  double eta_k = 0.0;        ///< even n only
};

inline GammaLemmaCoeff gammalemma_coeff(int n) {
  if (n < 2) throw std::invalid_argument("gammalemma_coeff: n must be >= 2");
  GammaLemmaCoeff c;
  c.odd = n % 2 == 1;
  c.k = n / 2;
  const double sign = (c.k % 2 == 0) ? 1.0 : -1.0;
  if (c.odd) {
    c.coefficient = -sign * std::pow(std::numbers::pi, 1.5) /
                    (std::ldexp(1.0, 2 * c.k + 2) * to_double(factorial_q(c.k + 1)));
  } else {
    c.coefficient = sign * to_double(factorial_q(c.k) / factorial_q(2 * c.k + 1));
    c.eta_k = eta_value(c.k);
  }
  return c;
}

/// F(s) = Gamma(s - n/2) Gamma(-S+1)^2 / (Gamma(s) Gamma(-2S+2)), the factor relating
/// Hess zeta(s) to W(s).
inline Complex hessian_gamma_factor(int n, Complex s) {
  const Complex S = s - 0.5 * n;
  const Complex g = cgamma(-S + 1.0);
  return cgamma(s - 0.5 * n) * g * g * rgamma(s) * rgamma(-2.0 * S + 2.0);
}

struct TaylorAtZero {
  Complex value;
  Complex derivative;
};

/// F(0) and F'(0) by the trapezoidal rule for Cauchy's integral on |s| = radius.
inline TaylorAtZero gamma_factor_taylor(int n, double radius = 0.25, int points = 64) {
  TaylorAtZero t{0.0, 0.0};
  for (int p = 0; p < points; ++p) {
    const double th = 2.0 * std::numbers::pi * (p + 0.5) / points;
    const Complex w = std::polar(1.0, th);
    const Complex f = hessian_gamma_factor(n, radius * w);
    t.value += f;
    t.derivative += f / (radius * w);
  }
  t.value /= double(points);
  t.derivative /= double(points);
  return t;
}

/// Positive constant C(n) of the factorized symbol.
inline double stability_constant(int n) {
  if (n < 2) throw std::invalid_argument("stability_constant: n must be >= 2");
  const int j = n / 2;
  const double pi = std::numbers::pi;
  if (n % 2 == 1)
    return j / (std::ldexp(1.0, 3 * j + 4) * std::pow(pi, j - 1) * to_double(factorial_q(j + 1)));
  return to_double(factorial_q(j) / factorial_q(2 * j + 1)) / (2.0 * std::pow(2.0 * pi, j));
}

/// The same constant composed from the Gamma-factor lemma and the closed form of
/// Theorem 1: odd n, -(n-1) c(n) coefficient; even n, 2 c(n) coefficient, with
/// c(n) = 2^{floor(n/2)-2} (4 pi)^{-n/2}.  Signs included.
inline double composed_stability_constant(int n) {
  const auto g = gammalemma_coeff(n);
  const double c = std::ldexp(1.0, n / 2 - 2) * std::pow(4.0 * std::numbers::pi, -0.5 * n);
  return g.odd ? -(n - 1) * c * g.coefficient : 2.0 * c * g.coefficient;
}

inline double parity_sign(int n) { return (n / 2) % 2 == 0 ? 1.0 : -1.0; }

struct StabilityLeading {
  bool even = false;
  SymTensor value;        ///< evaluated at |xi|
  SymTensor log_coeff;    ///< coefficient of log|xi| (zero for odd n)
  SymTensor const_coeff;  ///< remaining part
};

/// sigma_L[Hess zeta'(0)](xi) K.
inline StabilityLeading hess_zeta_prime_leading(int n, const Covector& xi, const SymTensor& K) {
  detail::require_dim(xi.n(), n, "hess_zeta_prime_leading");
  detail::require_dim(K.n(), n, "hess_zeta_prime_leading");
  if (n < 2) throw std::invalid_argument("hess_zeta_prime_leading: n must be >= 2");
  if (n % 2 == 1 && n < 3) throw std::invalid_argument("hess_zeta_prime_leading: odd n must be >= 3");
  const double c = parity_sign(n) * stability_constant(n) * std::pow(xi.norm(), n);
  StabilityLeading out;
  out.even = n % 2 == 0;
  if (!out.even) {
    out.const_coeff = c * phi_projection(xi, K);
    out.log_coeff = SymTensor(n);
    out.value = out.const_coeff;
    return out;
  }
  const int j = n / 2;
  const SymTensor phik = phi_projection(xi, K);
  out.log_coeff = (c * (n - 1)) * phik;
  out.const_coeff = c * diffperp_symbol(xi, K) - (c * (n - 1) * eta_value(j) / 2.0) * phik;
  out.value = out.const_coeff + std::log(xi.norm()) * out.log_coeff;
  return out;
}

/// Leading symbol of H_n applied to K: C(n)|xi|^n K (odd), C(n)|xi|^n [K + (n-1)(L - eta/2) Phi K] (even).
inline SymTensor h_leading(int n, const Covector& xi, const SymTensor& K) {
  detail::require_dim(xi.n(), n, "h_leading");
  detail::require_dim(K.n(), n, "h_leading");
  const double c = stability_constant(n) * std::pow(xi.norm(), n);
  if (n % 2 == 1) return c * K;
  const double alpha = (n - 1) * (std::log(xi.norm()) - eta_value(n / 2) / 2.0);
  return c * (K + alpha * phi_projection(xi, K));
}

/// (-1)^j P o H o P K with P = Phi (odd n) or K -> Pi K Pi (even n).
inline SymTensor factorized_leading(int n, const Covector& xi, const SymTensor& K) {
  auto proj = [&](const SymTensor& t) {
    return n % 2 == 1 ? phi_projection(xi, t) : diffperp_symbol(xi, t);
  };
  return parity_sign(n) * proj(h_leading(n, xi, proj(K)));
}

/// R = exp(eta_j / 2 - 1/(n-1)).
inline double positivity_radius(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("positivity_radius: n must be even and >= 2");
  return std::exp(eta_value(n / 2) / 2.0 - 1.0 / (n - 1));
}

/// Bracket I + (n-1)(log|xi| - eta_j/2) Phi(xi) on S^2 R^n.
inline Mat h_bracket_matrix(int n, const Covector& xi) {
  const double alpha = (n - 1) * (std::log(xi.norm()) - eta_value(n / 2) / 2.0);
  return Mat::Identity(sym_dim(n), sym_dim(n)) + alpha * phi_matrix(xi);
}

/// H_n / (C(n)) as a log-polyhomogeneous symbol on S^2 R^n of degree n.
inline LogHomSymbol h_symbol(int n) {
  if (n < 2) throw std::invalid_argument("h_symbol: n must be >= 2");
  const double d = n;
  if (n % 2 == 1) {
    return LogHomSymbol(n, d, {homogeneous_constant(Mat::Identity(sym_dim(n), sym_dim(n)), d)});
  }
  const double e = eta_value(n / 2);
  LogHomSymbol s(n, d, {homogeneous_phi(1.0, -(n - 1) * e / 2.0, d), homogeneous_phi(0.0, n - 1.0, d)});
  s.positivity_radius = positivity_radius(n);
  return s;
}

// ---------------------------------------------------------------------------
// Hypoellipticity estimates.

struct HypoGrid {
  double r_min = 10.0;
  double r_max = 1e6;
  int points_per_decade = 8;
  int directions = 6;
  std::uint64_t seed = 1;
};

struct HypoConfig {
  double slope_tol = 0.01;   ///< max log10-log10 slope of a constant over the trailing decades
  int trailing_decades = 3;
  double rho = 1.0;          ///< derivative constants use |xi|^{rho |alpha|}
};

struct ConstantTrace {
  std::string name;
  std::vector<double> per_decade;  ///< sup over each decade
  double slope = 0.0;
  bool bounded = false;
};

struct HypoReport {
  double c1 = 0.0;  ///< inf sigma_min / |xi|^{d0}
  double c2 = 0.0;  ///< sup sigma_max / |xi|^d
  std::vector<ConstantTrace> constants;
  bool passed = false;
};

namespace detail {

inline double loglog_slope(const std::vector<double>& per_decade, int trailing) {
  const int m = static_cast<int>(per_decade.size());
  const int start = std::max(0, m - trailing);
  std::vector<double> xs, ys;
  for (int i = start; i < m; ++i) {
    if (!(per_decade[static_cast<std::size_t>(i)] > 0.0) || !std::isfinite(per_decade[static_cast<std::size_t>(i)]))
      return std::numeric_limits<double>::infinity();
    xs.push_back(i);
    ys.push_back(std::log10(per_decade[static_cast<std::size_t>(i)]));
  }
  if (xs.size() < 2) return 0.0;
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

inline std::vector<Vec> unit_directions(int n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<Vec> dirs;
  dirs.push_back(Vec::Unit(n, 0));
  while (static_cast<int>(dirs.size()) < count) {
    Vec v(n);
    for (int a = 0; a < n; ++a) v(a) = nd(rng);
    dirs.push_back(v.normalized());
  }
  return dirs;
}

}  // namespace detail

/// Empirical check of  C1 |xi|^{d0} <= |q| <= C2 |xi|^d  and  |q^{-1} d^alpha q| <= C |xi|^{-|alpha|}
/// for |alpha| <= max_order (<= 2) on a log-spaced grid.  A constant is "bounded" when the
/// least-squares slope of log10(sup per decade) over the trailing decades is <= slope_tol.
inline HypoReport hypoellipticity_check(const LogHomSymbol& q, double d, double d0, const HypoGrid& grid,
                                        int max_order, HypoConfig cfg = {}) {
  if (d0 > d) throw std::invalid_argument("hypoellipticity_check: requires d0 <= d");
  if (max_order < 0 || max_order > 2) throw std::invalid_argument("hypoellipticity_check: max_order in 0..2");
  if (!(grid.r_min > 0.0) || grid.r_max <= grid.r_min)
    throw std::invalid_argument("hypoellipticity_check: invalid grid");
  if (grid.r_min < q.positivity_radius)
    throw std::invalid_argument("hypoellipticity_check: grid starts below the positivity radius");
  const int n = q.n();
  const auto dirs = detail::unit_directions(n, grid.directions, grid.seed);
  const double l0 = std::log10(grid.r_min), l1 = std::log10(grid.r_max);
  const int decades = std::max(1, static_cast<int>(std::ceil(l1 - l0 - 1e-12)));
  const int total_pts = decades * grid.points_per_decade;

  std::vector<std::string> names = {"lower |xi|^d0/sigma_min", "upper sigma_max/|xi|^d"};
  if (max_order >= 1) names.emplace_back("order1 |q^-1 dq| |xi|");
  if (max_order >= 2) names.emplace_back("order2 |q^-1 ddq| |xi|^2");
  HypoReport rep;
  rep.c1 = std::numeric_limits<double>::infinity();
  for (auto& nm : names) rep.constants.push_back({nm, std::vector<double>(static_cast<std::size_t>(decades), 0.0), 0.0, false});

  for (int p = 0; p <= total_pts; ++p) {
    const double lr = std::min(l1, l0 + double(p) / grid.points_per_decade);
    const double r = std::pow(10.0, lr);
    const int dec = std::min(decades - 1, static_cast<int>(std::floor((lr - l0) + 1e-12)));
    for (const Vec& dir : dirs) {
      const Vec xi = r * dir;
      const MatJet jet = q.jet(xi);
      Eigen::JacobiSVD<Mat> svd(jet.v);
      const double smax = svd.singularValues()(0);
      const double smin = svd.singularValues()(svd.singularValues().size() - 1);
      auto bump = [&](std::size_t idx, double val) {
        auto& slot = rep.constants[idx].per_decade[static_cast<std::size_t>(dec)];
        slot = std::isfinite(val) ? std::max(slot, val) : std::numeric_limits<double>::infinity();
      };
      rep.c1 = std::min(rep.c1, smin / std::pow(r, d0));
      rep.c2 = std::max(rep.c2, smax / std::pow(r, d));
      bump(0, smin > 0.0 ? std::pow(r, d0) / smin : std::numeric_limits<double>::infinity());
      bump(1, smax / std::pow(r, d));
      if (max_order >= 1 && smin > 0.0) {
        const auto lu = jet.v.fullPivLu();
        double worst1 = 0.0, worst2 = 0.0;
        for (int a = 0; a < n; ++a) worst1 = std::max(worst1, lu.solve(jet.g[static_cast<std::size_t>(a)]).norm());
        bump(2, worst1 * std::pow(r, cfg.rho));
        if (max_order >= 2) {
          for (const auto& hm : jet.h) worst2 = std::max(worst2, lu.solve(hm).norm());
          bump(3, worst2 * std::pow(r, 2.0 * cfg.rho));
        }
      } else if (max_order >= 1) {
        for (std::size_t i = 2; i < rep.constants.size(); ++i) bump(i, std::numeric_limits<double>::infinity());
      }
    }
  }
  rep.passed = true;
  for (auto& c : rep.constants) {
    c.slope = detail::loglog_slope(c.per_decade, cfg.trailing_decades);
    c.bounded = std::isfinite(c.slope) && c.slope <= cfg.slope_tol;
    rep.passed = rep.passed && c.bounded;
  }
  return rep;
}

struct InverseDecayReport {
  double max_scaled = 0.0;  ///< sup |sigma^{-1} Phi| log|xi|
  double slope = 0.0;       ///< trailing-decade slope of that sup
  bool passed = false;
};

/// Checks |sigma^{-1} Phi| <= C / log|xi| for sigma = I + (n-1)(log|xi| - eta/2) Phi using
/// the projection inverse formula.
inline InverseDecayReport inverse_phi_decay(int n, const HypoGrid& grid, HypoConfig cfg = {}) {
  if (n % 2 != 0 || n < 2) throw std::invalid_argument("inverse_phi_decay: n must be even");
  const double R = positivity_radius(n);
  if (grid.r_min <= R) throw std::invalid_argument("inverse_phi_decay: grid starts below the positivity radius");
  const auto dirs = detail::unit_directions(n, grid.directions, grid.seed);
  const double l0 = std::log10(grid.r_min), l1 = std::log10(grid.r_max);
  const int decades = std::max(1, static_cast<int>(std::ceil(l1 - l0 - 1e-12)));
  std::vector<double> per_decade(static_cast<std::size_t>(decades), 0.0);
  InverseDecayReport rep;
  for (int p = 0; p <= decades * grid.points_per_decade; ++p) {
    const double lr = std::min(l1, l0 + double(p) / grid.points_per_decade);
    const double r = std::pow(10.0, lr);
    const int dec = std::min(decades - 1, static_cast<int>(std::floor((lr - l0) + 1e-12)));
    for (const Vec& dir : dirs) {
      const Covector xi(r * dir);
      const Mat phi = phi_matrix(xi);
      const double alpha = (n - 1) * (std::log(r) - eta_value(n / 2) / 2.0);
      const Mat inv = inv_identity_plus_proj(alpha, phi);
      const double v = (inv * phi).norm() * std::log(r);
      per_decade[static_cast<std::size_t>(dec)] = std::max(per_decade[static_cast<std::size_t>(dec)], v);
      rep.max_scaled = std::max(rep.max_scaled, v);
    }
  }
  if (rep.max_scaled < 1e-12) {  // Phi = 0 (n = 2)
    rep.passed = true;
    return rep;
  }
  rep.slope = detail::loglog_slope(per_decade, cfg.trailing_decades);
  rep.passed = std::isfinite(rep.slope) && rep.slope <= cfg.slope_tol;
  return rep;
}

/// Principal square root of a symmetric positive definite sample.
inline Mat symbol_sqrt(const Mat& q) {
  detail::require(q.rows() == q.cols(), "symbol_sqrt: matrix must be square");
  const double scale = std::max(1.0, q.cwiseAbs().maxCoeff());
  if ((q - q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("symbol_sqrt: matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(q);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::domain_error("symbol_sqrt: non-positive eigenvalue");
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace spinhess
