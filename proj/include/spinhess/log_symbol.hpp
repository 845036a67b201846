#pragma once

// Matrix-valued log-polyhomogeneous symbols  q(xi) = sum_l q_{d,l}(xi) log^l |xi|,
// with value, gradient and Hessian in xi (jets) for the hypoellipticity estimates.

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "spinhess/fiber_algebra.hpp"

namespace spinhess {

/// Matrix-valued function of xi in R^n with first and second derivatives.
struct MatJet {
  Mat v;
  std::vector<Mat> g;  ///< d_a, size n
  std::vector<Mat> h;  ///< d_a d_b, flattened a * n + b

  static MatJet constant(const Mat& m, int n) {
    MatJet j;
    j.v = m;
    j.g.assign(static_cast<std::size_t>(n), Mat::Zero(m.rows(), m.cols()));
    j.h.assign(static_cast<std::size_t>(n * n), Mat::Zero(m.rows(), m.cols()));
    return j;
  }
  int n() const { return static_cast<int>(g.size()); }

  MatJet operator+(const MatJet& o) const {
    MatJet r = *this;
    r.v += o.v;
    for (std::size_t a = 0; a < g.size(); ++a) r.g[a] += o.g[a];
    for (std::size_t a = 0; a < h.size(); ++a) r.h[a] += o.h[a];
    return r;
  }
  MatJet operator-(const MatJet& o) const { return *this + o * -1.0; }
  MatJet operator*(double c) const {
    MatJet r = *this;
    r.v *= c;
    for (auto& m : r.g) m *= c;
    for (auto& m : r.h) m *= c;
    return r;
  }
  /// Leibniz rule for the matrix product.
  MatJet operator*(const MatJet& o) const {
    const int n = this->n();
    MatJet r;
    r.v = v * o.v;
    r.g.resize(static_cast<std::size_t>(n));
    r.h.resize(static_cast<std::size_t>(n * n));
    for (int a = 0; a < n; ++a) r.g[ua(a)] = g[ua(a)] * o.v + v * o.g[ua(a)];
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const auto ab = static_cast<std::size_t>(a * n + b);
        r.h[ab] = h[ab] * o.v + g[ua(a)] * o.g[ua(b)] + g[ua(b)] * o.g[ua(a)] + v * o.h[ab];
      }
    return r;
  }
  /// Apply a linear map entrywise to all components.
  template <class F>
  MatJet map(F&& f) const {
    MatJet r;
    r.v = f(v);
    for (const auto& m : g) r.g.push_back(f(m));
    for (const auto& m : h) r.h.push_back(f(m));
    return r;
  }

 private:
  static std::size_t ua(int a) { return static_cast<std::size_t>(a); }
};

/// Scalar |xi|^d as a 1x1 jet.
inline MatJet norm_power_jet(const Vec& xi, double d) {
  const int n = static_cast<int>(xi.size());
  const double r2 = xi.squaredNorm();
  const double f = std::pow(r2, 0.5 * d);
  MatJet j = MatJet::constant(Mat::Constant(1, 1, f), n);
  for (int a = 0; a < n; ++a) {
    j.g[static_cast<std::size_t>(a)](0, 0) = d * f * xi(a) / r2;
    for (int b = 0; b < n; ++b)
      j.h[static_cast<std::size_t>(a * n + b)](0, 0) =
          d * f / r2 * (detail::kron(a, b) + (d - 2.0) * xi(a) * xi(b) / r2);
  }
  return j;
}

/// Pi_xi^perp = I - xi xi^T / |xi|^2 as a jet.
inline MatJet proj_perp_jet(const Vec& xi) {
  const int n = static_cast<int>(xi.size());
  const double r = 1.0 / xi.squaredNorm();
  MatJet p = MatJet::constant(Mat(Mat::Identity(n, n) - r * xi * xi.transpose()), n);
  const Mat xx = xi * xi.transpose();
  for (int a = 0; a < n; ++a) {
    const Vec ea = Vec::Unit(n, a);
    const Mat dxx = ea * xi.transpose() + xi * ea.transpose();
    const double dr = -2.0 * xi(a) * r * r;
    p.g[static_cast<std::size_t>(a)] = -(dxx * r + xx * dr);
    for (int b = 0; b < n; ++b) {
      const Vec eb = Vec::Unit(n, b);
      const Mat dxx_b = eb * xi.transpose() + xi * eb.transpose();
      const Mat ddxx = ea * eb.transpose() + eb * ea.transpose();
      const double dr_b = -2.0 * xi(b) * r * r;
      const double ddr = -2.0 * detail::kron(a, b) * r * r + 8.0 * xi(a) * xi(b) * r * r * r;
      p.h[static_cast<std::size_t>(a * n + b)] = -(ddxx * r + dxx * dr_b + dxx_b * dr + xx * ddr);
    }
  }
  return p;
}

/// Phi(xi) as a jet of matrices on S^2 R^n in the orthonormal basis (see sym_basis).
inline MatJet phi_jet(const Vec& xi) {
  const int n = static_cast<int>(xi.size());
  if (n < 2) throw std::invalid_argument("phi_jet: requires n >= 2");
  const MatJet p = proj_perp_jet(xi);
  const auto basis = sym_basis(n);
  const int m = sym_dim(n);
  MatJet out = MatJet::constant(Mat::Zero(m, m), n);
  for (int c = 0; c < m; ++c) {
    const MatJet e = MatJet::constant(basis[static_cast<std::size_t>(c)].matrix(), n);
    const MatJet pkp = p * e * p;
    const MatJet pk = p * e;
    // tr(Pi K) Pi as a jet: scalar jet times matrix jet.
    MatJet tr = pk.map([](const Mat& x) { return Mat::Constant(1, 1, x.trace()); });
    MatJet tr_p;
    tr_p.v = tr.v(0, 0) * p.v;
    for (int a = 0; a < n; ++a)
      tr_p.g.push_back(tr.g[static_cast<std::size_t>(a)](0, 0) * p.v + tr.v(0, 0) * p.g[static_cast<std::size_t>(a)]);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const auto ab = static_cast<std::size_t>(a * n + b);
        tr_p.h.push_back(tr.h[ab](0, 0) * p.v + tr.g[static_cast<std::size_t>(a)](0, 0) * p.g[static_cast<std::size_t>(b)] +
                         tr.g[static_cast<std::size_t>(b)](0, 0) * p.g[static_cast<std::size_t>(a)] + tr.v(0, 0) * p.h[ab]);
      }
    const MatJet phi_e = pkp - tr_p * (1.0 / (n - 1));
    const MatJet col = phi_e.map([&](const Mat& x) {
      Mat sym = 0.5 * (x + x.transpose());
      return Mat(sym_coords(SymTensor(sym)));
    });
    out.v.col(c) = col.v;
    for (int a = 0; a < n; ++a) out.g[static_cast<std::size_t>(a)].col(c) = col.g[static_cast<std::size_t>(a)];
    for (std::size_t ab = 0; ab < out.h.size(); ++ab) out.h[ab].col(c) = col.h[ab];
  }
  return out;
}

/// Scalar jet times matrix jet.
inline MatJet scale_jet(const MatJet& scalar, const MatJet& m) {
  const int n = m.n();
  MatJet r;
  const double f = scalar.v(0, 0);
  r.v = f * m.v;
  for (int a = 0; a < n; ++a)
    r.g.push_back(scalar.g[static_cast<std::size_t>(a)](0, 0) * m.v + f * m.g[static_cast<std::size_t>(a)]);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const auto ab = static_cast<std::size_t>(a * n + b);
      r.h.push_back(scalar.h[ab](0, 0) * m.v + scalar.g[static_cast<std::size_t>(a)](0, 0) * m.g[static_cast<std::size_t>(b)] +
                    scalar.g[static_cast<std::size_t>(b)](0, 0) * m.g[static_cast<std::size_t>(a)] + f * m.h[ab]);
    }
  return r;
}

/// sum_{l=0}^{k} q_{d,l}(xi) log^l |xi| with each q_{d,l} positively homogeneous of degree d.
class LogHomSymbol {
 public:
  using Coefficient = std::function<MatJet(const Vec&)>;

  LogHomSymbol(int n, double degree, std::vector<Coefficient> terms)
      : n_(n), degree_(degree), terms_(std::move(terms)) {
    if (n < 1) throw std::invalid_argument("LogHomSymbol: n must be >= 1");
    if (terms_.empty()) throw std::invalid_argument("LogHomSymbol: needs at least one term");
  }

  int n() const { return n_; }
  double degree() const { return degree_; }
  int log_degree() const { return static_cast<int>(terms_.size()) - 1; }

  /// Radius below which the symbol is not claimed positive; 0 if unconditional.
  double positivity_radius = 0.0;

  Mat coefficient(int l, const Vec& xi) const { return terms_.at(static_cast<std::size_t>(l))(xi).v; }

  /// Full jet of q at xi, |xi| > 0.
  MatJet jet(const Vec& xi) const {
    detail::require_dim(xi.size(), n_, "LogHomSymbol::jet");
    const double r2 = xi.squaredNorm();
    if (!(r2 > 0.0)) throw std::invalid_argument("LogHomSymbol: xi must be nonzero");
    const double L = 0.5 * std::log(r2);
    std::optional<MatJet> total;
    for (int l = 0; l <= log_degree(); ++l) {
      // log^l |xi| as a scalar jet.
      MatJet lg = MatJet::constant(Mat::Constant(1, 1, std::pow(L, l)), n_);
      if (l > 0) {
        const double p1 = l * std::pow(L, l - 1);
        const double p2 = l > 1 ? l * (l - 1) * std::pow(L, l - 2) : 0.0;
        for (int a = 0; a < n_; ++a) {
          lg.g[static_cast<std::size_t>(a)](0, 0) = p1 * xi(a) / r2;
          for (int b = 0; b < n_; ++b)
            lg.h[static_cast<std::size_t>(a * n_ + b)](0, 0) =
                p2 * xi(a) * xi(b) / (r2 * r2) +
                p1 * (detail::kron(a, b) / r2 - 2.0 * xi(a) * xi(b) / (r2 * r2));
        }
      }
      MatJet term = scale_jet(lg, terms_[static_cast<std::size_t>(l)](xi));
      total = total ? *total + term : term;
    }
    return *total;
  }

  Mat evaluate(const Vec& xi) const { return jet(xi).v; }

  /// Model evaluation used on lattices: log is applied to [xi] (log[xi] = 0 for |xi| < 1),
  /// |xi|^d is literal, and the direction at xi = 0 is e_1.
  Mat evaluate_bracket(const Vec& xi) const {
    detail::require_dim(xi.size(), n_, "LogHomSymbol::evaluate_bracket");
    const double r = xi.norm();
    if (r >= 1.0) return evaluate(xi);
    const Vec dir = r > 0.0 ? Vec(xi / r) : Vec(Vec::Unit(n_, 0));
    const double scale = r > 0.0 ? std::pow(r, degree_) : (degree_ == 0.0 ? 1.0 : 0.0);
    return scale * terms_[0](dir).v;
  }

 private:
  int n_;
  double degree_;
  std::vector<Coefficient> terms_;
};

/// |xi|^d times a constant matrix.
inline LogHomSymbol::Coefficient homogeneous_constant(const Mat& m, double d) {
  return [m, d](const Vec& xi) {
    const MatJet s = norm_power_jet(xi, d);
    return scale_jet(s, MatJet::constant(m, static_cast<int>(xi.size())));
  };
}

/// |xi|^d (a I + b Phi(xi)) on S^2 R^n.
inline LogHomSymbol::Coefficient homogeneous_phi(double a, double b, double d) {
  return [a, b, d](const Vec& xi) {
    const MatJet s = norm_power_jet(xi, d);
    MatJet m = phi_jet(xi) * b;
    m.v += a * Mat::Identity(m.v.rows(), m.v.cols());
    return scale_jet(s, m);
  };
}

}  // namespace spinhess
