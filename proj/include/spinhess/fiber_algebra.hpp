#pragma once

// Fiberwise linear algebra on symmetric 2-tensors and the leading symbols of the
// gauge-breaking projections.

#include <cmath>
#include <vector>

#include "spinhess/common.hpp"

namespace spinhess {

/// Real symmetric n x n tensor; the fiber metric is the Frobenius product.
class SymTensor {
 public:
  SymTensor() = default;
  explicit SymTensor(int n) : m_(Mat::Zero(n, n)) {}

  /// Accepts a matrix that is symmetric to `tol` and stores its symmetric part.
  explicit SymTensor(const Mat& m, double tol = 1e-12) {
    detail::require(m.rows() == m.cols(), "SymTensor: matrix must be square");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol * scale)
      throw std::invalid_argument("SymTensor: matrix is not symmetric");
    m_ = 0.5 * (m + m.transpose());
  }

  static SymTensor identity(int n) { return SymTensor(Mat(Mat::Identity(n, n))); }

  /// e_i (x) e_j + e_j (x) e_i for i != j, e_i (x) e_i otherwise.
  static SymTensor unit(int n, int i, int j) {
    Mat m = Mat::Zero(n, n);
    m(i, j) = 1.0;
    m(j, i) = 1.0;
    return SymTensor(m);
  }

  int n() const { return static_cast<int>(m_.rows()); }
  const Mat& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }
  double trace() const { return m_.trace(); }
  double frobenius(const SymTensor& other) const { return m_.cwiseProduct(other.m_).sum(); }
  double norm() const { return m_.norm(); }

  SymTensor operator+(const SymTensor& o) const { return from_symmetric(m_ + o.m_); }
  SymTensor operator-(const SymTensor& o) const { return from_symmetric(m_ - o.m_); }
  SymTensor operator*(double a) const { return from_symmetric(a * m_); }
  friend SymTensor operator*(double a, const SymTensor& t) { return t * a; }

 private:
  static SymTensor from_symmetric(const Mat& m) {
    SymTensor t;
    t.m_ = m;
    return t;
  }
  Mat m_;
};

/// Nonzero cotangent vector.
class Covector {
 public:
  explicit Covector(Vec xi) : xi_(std::move(xi)) {
    const double nrm = xi_.norm();
    if (!(nrm > 0.0) || !std::isfinite(nrm))
      throw std::invalid_argument("Covector: xi must be nonzero and finite");
  }
  static Covector basis(int n, int i) { return Covector(Vec::Unit(n, i)); }

  int n() const { return static_cast<int>(xi_.size()); }
  const Vec& vec() const { return xi_; }
  double operator()(int i) const { return xi_(i); }
  double norm() const { return xi_.norm(); }
  double norm2() const { return xi_.squaredNorm(); }
  Covector scaled(double lambda) const { return Covector(lambda * xi_); }

 private:
  Vec xi_;
};

/// Orthogonal projection onto span(xi): xi xi^T / |xi|^2.
inline Mat proj_par(const Covector& xi) { return xi.vec() * xi.vec().transpose() / xi.norm2(); }

/// Orthogonal projection onto xi^perp.
inline Mat proj_perp(const Covector& xi) {
  return Mat::Identity(xi.n(), xi.n()) - proj_par(xi);
}

/// Symmetrized product xi (.) omega = xi omega^T + omega xi^T, a gauge (diff) direction.
inline SymTensor sym_product(const Vec& a, const Vec& b) {
  detail::require_dim(b.size(), a.size(), "sym_product");
  return SymTensor(Mat(a * b.transpose() + b * a.transpose()));
}

/// Leading symbol of the projection onto diff^perp: Pi K Pi.
inline SymTensor diffperp_symbol(const Covector& xi, const SymTensor& k) {
  detail::require_dim(k.n(), xi.n(), "diffperp_symbol");
  const Mat p = proj_perp(xi);
  return SymTensor(Mat(p * k.matrix() * p), 1e-10);
}

/// Leading symbol of the projection onto (conf + diff)^perp:
/// Pi K Pi - tr(Pi K) Pi / (n - 1).
inline SymTensor confdiffperp_symbol(const Covector& xi, const SymTensor& k) {
  detail::require_dim(k.n(), xi.n(), "confdiffperp_symbol");
  const int n = xi.n();
  if (n < 2) throw std::invalid_argument("confdiffperp_symbol: requires n >= 2");
  const Mat p = proj_perp(xi);
  const double tr = (p * k.matrix()).trace();
  return SymTensor(Mat(p * k.matrix() * p - tr / (n - 1) * p), 1e-10);
}

/// The projection Phi(x, xi) on S^2; same action as confdiffperp_symbol.
inline SymTensor phi_projection(const Covector& xi, const SymTensor& k) {
  return confdiffperp_symbol(xi, k);
}

/// (I + alpha P)^{-1} = I - alpha / (alpha + 1) P for an orthogonal projection P.
inline Mat inv_identity_plus_proj(double alpha, const Mat& p, double proj_tol = 1e-10) {
  detail::require(p.rows() == p.cols(), "inv_identity_plus_proj: P must be square");
  if (std::abs(alpha + 1.0) < 1e-14)
    throw std::domain_error("inv_identity_plus_proj: alpha = -1 is singular");
  const double scale = std::max(1.0, p.cwiseAbs().maxCoeff());
  if ((p * p - p).cwiseAbs().maxCoeff() > proj_tol * scale)
    throw std::invalid_argument("inv_identity_plus_proj: P is not idempotent");
  return Mat::Identity(p.rows(), p.cols()) - alpha / (alpha + 1.0) * p;
}

struct DivGradSymbols {
  Mat symbol;      ///< |xi|^2 (I + Pi_xi)
  Mat parametrix;  ///< |xi|^{-2} (I + Pi_xi^perp) / 2
};

/// Leading symbol of div o grad-sym on 1-forms, and its parametrix symbol.
inline DivGradSymbols div_gradsym_symbol(const Covector& xi) {
  const int n = xi.n();
  const Mat id = Mat::Identity(n, n);
  return {xi.norm2() * (id + proj_par(xi)), 0.5 / xi.norm2() * (id + proj_perp(xi))};
}

// ---------------------------------------------------------------------------
// Coordinates on S^2 R^n.  The basis {E_ii} U {(E_ij + E_ji)/sqrt 2 : i < j} is
// Frobenius-orthonormal, so self-adjoint maps on SymTensor become symmetric matrices.

inline int sym_dim(int n) { return n * (n + 1) / 2; }

inline std::vector<SymTensor> sym_basis(int n) {
  std::vector<SymTensor> basis;
  basis.reserve(static_cast<std::size_t>(sym_dim(n)));
  for (int i = 0; i < n; ++i) basis.push_back(SymTensor::unit(n, i, i));
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) basis.push_back(r * SymTensor::unit(n, i, j));
  return basis;
}

inline Vec sym_coords(const SymTensor& k) {
  const int n = k.n();
  Vec c(sym_dim(n));
  int idx = 0;
  for (int i = 0; i < n; ++i) c(idx++) = k(i, i);
  const double r = std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c(idx++) = r * k(i, j);
  return c;
}

inline SymTensor sym_from_coords(int n, const Vec& c) {
  detail::require_dim(c.size(), sym_dim(n), "sym_from_coords");
  Mat m = Mat::Zero(n, n);
  int idx = 0;
  for (int i = 0; i < n; ++i) m(i, i) = c(idx++);
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = m(j, i) = r * c(idx);
      ++idx;
    }
  return SymTensor(m);
}

/// Matrix of a linear map on S^2 R^n in the orthonormal basis.
template <class LinearMap>
Mat sym_operator_matrix(int n, LinearMap&& op) {
  const auto basis = sym_basis(n);
  Mat out(sym_dim(n), sym_dim(n));
  for (std::size_t c = 0; c < basis.size(); ++c)
    out.col(static_cast<Eigen::Index>(c)) = sym_coords(op(basis[c]));
  return out;
}

/// Matrix of Phi(xi) on S^2 R^n.
inline Mat phi_matrix(const Covector& xi) {
  return sym_operator_matrix(xi.n(), [&](const SymTensor& k) { return phi_projection(xi, k); });
}

inline Mat diffperp_matrix(const Covector& xi) {
  return sym_operator_matrix(xi.n(), [&](const SymTensor& k) { return diffperp_symbol(xi, k); });
}

}  // namespace spinhess
