#pragma once

// First variation of the Dirac operator squared: coefficient endomorphisms of the
// local form (D k dd + A (dk) d + B (ddk)), the symbols sigma^(0,1,2), a flat-space
// operator oracle, constant-metric isospectrality on flat tori, and the variation of
// the Levi-Civita connection.

#include <map>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "spinhess/clifford.hpp"
#include "spinhess/fiber_algebra.hpp"
#include "spinhess/spectrum_report.hpp"

namespace spinhess {

/// D^{ij}_{kl}, A^{ij}_{kl}, B^{ij}_{kl} stored densely, index order (i, j, k, l).
class CoeffTensor {
 public:
  explicit CoeffTensor(const GammaRep& rep) : n_(rep.n), dim_e_(rep.dim_e) {
    const auto n4 = static_cast<std::size_t>(n_) * n_ * n_ * n_;
    a_.resize(n4);
    b_.resize(n4);
    const CMat id = CMat::Identity(dim_e_, dim_e_);
    using detail::kron;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k)
          for (int l = 0; l < n_; ++l) {
            CMat a = -0.5 * ((kron(k, l) * kron(i, j) - kron(j, l) * kron(i, k)) * id);
            if (j == l) a -= 0.5 * rep[k] * rep[i];
            CMat b = 0.25 * kron(i, j) * (rep[l] * rep[k]) - 0.25 * kron(i, k) * (rep[l] * rep[j]);
            a_[index(i, j, k, l)] = std::move(a);
            b_[index(i, j, k, l)] = std::move(b);
          }
  }

  int n() const { return n_; }
  int dim_e() const { return dim_e_; }

  CMat D(int i, int j, int k, int l) const {
    return (detail::kron(i, k) * detail::kron(j, l)) * CMat::Identity(dim_e_, dim_e_);
  }
  const CMat& A(int i, int j, int k, int l) const { return a_[index(i, j, k, l)]; }
  const CMat& B(int i, int j, int k, int l) const { return b_[index(i, j, k, l)]; }

  enum class Family { D, A, B };

  /// X_{(a,b)} = sum_{ij} C^{ij}_{ab} k_ij for the chosen family; returned for all (a, b),
  /// flattened as a * n + b.
  std::vector<CMat> contract(Family f, const SymTensor& k) const {
    detail::require_dim(k.n(), n_, "CoeffTensor::contract");
    std::vector<CMat> out(static_cast<std::size_t>(n_ * n_), CMat::Zero(dim_e_, dim_e_));
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) {
        CMat& x = out[static_cast<std::size_t>(a * n_ + b)];
        for (int i = 0; i < n_; ++i)
          for (int j = 0; j < n_; ++j) {
            const double kij = k(i, j);
            if (kij == 0.0) continue;
            switch (f) {
              case Family::D:
                if (i == a && j == b) x.diagonal().array() += kij;
                break;
              case Family::A: x += kij * A(i, j, a, b); break;
              case Family::B: x += kij * B(i, j, a, b); break;
            }
          }
      }
    return out;
  }

 private:
  std::size_t index(int i, int j, int k, int l) const {
    return static_cast<std::size_t>(((i * n_ + j) * n_ + k) * n_ + l);
  }
  int n_;
  int dim_e_;
  std::vector<CMat> a_;
  std::vector<CMat> b_;
};

inline CoeffTensor coeff_tensor(const GammaRep& rep) { return CoeffTensor(rep); }

struct SigmaSymbols {
  double sigma2 = 0.0;
  CMat sigma1;
  CMat sigma0;
  std::vector<CMat> sigma1_components;  ///< sigma^(1)_{kl}, flattened k * n + l
};

inline SigmaSymbols sigma_symbols(const GammaRep& rep, const SymTensor& k, const Covector& xi) {
  detail::require_dim(k.n(), rep.n, "sigma_symbols");
  detail::require_dim(xi.n(), rep.n, "sigma_symbols");
  const int n = rep.n;
  const CMat id = CMat::Identity(rep.dim_e, rep.dim_e);
  const Vec kxi = k.matrix() * xi.vec();
  const double trk = k.trace();
  const CMat cxi = clifford_vector(rep, xi.vec());
  const CMat ckxi = clifford_vector(rep, kxi);

  SigmaSymbols out;
  out.sigma2 = xi.vec().dot(kxi);
  out.sigma1 = -0.5 * ((trk * xi.norm2() - out.sigma2) * id + cxi * ckxi);
  out.sigma0 = 0.25 * (trk * (cxi * cxi) - cxi * ckxi);
  out.sigma1_components.reserve(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const CMat col = clifford_vector(rep, k.matrix().col(b));
      out.sigma1_components.push_back(
          -0.5 * ((trk * detail::kron(a, b) - k(a, b)) * id + rep[a] * col));
    }
  return out;
}

// ---------------------------------------------------------------------------
// Polynomial symmetric-tensor fields on R^n.

using Exponent = std::vector<int>;

/// k(x) = sum_alpha K_alpha x^alpha with symmetric K_alpha.
class SymTensorPoly {
 public:
  explicit SymTensorPoly(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("SymTensorPoly: n must be >= 1");
  }

  static SymTensorPoly constant(const SymTensor& k) {
    SymTensorPoly p(k.n());
    p.add_term(Exponent(static_cast<std::size_t>(k.n()), 0), k);
    return p;
  }

  void add_term(const Exponent& alpha, const SymTensor& coeff) {
    detail::require_dim(static_cast<long>(alpha.size()), n_, "SymTensorPoly::add_term");
    detail::require_dim(coeff.n(), n_, "SymTensorPoly::add_term");
    for (int e : alpha)
      if (e < 0) throw std::invalid_argument("SymTensorPoly: negative exponent");
    auto [it, inserted] = terms_.try_emplace(alpha, coeff.matrix());
    if (!inserted) it->second += coeff.matrix();
  }

  int n() const { return n_; }
  int degree() const {
    int d = 0;
    for (const auto& [alpha, c] : terms_) d = std::max(d, total(alpha));
    return d;
  }
  const std::map<Exponent, Mat>& terms() const { return terms_; }

  /// d^beta k at x.
  Mat derivative(const Exponent& beta, const Vec& x) const {
    detail::require_dim(x.size(), n_, "SymTensorPoly::derivative");
    Mat out = Mat::Zero(n_, n_);
    for (const auto& [alpha, c] : terms_) {
      double f = 1.0;
      for (int a = 0; a < n_ && f != 0.0; ++a) {
        const int ea = alpha[static_cast<std::size_t>(a)], eb = beta[static_cast<std::size_t>(a)];
        if (eb > ea) { f = 0.0; break; }
        for (int r = 0; r < eb; ++r) f *= ea - r;
        f *= std::pow(x(a), ea - eb);
      }
      if (f != 0.0) out += f * c;
    }
    return out;
  }
  Mat value(const Vec& x) const { return derivative(Exponent(static_cast<std::size_t>(n_), 0), x); }
  Mat d1(int a, const Vec& x) const { return derivative(unit(a), x); }
  Mat d2(int a, int b, const Vec& x) const {
    Exponent e = unit(a);
    ++e[static_cast<std::size_t>(b)];
    return derivative(e, x);
  }

  /// Random field with every monomial of total degree <= `degree` and N(0,1) coefficients.
  template <class Rng>
  static SymTensorPoly random(int n, int degree, Rng& rng) {
    std::normal_distribution<double> nd;
    SymTensorPoly p(n);
    Exponent alpha(static_cast<std::size_t>(n), 0);
    p.fill_random(alpha, 0, degree, rng, nd);
    return p;
  }

 private:
  static int total(const Exponent& a) {
    int t = 0;
    for (int e : a) t += e;
    return t;
  }
  Exponent unit(int a) const {
    Exponent e(static_cast<std::size_t>(n_), 0);
    e[static_cast<std::size_t>(a)] = 1;
    return e;
  }
  template <class Rng>
  void fill_random(Exponent& alpha, int pos, int budget, Rng& rng, std::normal_distribution<double>& nd) {
    if (pos == n_) {
      Mat m(n_, n_);
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = nd(rng);
      add_term(alpha, SymTensor(m));
      return;
    }
    for (int e = 0; e <= budget; ++e) {
      alpha[static_cast<std::size_t>(pos)] = e;
      fill_random(alpha, pos + 1, budget - e, rng, nd);
    }
    alpha[static_cast<std::size_t>(pos)] = 0;
  }

  int n_;
  std::map<Exponent, Mat> terms_;
};

namespace detail {

// Spinor field P(x) e^{i x.xi} with P a vector-valued polynomial.
struct PlaneWaveField {
  int n;
  Vec xi;
  std::map<Exponent, CVec> poly;

  PlaneWaveField derivative(int j) const {
    PlaneWaveField out{n, xi, {}};
    const Complex ixj(0.0, xi(j));
    for (const auto& [alpha, c] : poly) {
      out.add(alpha, ixj * c);
      if (alpha[static_cast<std::size_t>(j)] > 0) {
        Exponent lowered = alpha;
        --lowered[static_cast<std::size_t>(j)];
        out.add(lowered, double(alpha[static_cast<std::size_t>(j)]) * c);
      }
    }
    return out;
  }
  void add(const Exponent& alpha, const CVec& c) {
    auto [it, inserted] = poly.try_emplace(alpha, c);
    if (!inserted) it->second += c;
  }
  void add_field(const PlaneWaveField& o) {
    for (const auto& [alpha, c] : o.poly) add(alpha, c);
  }
  PlaneWaveField times_matrix(const CMat& m) const {
    PlaneWaveField out{n, xi, {}};
    for (const auto& [alpha, c] : poly) out.add(alpha, m * c);
    return out;
  }
  PlaneWaveField times_scalar_poly(const std::map<Exponent, double>& f) const {
    PlaneWaveField out{n, xi, {}};
    for (const auto& [beta, fb] : f) {
      if (fb == 0.0) continue;
      for (const auto& [alpha, c] : poly) {
        Exponent sum = alpha;
        for (std::size_t a = 0; a < sum.size(); ++a) sum[a] += beta[a];
        out.add(sum, fb * c);
      }
    }
    return out;
  }
  CVec at_origin(int dim) const {
    auto it = poly.find(Exponent(static_cast<std::size_t>(n), 0));
    return it == poly.end() ? CVec(CVec::Zero(dim)) : it->second;
  }
};

inline std::map<Exponent, double> scalar_component(const SymTensorPoly& k, int i, int j) {
  std::map<Exponent, double> out;
  for (const auto& [alpha, c] : k.terms()) out[alpha] += c(i, j);
  return out;
}

inline std::map<Exponent, double> scalar_derivative(const std::map<Exponent, double>& f, int a) {
  std::map<Exponent, double> out;
  for (const auto& [alpha, c] : f) {
    const int e = alpha[static_cast<std::size_t>(a)];
    if (e == 0) continue;
    Exponent lowered = alpha;
    --lowered[static_cast<std::size_t>(a)];
    out[lowered] += e * c;
  }
  return out;
}

inline void accumulate(std::map<Exponent, double>& into, const std::map<Exponent, double>& f,
                       double w) {
  for (const auto& [alpha, c] : f) into[alpha] += w * c;
}

}  // namespace detail

struct VariationRoutes {
  CVec operator_route;   ///< (D'D + DD') psi at 0
  CVec expansion_route;  ///< (D k dd + A dk d + B ddk) psi at 0
};

/// (D^2)' psi at x = 0 for psi = u e^{i x.xi} on flat R^n, computed from the first
/// variation formula D'psi = -1/2 sum_i e_i . d_{k(e_i)} psi + 1/4 [d tr k - div k] . psi
/// and from the coefficient expansion.  `ground_metric` must be the constant identity.
inline VariationRoutes flat_variation_oracle(const GammaRep& rep, const SymTensorPoly& k,
                                             const Vec& xi, const CVec& u,
                                             const SymTensorPoly* ground_metric = nullptr) {
  const int n = rep.n;
  detail::require_dim(k.n(), n, "flat_variation_oracle");
  detail::require_dim(xi.size(), n, "flat_variation_oracle");
  detail::require_dim(u.size(), rep.dim_e, "flat_variation_oracle");
  if (k.degree() > 2) throw std::invalid_argument("flat_variation_oracle: k must have degree <= 2");
  if (ground_metric != nullptr) {
    if (ground_metric->degree() > 0)
      throw std::invalid_argument("flat_variation_oracle: curved ground metric not supported");
    const Mat g0 = ground_metric->value(Vec::Zero(n));
    if ((g0 - Mat::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-14)
      throw std::invalid_argument("flat_variation_oracle: ground metric must be the identity");
  }

  // Route (a): polynomial algebra.
  detail::PlaneWaveField psi{n, xi, {}};
  psi.add(Exponent(static_cast<std::size_t>(n), 0), u);

  auto dirac = [&](const detail::PlaneWaveField& f) {
    detail::PlaneWaveField out{n, xi, {}};
    for (int j = 0; j < n; ++j) out.add_field(f.derivative(j).times_matrix(rep[j]));
    return out;
  };
  std::vector<std::map<Exponent, double>> v(static_cast<std::size_t>(n));
  std::map<Exponent, double> trk;
  for (int i = 0; i < n; ++i) detail::accumulate(trk, detail::scalar_component(k, i, i), 1.0);
  for (int j = 0; j < n; ++j) {
    auto& vj = v[static_cast<std::size_t>(j)];
    detail::accumulate(vj, detail::scalar_derivative(trk, j), 1.0);
    for (int i = 0; i < n; ++i)
      detail::accumulate(vj, detail::scalar_derivative(detail::scalar_component(k, i, j), i), -1.0);
  }
  auto dirac_prime = [&](const detail::PlaneWaveField& f) {
    detail::PlaneWaveField out{n, xi, {}};
    for (int l = 0; l < n; ++l) {
      const auto dl = f.derivative(l);
      for (int i = 0; i < n; ++i)
        out.add_field(dl.times_scalar_poly(detail::scalar_component(k, i, l)).times_matrix(-0.5 * rep[i]));
    }
    for (int j = 0; j < n; ++j)
      out.add_field(f.times_scalar_poly(v[static_cast<std::size_t>(j)]).times_matrix(0.25 * rep[j]));
    return out;
  };
  detail::PlaneWaveField total = dirac_prime(dirac(psi));
  total.add_field(dirac(dirac_prime(psi)));

  // Route (b): coefficient expansion with d -> i xi on the plane wave.
  const CoeffTensor ct(rep);
  const Vec origin = Vec::Zero(n);
  const Mat k0 = k.value(origin);
  CVec expansion = CVec::Zero(rep.dim_e);
  const Complex I(0.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a) {
        const Mat dk = k.d1(a, origin);
        for (int b = 0; b < n; ++b) {
          if (i == a && j == b) expansion += (k0(i, j) * (-xi(a) * xi(b))) * u;
          if (dk(i, j) != 0.0) expansion += (dk(i, j) * I * xi(b)) * (ct.A(i, j, a, b) * u);
          const double ddk = k.d2(a, b, origin)(i, j);
          if (ddk != 0.0) expansion += ddk * (ct.B(i, j, a, b) * u);
        }
      }
  return {total.at_origin(rep.dim_e), expansion};
}

// ---------------------------------------------------------------------------
// Constant metrics on flat tori.

enum class SpinStructure { Periodic, Antiperiodic };

/// Lattice of Fourier modes: Z^n (periodic) or (Z + 1/2)^n, truncated at |xi|_inf <= cut.
inline std::vector<Vec> torus_modes(int n, int cut, SpinStructure spin) {
  if (cut < 1) throw std::invalid_argument("torus_modes: lattice_cut must be >= 1");
  const double shift = spin == SpinStructure::Antiperiodic ? 0.5 : 0.0;
  std::vector<int> range;
  for (int m = -cut; m <= cut; ++m)
    if (std::abs(m + shift) <= cut) range.push_back(m);
  std::vector<Vec> modes;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    Vec xi(n);
    for (int a = 0; a < n; ++a) xi(a) = range[idx[static_cast<std::size_t>(a)]] + shift;
    modes.push_back(xi);
    int a = 0;
    while (a < n && ++idx[static_cast<std::size_t>(a)] == range.size()) idx[static_cast<std::size_t>(a++)] = 0;
    if (a == n) break;
  }
  return modes;
}

struct IsospectralPair {
  SpectrumReport gauge_transformed;  ///< sum_i e_i d_{H^{-1/2} e_i}
  SpectrumReport direct;             ///< Dirac operator of h in a Cholesky orthonormal frame
};

inline IsospectralPair torus_gauge_isospectral(const GammaRep& rep, const Mat& h, int lattice_cut,
                                               SpinStructure spin = SpinStructure::Periodic) {
  const int n = rep.n;
  detail::require(h.rows() == n && h.cols() == n, "torus_gauge_isospectral: h must be n x n");
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("torus_gauge_isospectral: h must be symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("torus_gauge_isospectral: h must be positive definite");
  const Mat h_inv_sqrt =
      es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
      es.eigenvectors().transpose();
  const Eigen::LLT<Mat> llt(h);
  const Mat l_inv = llt.matrixL().solve(Mat::Identity(n, n));

  std::vector<double> ev_a, ev_b;
  const Complex I(0.0, 1.0);
  for (const Vec& xi : torus_modes(n, lattice_cut, spin)) {
    const CMat ma = I * clifford_vector(rep, h_inv_sqrt * xi);
    const CMat mb = I * clifford_vector(rep, l_inv * xi);
    Eigen::SelfAdjointEigenSolver<CMat> sa(ma, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<CMat> sb(mb, Eigen::EigenvaluesOnly);
    for (Eigen::Index r = 0; r < sa.eigenvalues().size(); ++r) {
      ev_a.push_back(sa.eigenvalues()(r));
      ev_b.push_back(sb.eigenvalues()(r));
    }
  }
  return {make_report(std::move(ev_a)), make_report(std::move(ev_b))};
}

// ---------------------------------------------------------------------------
// Variation of the Levi-Civita connection around the flat metric.

/// 1/2 [ (d_X k)(Y, Z) + (d_Y k)(X, Z) - (d_Z k)(X, Y) ] at x.
inline double levi_civita_variation(const SymTensorPoly& k, const Vec& X, const Vec& Y,
                                    const Vec& Z, const Vec& x) {
  const int n = k.n();
  detail::require_dim(X.size(), n, "levi_civita_variation");
  detail::require_dim(Y.size(), n, "levi_civita_variation");
  detail::require_dim(Z.size(), n, "levi_civita_variation");
  auto dk = [&](const Vec& v) {
    Mat out = Mat::Zero(n, n);
    for (int a = 0; a < n; ++a)
      if (v(a) != 0.0) out += v(a) * k.d1(a, x);
    return out;
  };
  return 0.5 * (Y.dot(dk(X) * Z) + X.dot(dk(Y) * Z) - X.dot(dk(Z) * Y));
}

/// Finite-difference oracle: g(d/dt Gamma(g + t k)(X, Y), Z) at t = 0.
inline double levi_civita_variation_fd(const SymTensorPoly& k, const Vec& X, const Vec& Y,
                                       const Vec& Z, const Vec& x, double t_step = 1e-5,
                                       double x_step = 0.5) {
  const int n = k.n();
  auto metric = [&](double t, const Vec& p) { return Mat(Mat::Identity(n, n) + t * k.value(p)); };
  auto christoffel = [&](double t) {
    // dg[a](b, c) = d_a g_bc, central differences (exact for quadratic fields).
    std::vector<Mat> dg;
    for (int a = 0; a < n; ++a) {
      Vec e = Vec::Zero(n);
      e(a) = x_step;
      dg.push_back((metric(t, x + e) - metric(t, x - e)) / (2.0 * x_step));
    }
    const Mat ginv = metric(t, x).inverse();
    double out = 0.0;
    for (int m = 0; m < n; ++m) {
      double first = 0.0;  // Gamma_{m}(X, Y) of the first kind
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          first += X(a) * Y(b) * 0.5 *
                   (dg[static_cast<std::size_t>(a)](b, m) + dg[static_cast<std::size_t>(b)](a, m) -
                    dg[static_cast<std::size_t>(m)](a, b));
      for (int c = 0; c < n; ++c) out += Z(c) * ginv(c, m) * first;
    }
    return out;
  };
  return (christoffel(t_step) - christoffel(-t_step)) / (2.0 * t_step);
}

}  // namespace spinhess
