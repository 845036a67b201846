#pragma once

// Complex Clifford algebra representations with e_i e_j + e_j e_i = -2 delta_ij.

#include <span>
#include <vector>

#include "spinhess/common.hpp"

namespace spinhess {

/// Default cap on the spinor fiber dimension 2^floor(n/2) (n <= 20).
inline constexpr int kDefaultMaxFiberDim = 1024;

struct GammaRep {
  int n = 0;
  int dim_e = 0;
  std::vector<CMat> gammas;

  const CMat& operator[](int i) const { return gammas[static_cast<std::size_t>(i)]; }
};

/// Jordan-Wigner style tensor-product construction.  For n = 2k the generators are
/// i * sz^{(a)} (x) {sx, sy} (x) I^{(k-a-1)}; odd n appends i * sz^{(k)}, the chirality.
inline GammaRep build_gamma_rep(int n, int max_fiber_dim = kDefaultMaxFiberDim) {
  if (n < 1) throw std::invalid_argument("build_gamma_rep: n must be >= 1");
  const int k = n / 2;
  if (k >= 31 || (1 << k) > max_fiber_dim) {
    throw resource_limit_error("build_gamma_rep: fiber dimension 2^" + std::to_string(k) +
                               " exceeds cap " + std::to_string(max_fiber_dim));
  }
  const Complex I(0.0, 1.0);
  CMat sx(2, 2), sy(2, 2), sz(2, 2), id2 = CMat::Identity(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, -I, I, 0;
  sz << 1, 0, 0, -1;

  auto kron_chain = [&](const std::vector<const CMat*>& factors) {
    CMat out = CMat::Identity(1, 1);
    for (const CMat* f : factors) {
      CMat next(out.rows() * f->rows(), out.cols() * f->cols());
      for (Eigen::Index r = 0; r < out.rows(); ++r)
        for (Eigen::Index c = 0; c < out.cols(); ++c)
          next.block(r * f->rows(), c * f->cols(), f->rows(), f->cols()) = out(r, c) * (*f);
      out = std::move(next);
    }
    return out;
  };

  GammaRep rep;
  rep.n = n;
  rep.dim_e = 1 << k;
  rep.gammas.reserve(static_cast<std::size_t>(n));
  for (int a = 0; a < k; ++a) {
    for (const CMat* s : {&sx, &sy}) {
      std::vector<const CMat*> f(static_cast<std::size_t>(k), &id2);
      for (int b = 0; b < a; ++b) f[static_cast<std::size_t>(b)] = &sz;
      f[static_cast<std::size_t>(a)] = s;
      rep.gammas.push_back(I * kron_chain(f));
    }
  }
  if (n % 2 == 1) {
    std::vector<const CMat*> f(static_cast<std::size_t>(k), &sz);
    rep.gammas.push_back(I * kron_chain(f));
  }
  return rep;
}

/// Clifford multiplication by v: sum_i v_i gamma_i.
inline CMat clifford_vector(const GammaRep& rep, const Vec& v) {
  detail::require_dim(v.size(), rep.n, "clifford_vector");
  CMat out = CMat::Zero(rep.dim_e, rep.dim_e);
  for (int i = 0; i < rep.n; ++i)
    if (v(i) != 0.0) out += v(i) * rep[i];
  return out;
}

inline Complex trace_product(const GammaRep& rep, std::span<const Vec> vs) {
  if (vs.empty()) throw std::invalid_argument("trace_product: empty vector list");
  CMat prod = clifford_vector(rep, vs[0]);
  for (std::size_t i = 1; i < vs.size(); ++i) prod = prod * clifford_vector(rep, vs[i]);
  return prod.trace();
}

inline Complex trace_product(const GammaRep& rep, std::initializer_list<Vec> vs) {
  std::vector<Vec> v(vs);
  return trace_product(rep, std::span<const Vec>(v));
}

/// dim_e { <a,b><c,d> - <a,c><b,d> + <a,d><b,c> }
inline double closed_form_trace4(const Vec& a, const Vec& b, const Vec& c, const Vec& d,
                                 int dim_e) {
  detail::require_dim(b.size(), a.size(), "closed_form_trace4");
  detail::require_dim(c.size(), a.size(), "closed_form_trace4");
  detail::require_dim(d.size(), a.size(), "closed_form_trace4");
  return dim_e * (a.dot(b) * c.dot(d) - a.dot(c) * b.dot(d) + a.dot(d) * b.dot(c));
}

/// max_{i,j} | gamma_i gamma_j + gamma_j gamma_i + 2 delta_ij I |
inline double anticommutator_residual(const GammaRep& rep) {
  double worst = 0.0;
  const CMat id = CMat::Identity(rep.dim_e, rep.dim_e);
  for (int i = 0; i < rep.n; ++i)
    for (int j = i; j < rep.n; ++j) {
      CMat r = rep[i] * rep[j] + rep[j] * rep[i] + 2.0 * detail::kron(i, j) * id;
      worst = std::max(worst, r.cwiseAbs().maxCoeff());
    }
  return worst;
}

/// max_i | gamma_i^dagger + gamma_i |  (skew-Hermitian, hence unitary given gamma_i^2 = -I)
inline double skew_hermitian_residual(const GammaRep& rep) {
  double worst = 0.0;
  for (const auto& g : rep.gammas)
    worst = std::max(worst, (g.adjoint() + g).cwiseAbs().maxCoeff());
  return worst;
}

/// Ratio tr(xi (k.xi)) / (-(xi.k.xi)).  The matrix trace gives dim_e; the printed
/// corollary formula without a fiber factor corresponds to ratio 1.
inline double corollary_trace_normalization(const GammaRep& rep, const Vec& xi, const Mat& k) {
  const Vec kxi = k * xi;
  const double xkx = xi.dot(kxi);
  if (std::abs(xkx) < 1e-12) throw std::invalid_argument("corollary_trace_normalization: xi.k.xi = 0");
  const Complex tr = (clifford_vector(rep, xi) * clifford_vector(rep, kxi)).trace();
  return tr.real() / (-xkx);
}

}  // namespace spinhess
