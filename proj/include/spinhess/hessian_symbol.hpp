#pragma once

// Leading symbol of the Hessian of the modified zeta function of D^2: the tabulated
// kernels, assembly from the coefficient tensors, the four-part decomposition, and the
// closed form.

#include <array>
#include <cmath>
#include <numbers>

#include "spinhess/clifford.hpp"
#include "spinhess/dirac_variation.hpp"
#include "spinhess/fiber_algebra.hpp"
#include "spinhess/special_functions.hpp"

namespace spinhess {

/// Throws std::domain_error unless Re s < n/2 - 1.
inline void check_validity_strip(int n, Complex s) {
  if (!(s.real() < 0.5 * n - 1.0)) {
    throw std::domain_error("closed form valid only in the strip Re s < n/2 - 1 (n = " +
                            std::to_string(n) + ", Re s = " + std::to_string(s.real()) + ")");
  }
}

/// C(s) = (4 pi)^{-n/2} Gamma(-S+1)^2 / Gamma(-2S+2),  S = s - n/2.
inline Complex c_factor(int n, Complex s) {
  if (n < 1) throw std::invalid_argument("c_factor: n must be >= 1");
  const Complex S = s - 0.5 * n;
  const Complex den_arg = -2.0 * S + 2.0;
  if (detail::near_nonpositive_integer(den_arg, 1e-12))
    throw pole_error("pole of C(s): -2S+2 is a non-positive integer");
  const Complex g1 = cgamma(-S + 1.0);
  return std::pow(4.0 * std::numbers::pi, -0.5 * n) * g1 * g1 / cgamma(den_arg);
}

enum class KernelShape { Row1 = 1, Row2, Row3, Row4, Row5, Row6 };

/// Table row used to pair coefficient families (second-order D, first-order A, zeroth-order B).
inline KernelShape kernel_shape(CoeffTensor::Family f1, CoeffTensor::Family f2) {
  using F = CoeffTensor::Family;
  auto key = [](F f) { return f == F::D ? 0 : f == F::A ? 1 : 2; };
  const int a = std::min(key(f1), key(f2)), b = std::max(key(f1), key(f2));
  static constexpr std::array<std::array<KernelShape, 3>, 3> table = {{
      {KernelShape::Row6, KernelShape::Row5, KernelShape::Row4},
      {KernelShape::Row5, KernelShape::Row3, KernelShape::Row2},
      {KernelShape::Row4, KernelShape::Row2, KernelShape::Row1},
  }};
  return table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

namespace detail {

struct KernelContext {
  Complex S;
  Complex e0, e2, e4;  // |xi|^{n-2s}, |xi|^{n-2s-2}, |xi|^{n-2s-4}
  Vec xi;

  KernelContext(int n, Complex s, const Covector& c) : S(s - 0.5 * n), xi(c.vec()) {
    const double lx = std::log(c.norm());
    e0 = std::exp((double(n) - 2.0 * s) * lx);
    e2 = e0 / c.norm2();
    e4 = e2 / c.norm2();
  }

  Complex operator()(KernelShape shape, int j, int k, int p, int q) const {
    using detail::kron;
    const Complex f4 = xi(j) * xi(k) * xi(p) * xi(q) * e4;
    const Complex S2 = S * S;
    switch (shape) {
      case KernelShape::Row1: return 4.0 * (4.0 * S2 - 1.0) * f4;
      case KernelShape::Row2: return -2.0 * (4.0 * S2 - 1.0) * f4;
      case KernelShape::Row3:
        return (4.0 * S2 + 2.0 * S - 2.0) * f4 - (2.0 * S - 1.0) * kron(k, q) * xi(j) * xi(p) * e2;
      case KernelShape::Row4:
        return (4.0 * S2 - 2.0 * S) * f4 + (2.0 * S - 1.0) * kron(j, k) * xi(p) * xi(q) * e2;
      case KernelShape::Row5:
        return -(2.0 * S2 + S - 1.0) * f4 +
               (S - 0.5) *
                   (-kron(j, k) * xi(p) * xi(q) + kron(j, q) * xi(k) * xi(p) + kron(k, q) * xi(j) * xi(p)) *
                   e2;
      case KernelShape::Row6:
        return (S2 + S) * f4 +
               0.5 * (S - 1.0) * (kron(j, k) * xi(p) * xi(q) + xi(j) * xi(k) * kron(p, q)) * e2 -
               0.5 * S *
                   (kron(j, p) * xi(k) * xi(q) + kron(k, q) * xi(j) * xi(p) +
                    kron(j, q) * xi(k) * xi(p) + kron(k, p) * xi(j) * xi(q)) *
                   e2 +
               0.25 * (kron(j, k) * kron(p, q) + kron(j, p) * kron(k, q) + kron(j, q) * kron(k, p)) * e0;
    }
    throw std::invalid_argument("okikiolu_kernel: unknown shape");
  }
};

}  // namespace detail

/// One entry of the kernel table; indices are 0-based.
inline Complex okikiolu_kernel(KernelShape shape, int j, int k, int p, int q, int n, Complex s,
                               const Covector& xi) {
  detail::require_dim(xi.n(), n, "okikiolu_kernel");
  for (int idx : {j, k, p, q})
    if (idx < 0 || idx >= n) throw std::out_of_range("okikiolu_kernel: index out of range");
  return detail::KernelContext(n, s, xi)(shape, j, k, p, q);
}

struct UParts {
  std::array<Complex, 4> u{};
  Complex sum() const { return u[0] + u[1] + u[2] + u[3]; }
};

/// <k, u^(i) k> for i = 1..4 from raw fiber traces of the sigma symbols.
inline UParts u_parts(const GammaRep& rep, const SymTensor& k, const Covector& xi, Complex s) {
  detail::require_dim(k.n(), rep.n, "u_parts");
  detail::require_dim(xi.n(), rep.n, "u_parts");
  const int n = rep.n;
  const auto sig = sigma_symbols(rep, k, xi);
  const detail::KernelContext ctx(n, s, xi);
  const Complex S = ctx.S;
  const double x2 = xi.norm2();
  const CMat id = CMat::Identity(rep.dim_e, rep.dim_e);
  const Vec kxi = k.matrix() * xi.vec();
  const double xkx = sig.sigma2;
  const double trk = k.trace();
  auto comp = [&](int a, int b) -> const CMat& {
    return sig.sigma1_components[static_cast<std::size_t>(a * n + b)];
  };

  UParts out;
  const CMat m1 = sig.sigma2 * id - 2.0 * sig.sigma1 + 4.0 * sig.sigma0;
  out.u[0] = (S * S - 0.25) * ctx.e4 * (m1 * m1).trace();

  CMat m2 = sig.sigma1 * sig.sigma1;
  for (int j = 0; j < n; ++j) {
    CMat inner = CMat::Zero(rep.dim_e, rep.dim_e);
    for (int i = 0; i < n; ++i) inner += xi(i) * comp(i, j);
    m2 -= x2 * inner * inner;
  }
  out.u[1] = (2.0 * S - 1.0) * ctx.e4 * m2.trace();

  CMat m3 = CMat::Zero(rep.dim_e, rep.dim_e);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m3 += (xi(i) * kxi(j) + xi(j) * kxi(i)) * comp(i, j);
  const Complex brace3 = x2 * m3.trace() + xkx * (-sig.sigma1 - 2.0 * sig.sigma0).trace() +
                         x2 * trk * (-sig.sigma1 + 2.0 * sig.sigma0).trace();
  out.u[2] = (2.0 * S - 1.0) * ctx.e4 * brace3;

  const Mat kp = k.matrix() * proj_perp(xi);
  const double dim_e = rep.dim_e;
  out.u[3] = dim_e * ctx.e4 * (S - 0.5) *
                 (-2.0 * x2 * kxi.squaredNorm() + xkx * xkx + x2 * xkx * trk) +
             dim_e * ctx.e0 * (0.5 * (kp * kp).trace() + 0.25 * kp.trace() * kp.trace());
  return out;
}

/// Closed form 2^{floor(n/2)-2} C(s) |xi|^{n-2s} { [2s-(n-1)] tr(K Pi)^2 + (tr K Pi)^2 }.
inline Complex u_closed_form(int n, Complex s, const Covector& xi, const SymTensor& k) {
  detail::require_dim(xi.n(), n, "u_closed_form");
  detail::require_dim(k.n(), n, "u_closed_form");
  const Mat kp = k.matrix() * proj_perp(xi);
  const double t2 = (kp * kp).trace(), t1 = kp.trace();
  const Complex e0 = std::exp((double(n) - 2.0 * s) * std::log(xi.norm()));
  const double pref = std::ldexp(1.0, n / 2 - 2);
  return pref * c_factor(n, s) * e0 * ((2.0 * s - double(n - 1)) * t2 + t1 * t1);
}

struct HessianForm {
  int n = 0;
  Complex s;
  Complex S;
  Vec xi;
  double volume = 1.0;
  Complex value;
};

/// V^{(2s-n)/n} C(s) sum over coefficient families and derivative indices of
/// kernel x tr(X^{F1}_{ab} X^{F2}_{ce}), with X^F_{ab} = sum_ij F^{ij}_{ab} k_ij.
inline HessianForm u_assembled(const GammaRep& rep, const CoeffTensor& coeffs, const SymTensor& k,
                               const Covector& xi, Complex s, double volume = 1.0) {
  const int n = rep.n;
  detail::require_dim(coeffs.n(), n, "u_assembled");
  detail::require_dim(k.n(), n, "u_assembled");
  detail::require_dim(xi.n(), n, "u_assembled");
  if (!(volume > 0.0)) throw std::invalid_argument("u_assembled: volume must be positive");
  using F = CoeffTensor::Family;
  const std::array<F, 3> fams = {F::D, F::A, F::B};
  std::array<std::vector<CMat>, 3> x;
  for (std::size_t f = 0; f < 3; ++f) x[f] = coeffs.contract(fams[f], k);

  const detail::KernelContext ctx(n, s, xi);
  Complex total = 0.0;
  const auto nn = static_cast<std::size_t>(n * n);
  for (std::size_t f1 = 0; f1 < 3; ++f1)
    for (std::size_t f2 = 0; f2 < 3; ++f2) {
      const KernelShape shape = kernel_shape(fams[f1], fams[f2]);
      for (std::size_t ab = 0; ab < nn; ++ab) {
        const CMat& x1 = x[f1][ab];
        if (x1.cwiseAbs().maxCoeff() == 0.0) continue;
        const int a = static_cast<int>(ab) / n, b = static_cast<int>(ab) % n;
        for (std::size_t ce = 0; ce < nn; ++ce) {
          const CMat& x2 = x[f2][ce];
          const Complex tr = x1.cwiseProduct(x2.transpose()).sum();
          if (tr == 0.0) continue;
          const int c = static_cast<int>(ce) / n, e = static_cast<int>(ce) % n;
          total += ctx(shape, a, b, c, e) * tr;
        }
      }
    }
  HessianForm h;
  h.n = n;
  h.s = s;
  h.S = ctx.S;
  h.xi = xi.vec();
  h.volume = volume;
  h.value = std::pow(Complex(volume), (2.0 * s - double(n)) / double(n)) * c_factor(n, s) * total;
  return h;
}

inline HessianForm u_assembled(const GammaRep& rep, const SymTensor& k, const Covector& xi,
                               Complex s, double volume = 1.0) {
  return u_assembled(rep, CoeffTensor(rep), k, xi, s, volume);
}

}  // namespace spinhess
