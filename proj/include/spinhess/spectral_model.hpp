#pragma once

// Discretized model operators on the torus T^d (d <= 2) built from matrix symbols:
// Fourier multipliers, left-quantized collocation with trigonometric x-dependence,
// dense Hermitian spectra and an empirical Garding constant.

#include <array>
#include <functional>
#include <map>
#include <random>

#include <Eigen/Eigenvalues>

#include "spinhess/log_symbol.hpp"
#include "spinhess/spectrum_report.hpp"

namespace spinhess {

using Mode = std::array<int, 2>;

/// xi-only symbol evaluated at a lattice point xi in R^d.
using ModeSymbol = std::function<CMat(const Vec&)>;

/// q(x, xi) = sum_j c_j(xi) e^{i j.x}.
struct TrigSymbol {
  int torus_dim = 1;
  std::map<Mode, ModeSymbol> coefficients;
};

class ModelOperator {
 public:
  int mode_cut = 0;
  int torus_dim = 1;
  int block = 1;
  std::vector<Mode> modes;
  bool block_diagonal = false;
  std::vector<CMat> blocks;  ///< one per mode when block_diagonal
  CMat matrix;               ///< dense otherwise
  double hermitian_residual = 0.0;

  Eigen::Index dim() const { return static_cast<Eigen::Index>(modes.size()) * block; }

  /// Apply to a coefficient vector ordered (mode, fiber component).
  CVec apply(const CVec& f) const {
    detail::require_dim(f.size(), dim(), "ModelOperator::apply");
    if (!block_diagonal) return matrix * f;
    CVec out(f.size());
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const auto off = static_cast<Eigen::Index>(m) * block;
      out.segment(off, block) = blocks[m] * f.segment(off, block);
    }
    return out;
  }

  CMat dense() const {
    if (!block_diagonal) return matrix;
    CMat out = CMat::Zero(dim(), dim());
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const auto off = static_cast<Eigen::Index>(m) * block;
      out.block(off, off, block, block) = blocks[m];
    }
    return out;
  }
};

inline std::vector<Mode> torus_lattice(int torus_dim, int N) {
  if (N < 1) throw std::invalid_argument("model operator: N must be >= 1");
  if (torus_dim < 1 || torus_dim > 2) throw std::invalid_argument("model operator: torus dimension must be 1 or 2");
  std::vector<Mode> modes;
  for (int a = -N; a <= N; ++a) {
    if (torus_dim == 1) {
      modes.push_back({a, 0});
      continue;
    }
    for (int b = -N; b <= N; ++b) modes.push_back({a, b});
  }
  return modes;
}

inline Vec mode_vector(const Mode& m, int torus_dim) {
  Vec v(torus_dim);
  for (int a = 0; a < torus_dim; ++a) v(a) = m[static_cast<std::size_t>(a)];
  return v;
}

/// Block-diagonal Fourier multiplier, block m = q(m).
inline ModelOperator build_multiplier(const ModeSymbol& q, int N, int torus_dim = 1) {
  ModelOperator op;
  op.mode_cut = N;
  op.torus_dim = torus_dim;
  op.modes = torus_lattice(torus_dim, N);
  op.block_diagonal = true;
  for (const Mode& m : op.modes) {
    CMat b = q(mode_vector(m, torus_dim));
    if (op.blocks.empty()) op.block = static_cast<int>(b.rows());
    detail::require(b.rows() == op.block && b.cols() == op.block, "build_multiplier: inconsistent block size");
    op.hermitian_residual = std::max(op.hermitian_residual, (b - b.adjoint()).cwiseAbs().maxCoeff() /
                                                                std::max(1.0, b.cwiseAbs().maxCoeff()));
    op.blocks.push_back(std::move(b));
  }
  return op;
}

/// LogHomSymbol on R^n sampled along the torus: xi_torus is embedded in the first coordinates.
inline ModeSymbol mode_symbol(const LogHomSymbol& s) {
  return [s](const Vec& m) {
    Vec xi = Vec::Zero(s.n());
    xi.head(m.size()) = m;
    return CMat(s.evaluate_bracket(xi).cast<Complex>());
  };
}

/// Left quantization <e_m, Q e_m'> = c_{m-m'}(m'), Hermitized as (Q + Q^dagger)/2.
inline ModelOperator build_collocation(const TrigSymbol& q, int N) {
  ModelOperator op;
  op.mode_cut = N;
  op.torus_dim = q.torus_dim;
  op.modes = torus_lattice(q.torus_dim, N);
  if (q.coefficients.empty()) throw std::invalid_argument("build_collocation: empty symbol");
  op.block = static_cast<int>(q.coefficients.begin()->second(Vec::Zero(q.torus_dim)).rows());
  const auto nm = static_cast<Eigen::Index>(op.modes.size());
  CMat Q = CMat::Zero(nm * op.block, nm * op.block);
  for (Eigen::Index c = 0; c < nm; ++c) {
    const Mode& mp = op.modes[static_cast<std::size_t>(c)];
    const Vec xi = mode_vector(mp, q.torus_dim);
    for (const auto& [j, coef] : q.coefficients) {
      const Mode target = {mp[0] + j[0], mp[1] + j[1]};
      if (std::abs(target[0]) > N || std::abs(target[1]) > N) continue;
      if (q.torus_dim == 1 && target[1] != 0) continue;
      const Eigen::Index r = q.torus_dim == 1 ? target[0] + N : (target[0] + N) * (2 * N + 1) + (target[1] + N);
      Q.block(r * op.block, c * op.block, op.block, op.block) += coef(xi);
    }
  }
  const double scale = std::max(1.0, Q.cwiseAbs().maxCoeff());
  op.hermitian_residual = (Q - Q.adjoint()).cwiseAbs().maxCoeff() / scale;
  op.matrix = 0.5 * (Q + Q.adjoint());
  return op;
}

inline constexpr double kHermitianTolerance = 1e-8;

inline SpectrumReport spectrum(const ModelOperator& op) {
  if (op.hermitian_residual > kHermitianTolerance)
    throw std::runtime_error("spectrum: operator not Hermitian (residual " + std::to_string(op.hermitian_residual) + ")");
  std::vector<double> ev;
  ev.reserve(static_cast<std::size_t>(op.dim()));
  auto solve = [&](const CMat& m) {
    Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("spectrum: eigensolver failed");
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(es.eigenvalues()(i));
  };
  if (op.block_diagonal) {
    for (const auto& b : op.blocks) solve(0.5 * (b + b.adjoint()));
  } else {
    solve(op.matrix);
  }
  SpectrumReport r = make_report(std::move(ev));
  r.hermitian_residual = op.hermitian_residual;
  return r;
}

// ---------------------------------------------------------------------------
// Garding constant  sup ||f||_{d0} / (||f||_0 + ||Q f||_0)  over random trigonometric
// polynomials, with ||f||_s^2 = sum (1 + |m|^2)^s |f_m|^2.

struct GaardingEstimate {
  double constant = 0.0;
  int samples = 0;
};

inline double sobolev_norm(const ModelOperator& op, const CVec& f, double s) {
  double acc = 0.0;
  for (std::size_t m = 0; m < op.modes.size(); ++m) {
    const double m2 = double(op.modes[m][0]) * op.modes[m][0] + double(op.modes[m][1]) * op.modes[m][1];
    const double w = std::pow(1.0 + m2, s);
    acc += w * f.segment(static_cast<Eigen::Index>(m) * op.block, op.block).squaredNorm();
  }
  return std::sqrt(acc);
}

/// Test functions have random degree p in [1, max_degree] (default N minus `guard`) and
/// Gaussian coefficients; every other sample is supported on 1..3 random modes |m| <= p.
inline GaardingEstimate gaarding_estimate(const ModelOperator& op, double d0, int sample_size,
                                          std::uint64_t seed = 7, int guard = 2) {
  if (sample_size < 1) throw std::invalid_argument("gaarding_estimate: sample_size must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  const int max_degree = std::max(1, op.mode_cut - guard);
  std::uniform_int_distribution<int> deg(1, max_degree);
  std::uniform_int_distribution<std::size_t> pick_mode(0, op.modes.size() - 1);
  GaardingEstimate g;
  for (int t = 0; t < sample_size; ++t) {
    const int p = deg(rng);
    auto inside = [&](std::size_t m) { return std::abs(op.modes[m][0]) <= p && std::abs(op.modes[m][1]) <= p; };
    CVec f = CVec::Zero(op.dim());
    auto fill = [&](std::size_t m) {
      for (int c = 0; c < op.block; ++c)
        f(static_cast<Eigen::Index>(m) * op.block + c) = Complex(nd(rng), nd(rng));
    };
    if (t % 2 == 0) {
      for (std::size_t m = 0; m < op.modes.size(); ++m)
        if (inside(m)) fill(m);
    } else {
      const int active = 1 + t / 2 % 3;
      for (int a = 0; a < active;) {
        const std::size_t m = pick_mode(rng);
        if (inside(m)) fill(m), ++a;
      }
    }
    const double num = sobolev_norm(op, f, d0);
    const double den = sobolev_norm(op, f, 0.0) + sobolev_norm(op, op.apply(f), 0.0);
    g.constant = std::max(g.constant, num / den);
  }
  g.samples = sample_size;
  return g;
}

}  // namespace spinhess
