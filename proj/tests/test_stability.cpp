#include <catch_amalgamated.hpp>

#include <numbers>

#include "spinhess/stability.hpp"
#include "support.hpp"

using namespace spinhess;

namespace {

// Gamma factor on the real axis through tgamma, away from its removable points.
double factor_real(int n, double s) {
  const double S = s - 0.5 * n;
  const double g = std::tgamma(1.0 - S);
  return std::tgamma(s - 0.5 * n) * g * g / (std::tgamma(s) * std::tgamma(2.0 - 2.0 * S));
}

// Richardson-extrapolated symmetric differences at 0.
std::pair<double, double> taylor_oracle(int n) {
  auto at = [&](double h) {
    const double p = factor_real(n, h), m = factor_real(n, -h);
    return std::pair{0.5 * (p + m), (p - m) / (2 * h)};
  };
  const auto [v1, d1] = at(2e-3);
  const auto [v2, d2] = at(1e-3);
  return {(4 * v2 - v1) / 3, (4 * d2 - d1) / 3};
}

}  // namespace

TEST_CASE("eta constants", "[stability]") {
  CHECK(eta(1) == Rational(8, 3));
  CHECK(eta(2) == Rational(46, 15));
  for (int j = 1; j < 12; ++j) CHECK(eta(j + 1) > eta(j));
  CHECK_THROWS_AS(eta(0), std::invalid_argument);
}

TEST_CASE("Gamma-factor lemma against finite differences", "[stability]") {
  for (int n = 2; n <= 12; ++n) {
    const auto g = gammalemma_coeff(n);
    const auto [v, d] = taylor_oracle(n);
    if (g.odd) {
      CHECK(std::abs(v) < 1e-8 * std::abs(d));
      CHECK(std::abs(d - g.coefficient) < 1e-8 * std::abs(g.coefficient));
    } else {
      CHECK(std::abs(v - g.coefficient) < 1e-8 * std::abs(g.coefficient));
      CHECK(std::abs(d / v - g.eta_k) < 1e-7 * g.eta_k);
    }
  }
}

TEST_CASE("composed and displayed constants agree", "[stability]") {
  CHECK(composed_stability_constant(3) == Catch::Approx(-1.0 / 256.0).epsilon(1e-14));
  for (int n = 2; n <= 14; ++n) {
    CHECK(stability_constant(n) > 0.0);
    CHECK(composed_stability_constant(n) == Catch::Approx(parity_sign(n) * stability_constant(n)).epsilon(1e-12));
  }
}

TEST_CASE("leading symbol factorizes and is self-adjoint", "[stability][property]") {
  testing::Rng rng(51);
  for (int t = 0; t < 60; ++t) {
    const int n = rng.integer(2, 8);
    const Covector xi = rng.covector(n).scaled(rng.uniform(1.0, 100.0));
    const SymTensor k = rng.sym(n), l = rng.sym(n);
    const auto lead = hess_zeta_prime_leading(n, xi, k);
    CHECK((lead.value - factorized_leading(n, xi, k)).norm() < 1e-10 * lead.value.norm());
    CHECK(std::abs(lead.value.frobenius(l) - k.frobenius(hess_zeta_prime_leading(n, xi, l).value)) <
          1e-10 * lead.value.norm() * l.norm());
    if (n % 2 == 1) CHECK(lead.log_coeff.norm() == 0.0);
  }
}

TEST_CASE("positivity radius", "[stability]") {
  testing::Rng rng(52);
  for (int n : {4, 6, 8}) {
    const double R = positivity_radius(n);
    for (int t = 0; t < 10; ++t) {
      const Vec dir = rng.covector(n).vec().normalized();
      auto mineig = [&](double r) {
        return Eigen::SelfAdjointEigenSolver<Mat>(h_bracket_matrix(n, Covector(r * dir))).eigenvalues().minCoeff();
      };
      CHECK(mineig(1.01 * R) > 0.0);
      CHECK(mineig(0.99 * R) < 0.0);
      CHECK(std::abs(mineig(R)) < 1e-12);
    }
  }
  const Mat b2 = h_bracket_matrix(2, Covector::basis(2, 0).scaled(0.01));
  CHECK((b2 - Mat::Identity(3, 3)).norm() < 1e-14);
  CHECK_THROWS_AS(positivity_radius(3), std::invalid_argument);
}

TEST_CASE("symbol jets match finite differences", "[stability][property]") {
  testing::Rng rng(53);
  for (int n : {3, 4, 6}) {
    const auto q = h_symbol(n);
    for (int t = 0; t < 3; ++t) {
      const Vec xi = rng.vec(n).normalized() * rng.uniform(2.0, 20.0);
      const MatJet j = q.jet(xi);
      const double h = 1e-4 * xi.norm();
      const double scale = j.v.norm();
      for (int a = 0; a < n; ++a) {
        const Vec e = h * Vec::Unit(n, a);
        const Mat fd = (q.evaluate(xi + e) - q.evaluate(xi - e)) / (2 * h);
        CHECK((fd - j.g[static_cast<std::size_t>(a)]).norm() < 1e-6 * scale / xi.norm());
        for (int b = 0; b < n; ++b) {
          const Vec f = h * Vec::Unit(n, b);
          const Mat fd2 = (q.jet(xi + f).g[static_cast<std::size_t>(a)] - q.jet(xi - f).g[static_cast<std::size_t>(a)]) / (2 * h);
          CHECK((fd2 - j.h[static_cast<std::size_t>(a * n + b)]).norm() < 1e-6 * scale / xi.squaredNorm());
        }
      }
    }
  }
}

TEST_CASE("hypoellipticity estimates", "[stability]") {
  const HypoGrid grid;
  SECTION("scalar log symbol is hypoelliptic of bi-degree (2.1, 2)") {
    const LogHomSymbol q(1, 2.0, {homogeneous_constant(Mat::Identity(1, 1), 2.0),
                                  homogeneous_constant(Mat::Identity(1, 1), 2.0)});
    const auto rep = hypoellipticity_check(q, 2.1, 2.0, grid, 2);
    CHECK(rep.passed);
  }
  SECTION("singular symbol fails the lower bound") {
    Mat d = Mat::Zero(2, 2);
    d(0, 0) = 1.0;
    const LogHomSymbol q(2, 2.0, {homogeneous_constant(d, 2.0)});
    CHECK_FALSE(hypoellipticity_check(q, 2.0, 2.0, grid, 1).passed);
  }
  SECTION("even stability symbol: growth bounds hold, derivative constants grow like log") {
    for (int n : {4, 6}) {
      const auto rep = hypoellipticity_check(h_symbol(n), n + 0.1, n, grid, 2);
      CHECK(rep.constants[0].bounded);
      CHECK(rep.constants[1].bounded);
      CHECK_FALSE(rep.constants[2].bounded);
      HypoConfig relaxed;
      relaxed.rho = 0.8;
      CHECK(hypoellipticity_check(h_symbol(n), n + 0.1, n, grid, 2, relaxed).passed);
      CHECK(inverse_phi_decay(n, grid).passed);
    }
  }
  SECTION("grid below the positivity radius is rejected") {
    HypoGrid low;
    low.r_min = 1.0;
    CHECK_THROWS_AS(hypoellipticity_check(h_symbol(8), 8.1, 8, low, 1), std::invalid_argument);
  }
}

TEST_CASE("symbol square root", "[stability]") {
  testing::Rng rng(54);
  const Covector xi = rng.covector(4).scaled(50.0);
  const Mat q = h_symbol(4).evaluate(xi.vec());
  const Mat r = symbol_sqrt(q);
  CHECK((r * r - q).norm() < 1e-10 * q.norm());
  CHECK((r - r.transpose()).norm() < 1e-12 * r.norm());
  CHECK_THROWS_AS(symbol_sqrt(-Mat::Identity(2, 2)), std::domain_error);
}
