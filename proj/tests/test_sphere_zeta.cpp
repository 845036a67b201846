#include <catch_amalgamated.hpp>

#include <numbers>

#include "spinhess/sphere_zeta.hpp"

using namespace spinhess;

TEST_CASE("complex Gamma", "[special]") {
  for (double x : {0.3, 1.0, 2.5, 7.7, 20.1, -0.4, -2.5})
    CHECK(cgamma(x) == Catch::Approx(std::tgamma(x)).epsilon(1e-13));
  for (double y : {0.5, 1.0, 3.0}) {
    const double mod2 = std::norm(cgamma(Complex(0.0, y)));
    CHECK(mod2 == Catch::Approx(std::numbers::pi / (y * std::sinh(std::numbers::pi * y))).epsilon(1e-13));
  }
  CHECK_THROWS_AS(cgamma(Complex(0.0)), pole_error);
  CHECK_THROWS_AS(cgamma(Complex(-3.0)), pole_error);
  CHECK(std::abs(rgamma(Complex(-2.0))) == 0.0);
  CHECK(harmonic(3) == Rational(11, 6));
}

namespace {

Complex hz(Complex s, double a) { return to_complex(hurwitz_zeta(s, a).value); }
Complex hz_prime(Complex s, double a) { return to_complex(hurwitz_zeta(s, a).derivative); }

}  // namespace

TEST_CASE("Hurwitz zeta identities", "[special]") {
  const double pi = std::numbers::pi;
  CHECK(hz(Complex(2.0), 1.0).real() == Catch::Approx(pi * pi / 6).epsilon(1e-15));
  CHECK(hz(Complex(-1.0), 1.0).real() == Catch::Approx(-1.0 / 12).epsilon(1e-15));
  for (double a : {0.5, 1.0, 1.5, 2.5, 3.0}) {
    CHECK(hz(Complex(0.0), a).real() == Catch::Approx(0.5 - a).margin(1e-15));
    CHECK(hz_prime(Complex(0.0), a).real() == Catch::Approx(std::lgamma(a) - 0.5 * std::log(2 * pi)).epsilon(1e-14));
  }
  for (Complex s : {Complex(0.3, 2.0), Complex(-3.5, 1.0), Complex(5.0, -4.0)}) {
    const Complex shift = hz(s, 1.5) - hz(s, 2.5);
    CHECK(std::abs(shift - std::pow(1.5, -s)) < 1e-13 * std::max(1.0, std::abs(shift)));
  }
}

TEST_CASE("sphere spectrum", "[sphere]") {
  const auto sp = dirac_sq_spectrum(2, 3);
  CHECK(sp.entries[0] == std::pair<double, double>{1.0, 4.0});
  CHECK(sp.entries[2] == std::pair<double, double>{9.0, 12.0});
  CHECK(sphere_multiplicity(3, 1) == 12.0);
  for (int n : {3, 4}) CHECK(weyl_exponent(dirac_sq_spectrum(n, 4000)) == Catch::Approx(0.5 * n).epsilon(0.02));
  CHECK_THROWS_AS(dirac_sq_spectrum(1, 3), std::invalid_argument);
}

TEST_CASE("continuation structure", "[sphere]") {
  CHECK(sphere_zeta_poles(3) == std::vector<double>{0.5, 1.5});
  CHECK(sphere_zeta_poles(4) == std::vector<double>{1.0, 2.0});
  CHECK_THROWS_AS(zeta_continued(3, 1.5), pole_error);
  CHECK_THROWS_AS(zeta_direct(3, 1.4, 100), std::domain_error);
  for (int n = 2; n <= 7; ++n)
    for (Complex s : {Complex(0.5 * n + 0.6, 0.0), Complex(0.5 * n + 2.0, 1.5)}) {
      const auto d = zeta_direct(n, s, 5000);
      CHECK(std::abs(d.value - zeta_continued(n, s)) < 1e-9);
      CHECK(std::abs(d.value - zeta_continued(n, s)) <= d.error_bound + 1e-12);
    }
}

TEST_CASE("determinants", "[sphere]") {
  // reference values from an independent 50-digit computation
  const std::vector<double> ref = {1.3233691496,      -0.437918961455,  -0.455465920155,  0.173015549834,
                                   0.183773451352,    -0.0737504824894, -0.0790603755656, 0.0326793988757,
                                   0.0352114451964,   -0.0148257784668, -0.0160261248035, 0.00683357259651,
                                   0.00740324994639};
  for (int n = 2; n <= 14; ++n) {
    const auto z = det_dirac_sq(n);
    CHECK(z.log_det == Catch::Approx(ref[static_cast<std::size_t>(n - 2)]).epsilon(1e-9));
    if (n % 2 == 1) CHECK(std::abs(z.zeta_at_0) < 1e-9);
    CHECK(z.det == Catch::Approx(std::exp(z.log_det)));
  }
}

TEST_CASE("pattern table", "[sphere]") {
  const auto rows = pattern_table(10);
  REQUIRE(rows.size() == 9);
  for (const auto& r : rows) {
    CHECK(r.sign_logdet == (((r.n - 1) / 2) % 2 == 0 ? 1 : -1));
    CHECK(r.extremal_type == ((r.n / 2) % 2 == 0 ? "local max" : "local min"));
  }
  CHECK_THROWS_AS(pattern_table(3), std::invalid_argument);
}
