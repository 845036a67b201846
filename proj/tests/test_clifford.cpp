#include <catch_amalgamated.hpp>

#include "spinhess/clifford.hpp"
#include "support.hpp"

using namespace spinhess;

namespace {

// tr(v_1 ... v_m) for even m from the anticommutation relation alone:
// tr(v_1 w) = sum_{j>=2} (-1)^j <v_1, v_j> tr(w without v_j) ... with tr() = dim_e.
double trace_recursion(const std::vector<Vec>& v, int dim_e) {
  if (v.empty()) return dim_e;
  if (v.size() % 2 == 1) return 0.0;
  double acc = 0.0;
  for (std::size_t j = 1; j < v.size(); ++j) {
    std::vector<Vec> rest;
    for (std::size_t i = 1; i < v.size(); ++i)
      if (i != j) rest.push_back(v[i]);
    const double sign = j % 2 == 1 ? -1.0 : 1.0;
    acc += sign * v[0].dot(v[j]) * trace_recursion(rest, dim_e);
  }
  return acc;
}

}  // namespace

TEST_CASE("fiber dimension and relations", "[clifford]") {
  for (int n = 1; n <= 10; ++n) {
    const auto rep = build_gamma_rep(n);
    CHECK(rep.dim_e == (1 << (n / 2)));
    CHECK(static_cast<int>(rep.gammas.size()) == n);
    CHECK(anticommutator_residual(rep) < 1e-14);
    CHECK(skew_hermitian_residual(rep) < 1e-14);
  }
}

TEST_CASE("construction errors", "[clifford]") {
  CHECK_THROWS_AS(build_gamma_rep(0), std::invalid_argument);
  CHECK_THROWS_AS(build_gamma_rep(22), resource_limit_error);
  CHECK_THROWS_AS(build_gamma_rep(8, 8), resource_limit_error);
  CHECK_NOTHROW(build_gamma_rep(8, 16));
}

TEST_CASE("traces match the anticommutation recursion", "[clifford][property]") {
  testing::Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    const int n = rng.integer(2, 8);
    const int len = 2 * rng.integer(1, 3);
    const auto rep = build_gamma_rep(n);
    std::vector<Vec> v;
    for (int i = 0; i < len; ++i) v.push_back(rng.vec(n));
    const double expect = trace_recursion(v, rep.dim_e);
    const Complex got = trace_product(rep, std::span<const Vec>(v));
    CHECK(std::abs(got - expect) < 1e-11 * std::max(1.0, std::abs(expect)));
  }
}

TEST_CASE("odd words are traceless below the top degree", "[clifford][property]") {
  testing::Rng rng(12);
  for (int n = 2; n <= 8; ++n) {
    const auto rep = build_gamma_rep(n);
    for (int len = 1; len <= 5; len += 2) {
      if (n % 2 == 1 && len >= n) continue;
      std::vector<Vec> v;
      for (int i = 0; i < len; ++i) v.push_back(rng.vec(n));
      CHECK(std::abs(trace_product(rep, std::span<const Vec>(v))) < 1e-12);
    }
  }
}

TEST_CASE("odd n top-degree word has nonzero trace", "[clifford]") {
  const auto rep = build_gamma_rep(3);
  const Complex tr = trace_product(rep, {Vec::Unit(3, 0), Vec::Unit(3, 1), Vec::Unit(3, 2)});
  CHECK(std::abs(tr) == Catch::Approx(2.0));
}

TEST_CASE("four-fold closed form", "[clifford]") {
  testing::Rng rng(13);
  for (int n = 2; n <= 8; ++n) {
    const auto rep = build_gamma_rep(n);
    const Vec a = rng.vec(n), b = rng.vec(n), c = rng.vec(n), d = rng.vec(n);
    CHECK(std::abs(trace_product(rep, {a, b, c, d}) - closed_form_trace4(a, b, c, d, rep.dim_e)) < 1e-11);
    CHECK(std::abs(trace_product(rep, {a, b}) + rep.dim_e * a.dot(b)) < 1e-12);
  }
}

TEST_CASE("corollary normalization carries the fiber dimension", "[clifford]") {
  testing::Rng rng(14);
  for (int n = 2; n <= 7; ++n) {
    const auto rep = build_gamma_rep(n);
    const double r = corollary_trace_normalization(rep, rng.vec(n), rng.spd(n));
    CHECK(r == Catch::Approx(rep.dim_e).epsilon(1e-12));
  }
  const auto rep = build_gamma_rep(3);
  CHECK_THROWS_AS(corollary_trace_normalization(rep, Vec::Unit(3, 0), Mat::Zero(3, 3)), std::invalid_argument);
}

TEST_CASE("dimension mismatch is rejected", "[clifford]") {
  const auto rep = build_gamma_rep(3);
  CHECK_THROWS(closed_form_trace4(Vec::Zero(3), Vec::Zero(2), Vec::Zero(3), Vec::Zero(3), 2));
}
