#pragma once

#include <random>

#include "spinhess/fiber_algebra.hpp"

namespace spinhess::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double normal() { return nd_(eng_); }
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(eng_); }
  Vec vec(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = normal();
    return v;
  }
  Covector covector(int n) {
    Vec v = vec(n);
    while (v.norm() < 1e-2) v = vec(n);
    return Covector(v);
  }
  SymTensor sym(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = normal();
    return SymTensor(m);
  }
  Mat spd(int n) {
    Mat a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = normal();
    return a * a.transpose() + 0.3 * Mat::Identity(n, n);
  }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
  std::normal_distribution<double> nd_;
};

}  // namespace spinhess::testing
