#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace spinhess {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// Raised when a requested object would exceed a configured size cap.
class resource_limit_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Raised when a meromorphic quantity is evaluated at (or too close to) a pole.
class pole_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

inline void require_dim(long got, long expected, const char* what) {
  if (got != expected) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (got " +
                                std::to_string(got) + ", expected " +
                                std::to_string(expected) + ")");
  }
}

inline double kron(int a, int b) { return a == b ? 1.0 : 0.0; }

}  // namespace detail
}  // namespace spinhess
