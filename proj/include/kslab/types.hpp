#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace kslab {

using Complex = std::complex<double>;
using Point = Eigen::VectorXd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Raised when an operation's precondition on its arguments is violated.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical construction cannot be carried out.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Outcome of a verification: the measured residual and the largest
/// finite-difference error estimate encountered while computing it.
struct CheckResult {
  double residual = 0.0;
  double fd_error = 0.0;

  void absorb(const CheckResult& other) {
    residual = std::max(residual, other.residual);
    fd_error = std::max(fd_error, other.fd_error);
  }
};

/// Max-norm of any Eigen expression (0 for empty objects).
template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

/// ‖a − b‖ / max(‖a‖, ‖b‖, 1) in the max norm.
template <class A, class B>
double relative_diff(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  const double scale = std::max({max_abs(a), max_abs(b), 1.0});
  return max_abs(a - b) / scale;
}

inline double relative_diff(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

}  // namespace kslab
