#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace fockforge {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

inline constexpr Complex kI{0.0, 1.0};

// Inner products are antilinear in the first slot throughout the library.
inline Complex inner(const CVector& x, const CVector& y) { return x.dot(y); }

// Symplectic form Im<x|y>.
inline double omega(const CVector& x, const CVector& y) { return inner(x, y).imag(); }

inline CVector unit_vector(std::size_t modes, std::size_t k) {
  CVector e = CVector::Zero(static_cast<Eigen::Index>(modes));
  e(static_cast<Eigen::Index>(k)) = 1.0;
  return e;
}

}  // namespace fockforge
