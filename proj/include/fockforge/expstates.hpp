#pragma once

// Exponential vectors: coherent vectors e^z, quadratics zeta_M, Gaussians
// e^Z = exp(zeta_M), and their closed-form norms and pairings.

#include <limits>
#include <vector>

#include "fockforge/symalg.hpp"
#include "fockforge/types.hpp"

namespace fockforge {

// Symmetric antilinear map v -> M conj(v) stored by its complex symmetric
// matrix M. As a complex-linear map its square is M conj(M) = M M^dagger.
class SymAntilinear {
 public:
  // Rejects matrices that are not square or not symmetric to within
  // `tol * max(1, |M|)`; the stored matrix is the symmetrized input.
  explicit SymAntilinear(const CMatrix& m, double tol = 1e-10);

  static SymAntilinear zero(std::size_t modes);

  const CMatrix& matrix() const { return m_; }
  std::size_t modes() const { return static_cast<std::size_t>(m_.rows()); }

  CVector apply(const CVector& v) const { return m_ * v.conjugate(); }
  double op_norm() const;
  double hs_norm() const { return m_.norm(); }

 private:
  CMatrix m_;
};

FockVector coherent(const CVector& z, int cap);

// zeta = 1/2 sum_{a,b} M_ab v_a v_b, a degree-2 vector.
FockVector quadratic(const SymAntilinear& z);

// Degree-1 part of a(v) zeta, returned as an m-vector; equals M conj(v).
CVector annihilate_quadratic_check(const CVector& v, const SymAntilinear& z);

// sum_{n: 2n <= cap} zeta^n / n! by repeated truncated products.
FockVector gaussian(const SymAntilinear& z, int cap);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// det(I - M M^dagger)^{-1/2} when |M| < 1, +inf otherwise.
double gaussian_norm2_exact(const SymAntilinear& z);

// <e^X|e^Y> = det(I - M_Y conj(M_X))^{-1/2} on the principal branch.
// Throws std::domain_error unless both operator norms are below 1.
Complex gaussian_pair_exact(const SymAntilinear& x, const SymAntilinear& y);

// det(I - K)^{-1/2} with the principal logarithm summed over eigenvalues;
// valid whenever every eigenvalue of K lies in the open unit disc.
Complex inv_sqrt_det_one_minus(const CMatrix& k);

// <e^z|e^Z> = exp(1/2 z^dagger M conj(z)).
Complex coherent_gaussian_pair(const CVector& z, const SymAntilinear& m);

// sum phi^n / n! truncated at cap, for homogeneous phi.
FockVector exp_homogeneous(const FockVector& phi, int cap);

// Squared norms of the truncations of a vector at each listed cap.
std::vector<double> partial_norms2(const FockVector& phi, std::span<const int> caps);

// True when the sequence is strictly increasing.
bool strictly_increasing(std::span<const double> values);

}  // namespace fockforge
