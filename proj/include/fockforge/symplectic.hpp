#pragma once

// Real-linear maps of C^m stored as g v = C v + A conj(v).
//
// The identification C^m = R^{2m} sends v = x + i y to (x, y); J is
// multiplication by i, and the symplectic form is Omega(x, y) = Im<x|y>.

#include <cstdint>
#include <vector>

#include "fockforge/expstates.hpp"
#include "fockforge/types.hpp"

namespace fockforge {

class SympMap {
 public:
  // Throws std::invalid_argument for shape mismatch or a singular real form.
  SympMap(CMatrix c, CMatrix a);

  static SympMap identity(std::size_t modes);

  const CMatrix& c() const { return c_; }
  const CMatrix& a() const { return a_; }
  std::size_t modes() const { return static_cast<std::size_t>(c_.rows()); }

  CVector apply(const CVector& v) const { return c_ * v + a_ * v.conjugate(); }
  RMatrix real_form() const;

 private:
  CMatrix c_;
  CMatrix a_;
};

// (C, A) = ((G - JGJ)/2, (G + JGJ)/2) read back into complex matrices.
SympMap split(const RMatrix& g);

// The real 2m x 2m matrix of J.
RMatrix real_j(std::size_t modes);

struct SymplecticReport {
  bool symplectic = false;
  double max_violation = 0.0;
};

// Checks Im<gx|gy> = Im<x|y> on every pair from {e_k, i e_k}.
SymplecticReport is_symplectic(const SympMap& g, double tol = 1e-10);

SympMap compose(const SympMap& g, const SympMap& h);
SympMap invert(const SympMap& g);

// -J g J = C - A. It intertwines the Weyl operators exactly as g
// intertwines the fields: U W(v) U^{-1} = W((C - A) v) when U pi(v) U^{-1} = pi(g v).
SympMap j_conjugate(const SympMap& g);

// Matrix of Z_g = -A_g C_g^{-1} (antilinear composition), i.e.
// -A conj(C^{-1}). Throws for non-symplectic input.
SymAntilinear shale_operator(const SympMap& g, double tol = 1e-9);
// The same operator as C_{g^{-1}}^{-1} A_{g^{-1}}, computed independently.
CMatrix shale_operator_via_inverse(const SympMap& g);

// g v = cosh(r) v + sinh(r) conj(v) on one mode, identity elsewhere.
SympMap make_squeeze(double r, std::size_t mode, std::size_t modes);
// Independent squeezes on every mode.
SympMap make_squeeze_diag(const std::vector<double>& r);
// Throws for non-unitary u.
SympMap make_unitary(const CMatrix& u, double tol = 1e-10);
CMatrix random_unitary(std::size_t modes, std::uint64_t seed);

// U_0 S_1 U_1 ... S_depth U_depth with Haar-like unitaries and diagonal
// squeezes drawn uniformly from [-spread, spread]. With depth 1 the Shale
// operator norm is tanh(max |r|).
SympMap random_symplectic(std::size_t modes, std::uint64_t seed, double spread, int depth = 1);

}  // namespace fockforge
