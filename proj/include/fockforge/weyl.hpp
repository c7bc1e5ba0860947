#pragma once

// Coherent-state model: finite combinations of formal exponentials eps^z
// with <eps^x|eps^y> = exp(<x|y>). Everything here is closed form; no
// truncation enters.

#include <vector>

#include "fockforge/expstates.hpp"
#include "fockforge/symplectic.hpp"
#include "fockforge/types.hpp"

namespace fockforge {

inline constexpr double kPointTolerance = 1e-12;

class CoherentSpan {
 public:
  // Points must share a dimension and be pairwise distinct (max coordinate
  // difference above kPointTolerance).
  CoherentSpan(std::vector<CVector> points, std::vector<Complex> weights);

  const std::vector<CVector>& points() const { return points_; }
  const std::vector<Complex>& weights() const { return weights_; }
  std::size_t size() const { return points_.size(); }
  std::size_t modes() const { return static_cast<std::size_t>(points_.front().size()); }

 private:
  std::vector<CVector> points_;
  std::vector<Complex> weights_;
};

// G_ij = exp(<z_i|z_j>); throws on duplicate points.
CMatrix coherent_gram(const std::vector<CVector>& points);

Complex span_inner(const CoherentSpan& a, const CoherentSpan& b);

// W(v) eps^z = exp(-|v|^2/2 - <v|z>) eps^{v+z}.
CoherentSpan weyl_apply(const CVector& v, const CoherentSpan& span);

// Max weight/point deviation between W(x)W(y) and exp(-i Omega(x,y)) W(x+y)
// applied to `span`.
double weyl_cocycle_check(const CVector& x, const CVector& y, const CoherentSpan& span);

// <eps^x|W(tv) eps^y> in closed form.
Complex regularity_element(const CVector& x, const CVector& v, const CVector& y, double t);
// The same matrix element through weyl_apply and the Gram pairing.
Complex regularity_via_spans(const CVector& x, const CVector& v, const CVector& y, double t);

// [U_g eps^y](eps^x) =
//   exp{ 1/2 <x|C_{g^-1}^{-1}(y - A_{g^-1} x)> + 1/2 <C_g^{-1}(x - A_g y)|y> }.
// This U_g satisfies U W(v) = W(g v) U. On the occupation basis it agrees
// with build_implementer(j_conjugate(g)).
Complex implementer_kernel(const SympMap& g, const CVector& x, const CVector& y);

// |[U_g W(v) eps^y](eps^x) - [U_g eps^y](W(-g v) eps^x)|.
double kernel_intertwining_deviation(const SympMap& g, const CVector& v, const CVector& x, const CVector& y);

// Column rank of {v^D e^Z : |D| <= b} projected to degrees <= b.
// Full rank C(m + b, b) certifies cyclicity for creators at this truncation.
// Throws std::domain_error when |M| >= 1.
int cyclicity_rank(const SymAntilinear& m, int cap, int probe_degree);

}  // namespace fockforge
