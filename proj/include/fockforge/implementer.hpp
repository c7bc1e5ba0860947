#pragma once

// Fock implementers U_g of symplectic maps on the truncated occupation basis.
//
// U_g is fixed by U_g 1 = e^{Z_g} and
//   U_g(v_1 ... v_n) = c_g(v_1) ... c_g(v_n) e^{Z_g},
// where c_g(v) = c(C_g v) + a(A_g v) and a_g(v) = a(C_g v) + c(A_g v).
// Columns are generated on an internal basis of degree 2 * cap so that
// every stored entry <v^E|U_g v^D> with |D|, |E| <= cap is exact up to
// rounding: column D is accurate through degree (2 cap - |D|).

#include <vector>

#include "fockforge/expstates.hpp"
#include "fockforge/ops.hpp"
#include "fockforge/symalg.hpp"
#include "fockforge/symplectic.hpp"

namespace fockforge {

FockVector transformed_create(const SympMap& g, const CVector& v, const FockVector& phi);
FockVector transformed_annihilate(const SympMap& g, const CVector& v, const FockVector& phi);

// c_g(v) (create) or a_g(v) (annihilate) assembled on `basis`.
SparseCMatrix transformed_sparse(LadderKind kind, const SympMap& g, const CVector& v,
                                 const FockBasis& basis);

class Implementer {
 public:
  Implementer(SympMap g, int cap, SymAntilinear shale, CMatrix matrix);

  const SympMap& map() const { return g_; }
  int cap() const { return cap_; }
  std::size_t modes() const { return g_.modes(); }
  const SymAntilinear& shale() const { return shale_; }
  // U_g in enumerate_basis(modes, cap) order.
  const CMatrix& matrix() const { return matrix_; }
  // det(I - M M^dagger)^{1/4} = |e^{Z_g}|^{-1}.
  double normalization() const { return normalization_; }

  CVector vacuum_column() const { return matrix_.col(0); }

 private:
  SympMap g_;
  int cap_;
  SymAntilinear shale_;
  CMatrix matrix_;
  double normalization_;
};

// Throws std::invalid_argument for non-symplectic g.
Implementer build_implementer(const SympMap& g, int cap);

// U(g) = det(I - M M^dagger)^{1/4} U_g.
OperatorMatrix normalized_matrix(const Implementer& imp);

// Spectral norm of U(g)^dagger U(g) - I on the columns of degree <= block_degree.
double unitarity_deviation(const Implementer& imp, int block_degree);

// Max entry of U_g^dagger - U_{g^{-1}} on degrees <= block_degree
// (default cap - 2).
double adjoint_check(const SympMap& g, int cap, int block_degree = -1);

struct IntertwiningReport {
  double create = 0.0;      // max |U c(v) - c_g(v) U|
  double annihilate = 0.0;  // max |U a(v) - a_g(v) U|
  double field = 0.0;       // max |U pi(v) - pi(g v) U|
  double max() const { return std::max({create, annihilate, field}); }
};

// Deviations over rows and columns of degree <= block_degree (default cap - 2).
IntertwiningReport intertwining_deviation(const Implementer& imp, const CVector& v, int block_degree = -1);

// Orthonormal basis of the joint kernel of {a_g(e_k)} acting from degrees
// <= cap - 1 into degrees <= cap - 2.
CMatrix transformed_vacuum_kernel(const SympMap& g, int cap);

// delta(g, h) = det(I - M_{Z_h} conj(M_{Z_{g^{-1}}}))^{-1/2}, principal branch.
Complex cocycle(const SympMap& g, const SympMap& h);

// <1|U_g U_h 1> from truncated matrices; U_{gh} has vacuum entry 1, so this
// is the cocycle read off the vacuum-vacuum entry.
Complex cocycle_from_vacuum_entry(const Implementer& ug, const Implementer& uh);

// Truncated <e^x|U_g e^y>.
Complex fock_kernel(const Implementer& imp, const CVector& x, const CVector& y);

}  // namespace fockforge
