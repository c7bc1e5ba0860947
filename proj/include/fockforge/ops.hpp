#pragma once

// Creators, annihilators and field operators on truncated Fock vectors.
//
// On basis elements
//   c(e_k) v^D = sqrt(d_k + 1) v^{D + e_k}
//   a(e_k) v^D = sqrt(d_k)     v^{D - e_k}
// c(v) is complex-linear in v while a(v) is ANTIlinear, so that
// a(v) w = <v|w> on one-particle vectors. Anything pushed above the cap of
// the input vector is dropped.

#include <Eigen/SparseCore>
#include <span>

#include "fockforge/symalg.hpp"
#include "fockforge/types.hpp"

namespace fockforge {

using SparseCMatrix = Eigen::SparseMatrix<Complex>;

enum class LadderKind { create, annihilate, field };

FockVector create(const CVector& v, const FockVector& phi);
FockVector annihilate(const CVector& v, const FockVector& phi);
// (c(v) + a(v)) / sqrt(2); real-linear in v.
FockVector field(const CVector& v, const FockVector& phi);
// Degree-d component multiplied by d.
FockVector number_apply(const FockVector& phi);

struct OperatorMatrix {
  std::size_t modes = 0;
  int cap = 0;
  // +1 creator, -1 annihilator, 0 mixed.
  int degree_shift = 0;
  CMatrix matrix;

  FockVector apply(const FockVector& phi) const;
};

OperatorMatrix operator_matrix(LadderKind kind, const CVector& v, std::size_t modes, int cap);

// Same operator assembled sparse against a prebuilt basis.
SparseCMatrix ladder_sparse(LadderKind kind, const CVector& v, const FockBasis& basis);

// Orthonormal basis (as columns) of the common kernel of `ops`, using
// singular values below `tol` times the largest one.
CMatrix joint_kernel(std::span<const CMatrix> ops, double tol = 1e-10);

}  // namespace fockforge
