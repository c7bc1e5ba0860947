#include "fockforge/ops.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fockforge {

namespace {

void check_modes(const CVector& v, const FockVector& phi, const char* what) {
  if (static_cast<std::size_t>(v.size()) != phi.modes()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

}  // namespace

FockVector create(const CVector& v, const FockVector& phi) {
  check_modes(v, phi, "create");
  FockVector out(phi.modes(), phi.cap());
  for (const auto& [index, c] : phi.coeffs()) {
    if (index.degree() >= phi.cap()) break;
    for (std::size_t k = 0; k < phi.modes(); ++k) {
      const Complex vk = v(static_cast<Eigen::Index>(k));
      if (vk == Complex{0.0}) continue;
      out.add(index.raised(k), vk * std::sqrt(static_cast<double>(index[k] + 1)) * c);
    }
  }
  return out;
}

FockVector annihilate(const CVector& v, const FockVector& phi) {
  check_modes(v, phi, "annihilate");
  FockVector out(phi.modes(), phi.cap());
  for (const auto& [index, c] : phi.coeffs()) {
    for (std::size_t k = 0; k < phi.modes(); ++k) {
      if (index[k] == 0) continue;
      const Complex vk = std::conj(v(static_cast<Eigen::Index>(k)));
      if (vk == Complex{0.0}) continue;
      out.add(index.lowered(k), vk * std::sqrt(static_cast<double>(index[k])) * c);
    }
  }
  return out;
}

FockVector field(const CVector& v, const FockVector& phi) {
  FockVector out = create(v, phi) + annihilate(v, phi);
  return out *= Complex{1.0 / std::sqrt(2.0)};
}

FockVector number_apply(const FockVector& phi) {
  FockVector out(phi.modes(), phi.cap());
  for (const auto& [index, c] : phi.coeffs()) out.add(index, static_cast<double>(index.degree()) * c);
  return out;
}

FockVector OperatorMatrix::apply(const FockVector& phi) const {
  if (phi.modes() != modes) throw std::invalid_argument("OperatorMatrix::apply: mode mismatch");
  FockBasis basis(modes, cap);
  return FockVector::from_dense(basis, matrix * phi.to_dense(basis));
}

SparseCMatrix ladder_sparse(LadderKind kind, const CVector& v, const FockBasis& basis) {
  if (static_cast<std::size_t>(v.size()) != basis.modes()) {
    throw std::invalid_argument("ladder_sparse: dimension mismatch");
  }
  const double field_scale = 1.0 / std::sqrt(2.0);
  const bool raise = kind != LadderKind::annihilate;
  const bool lower = kind != LadderKind::create;
  const double scale = kind == LadderKind::field ? field_scale : 1.0;

  std::vector<Eigen::Triplet<Complex>> triplets;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const MultiIndex& index = basis[col];
    for (std::size_t k = 0; k < basis.modes(); ++k) {
      const Complex vk = v(static_cast<Eigen::Index>(k));
      if (vk == Complex{0.0}) continue;
      if (raise && index.degree() < basis.cap()) {
        auto row = basis.position(index.raised(k));
        triplets.emplace_back(static_cast<int>(*row), static_cast<int>(col),
                              scale * vk * std::sqrt(static_cast<double>(index[k] + 1)));
      }
      if (lower && index[k] > 0) {
        auto row = basis.position(index.lowered(k));
        triplets.emplace_back(static_cast<int>(*row), static_cast<int>(col),
                              scale * std::conj(vk) * std::sqrt(static_cast<double>(index[k])));
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(basis.size());
  SparseCMatrix m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

OperatorMatrix operator_matrix(LadderKind kind, const CVector& v, std::size_t modes, int cap) {
  FockBasis basis(modes, cap);
  OperatorMatrix out;
  out.modes = modes;
  out.cap = cap;
  out.degree_shift = kind == LadderKind::create ? 1 : kind == LadderKind::annihilate ? -1 : 0;
  out.matrix = CMatrix(ladder_sparse(kind, v, basis));
  return out;
}

CMatrix joint_kernel(std::span<const CMatrix> ops, double tol) {
  if (ops.empty()) throw std::invalid_argument("joint_kernel: no operators");
  const Eigen::Index n = ops.front().cols();
  CMatrix stacked(0, n);
  for (const auto& op : ops) {
    if (op.cols() != n) throw std::invalid_argument("joint_kernel: column mismatch");
    CMatrix next(stacked.rows() + op.rows(), n);
    next << stacked, op;
    stacked.swap(next);
  }
  Eigen::JacobiSVD<CMatrix> svd(stacked, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cutoff = tol * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cutoff) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

}  // namespace fockforge
