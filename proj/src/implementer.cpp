#include "fockforge/implementer.hpp"

#include <cmath>
#include <stdexcept>

namespace fockforge {

namespace {

void require_symplectic(const SympMap& g, const char* what) {
  const auto report = is_symplectic(g, 1e-9);
  if (!report.symplectic) {
    throw std::invalid_argument(std::string(what) + ": map is not symplectic (violation " +
                                std::to_string(report.max_violation) + ")");
  }
}

int default_block(int block_degree, int cap) { return block_degree < 0 ? cap - 2 : block_degree; }

}  // namespace

FockVector transformed_create(const SympMap& g, const CVector& v, const FockVector& phi) {
  return create(g.c() * v, phi) + annihilate(g.a() * v.conjugate(), phi);
}

FockVector transformed_annihilate(const SympMap& g, const CVector& v, const FockVector& phi) {
  return annihilate(g.c() * v, phi) + create(g.a() * v.conjugate(), phi);
}

SparseCMatrix transformed_sparse(LadderKind kind, const SympMap& g, const CVector& v, const FockBasis& basis) {
  const CVector linear = g.c() * v;
  const CVector anti = g.a() * v.conjugate();
  switch (kind) {
    case LadderKind::create:
      return ladder_sparse(LadderKind::create, linear, basis) + ladder_sparse(LadderKind::annihilate, anti, basis);
    case LadderKind::annihilate:
      return ladder_sparse(LadderKind::annihilate, linear, basis) + ladder_sparse(LadderKind::create, anti, basis);
    case LadderKind::field:
      return ladder_sparse(LadderKind::field, g.apply(v), basis);
  }
  throw std::invalid_argument("transformed_sparse: unknown kind");
}

Implementer::Implementer(SympMap g, int cap, SymAntilinear shale, CMatrix matrix)
    : g_(std::move(g)),
      cap_(cap),
      shale_(std::move(shale)),
      matrix_(std::move(matrix)),
      normalization_(1.0 / std::sqrt(gaussian_norm2_exact(shale_))) {}

Implementer build_implementer(const SympMap& g, int cap) {
  if (cap < 0) throw std::invalid_argument("build_implementer: negative cap");
  require_symplectic(g, "build_implementer");
  SymAntilinear z = shale_operator(g);

  const std::size_t m = g.modes();
  const int work_cap = 2 * cap;
  const FockBasis work(m, work_cap);
  const FockBasis target(m, cap);

  std::vector<SparseCMatrix> raisers;
  raisers.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    raisers.push_back(transformed_sparse(LadderKind::create, g, unit_vector(m, k), work));
  }

  const auto n = static_cast<Eigen::Index>(target.size());
  std::vector<CVector> columns(target.size());
  columns[0] = gaussian(z, work_cap).to_dense(work);
  for (std::size_t col = 1; col < target.size(); ++col) {
    const MultiIndex& index = target[col];
    std::size_t k = 0;
    while (index[k] == 0) ++k;
    const std::size_t parent = *target.position(index.lowered(k));
    columns[col] = (raisers[k] * columns[parent]) / std::sqrt(static_cast<double>(index[k]));
  }

  CMatrix u(n, n);
  for (Eigen::Index c = 0; c < n; ++c) u.col(c) = columns[static_cast<std::size_t>(c)].head(n);
  return Implementer(g, cap, std::move(z), std::move(u));
}

OperatorMatrix normalized_matrix(const Implementer& imp) {
  OperatorMatrix out;
  out.modes = imp.modes();
  out.cap = imp.cap();
  out.degree_shift = 0;
  out.matrix = imp.normalization() * imp.matrix();
  return out;
}

double unitarity_deviation(const Implementer& imp, int block_degree) {
  const FockBasis basis(imp.modes(), imp.cap());
  const auto b = static_cast<Eigen::Index>(basis.block_size(block_degree));
  const CMatrix cols = imp.normalization() * imp.matrix().leftCols(b);
  const CMatrix gram = cols.adjoint() * cols - CMatrix::Identity(b, b);
  Eigen::JacobiSVD<CMatrix> svd(gram);
  return svd.singularValues()(0);
}

double adjoint_check(const SympMap& g, int cap, int block_degree) {
  const Implementer forward = build_implementer(g, cap);
  const Implementer backward = build_implementer(invert(g), cap);
  const FockBasis basis(g.modes(), cap);
  const auto b = static_cast<Eigen::Index>(basis.block_size(default_block(block_degree, cap)));
  const CMatrix diff = forward.matrix().topLeftCorner(b, b).adjoint() - backward.matrix().topLeftCorner(b, b);
  return diff.cwiseAbs().maxCoeff();
}

IntertwiningReport intertwining_deviation(const Implementer& imp, const CVector& v, int block_degree) {
  const FockBasis basis(imp.modes(), imp.cap());
  const auto b = static_cast<Eigen::Index>(basis.block_size(default_block(block_degree, imp.cap())));
  const CMatrix& u = imp.matrix();
  const SympMap& g = imp.map();

  auto deviation = [&](LadderKind kind) {
    const CMatrix plain(ladder_sparse(kind, v, basis));
    const CMatrix moved(transformed_sparse(kind, g, v, basis));
    const CMatrix diff = u * plain - moved * u;
    return diff.topLeftCorner(b, b).cwiseAbs().maxCoeff();
  };

  IntertwiningReport r;
  r.create = deviation(LadderKind::create);
  r.annihilate = deviation(LadderKind::annihilate);
  r.field = deviation(LadderKind::field);
  return r;
}

CMatrix transformed_vacuum_kernel(const SympMap& g, int cap) {
  if (cap < 2) throw std::invalid_argument("transformed_vacuum_kernel: cap must be at least 2");
  const FockBasis basis(g.modes(), cap);
  const auto cols = static_cast<Eigen::Index>(basis.block_size(cap - 1));
  const auto rows = static_cast<Eigen::Index>(basis.block_size(cap - 2));
  std::vector<CMatrix> ops;
  for (std::size_t k = 0; k < g.modes(); ++k) {
    const CMatrix full(transformed_sparse(LadderKind::annihilate, g, unit_vector(g.modes(), k), basis));
    ops.push_back(full.topLeftCorner(rows, cols));
  }
  return joint_kernel(ops);
}

Complex cocycle(const SympMap& g, const SympMap& h) {
  const SymAntilinear z_h = shale_operator(h);
  const SymAntilinear z_ginv = shale_operator(invert(g));
  return inv_sqrt_det_one_minus(z_h.matrix() * z_ginv.matrix().conjugate());
}

Complex cocycle_from_vacuum_entry(const Implementer& ug, const Implementer& uh) {
  if (ug.modes() != uh.modes() || ug.cap() != uh.cap()) {
    throw std::invalid_argument("cocycle_from_vacuum_entry: implementers differ in shape");
  }
  return (ug.matrix().row(0).transpose().array() * uh.matrix().col(0).array()).sum();
}

Complex fock_kernel(const Implementer& imp, const CVector& x, const CVector& y) {
  const FockBasis basis(imp.modes(), imp.cap());
  const CVector ex = coherent(x, imp.cap()).to_dense(basis);
  const CVector ey = coherent(y, imp.cap()).to_dense(basis);
  return ex.dot(imp.matrix() * ey);
}

}  // namespace fockforge
