#include "fockforge/symplectic.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace fockforge {

SympMap::SympMap(CMatrix c, CMatrix a) : c_(std::move(c)), a_(std::move(a)) {
  if (c_.rows() != c_.cols() || a_.rows() != a_.cols() || c_.rows() != a_.rows() || c_.rows() == 0) {
    throw std::invalid_argument("SympMap: C and A must be square of the same size");
  }
  Eigen::FullPivLU<RMatrix> lu(real_form());
  if (!lu.isInvertible()) throw std::invalid_argument("SympMap: map is singular");
}

SympMap SympMap::identity(std::size_t modes) {
  const auto m = static_cast<Eigen::Index>(modes);
  return SympMap(CMatrix::Identity(m, m), CMatrix::Zero(m, m));
}

RMatrix SympMap::real_form() const {
  const Eigen::Index m = c_.rows();
  RMatrix g(2 * m, 2 * m);
  g.topLeftCorner(m, m) = c_.real() + a_.real();
  g.topRightCorner(m, m) = -c_.imag() + a_.imag();
  g.bottomLeftCorner(m, m) = c_.imag() + a_.imag();
  g.bottomRightCorner(m, m) = c_.real() - a_.real();
  return g;
}

SympMap split(const RMatrix& g) {
  if (g.rows() != g.cols() || g.rows() % 2 != 0 || g.rows() == 0) {
    throw std::invalid_argument("split: expected a 2m x 2m matrix");
  }
  const Eigen::Index m = g.rows() / 2;
  const RMatrix tl = g.topLeftCorner(m, m), tr = g.topRightCorner(m, m);
  const RMatrix bl = g.bottomLeftCorner(m, m), br = g.bottomRightCorner(m, m);
  CMatrix c(m, m), a(m, m);
  c.real() = 0.5 * (tl + br);
  c.imag() = 0.5 * (bl - tr);
  a.real() = 0.5 * (tl - br);
  a.imag() = 0.5 * (bl + tr);
  return SympMap(std::move(c), std::move(a));
}

RMatrix real_j(std::size_t modes) {
  const auto m = static_cast<Eigen::Index>(modes);
  RMatrix j = RMatrix::Zero(2 * m, 2 * m);
  j.topRightCorner(m, m) = -RMatrix::Identity(m, m);
  j.bottomLeftCorner(m, m) = RMatrix::Identity(m, m);
  return j;
}

SymplecticReport is_symplectic(const SympMap& g, double tol) {
  const std::size_t m = g.modes();
  std::vector<CVector> probes;
  probes.reserve(2 * m);
  for (std::size_t k = 0; k < m; ++k) probes.push_back(unit_vector(m, k));
  for (std::size_t k = 0; k < m; ++k) probes.push_back(kI * unit_vector(m, k));

  std::vector<CVector> images;
  images.reserve(probes.size());
  for (const auto& p : probes) images.push_back(g.apply(p));

  SymplecticReport report;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    for (std::size_t j = 0; j < probes.size(); ++j) {
      const double dev = std::abs(omega(images[i], images[j]) - omega(probes[i], probes[j]));
      report.max_violation = std::max(report.max_violation, dev);
    }
  }
  report.symplectic = report.max_violation <= tol;
  return report;
}

SympMap compose(const SympMap& g, const SympMap& h) {
  if (g.modes() != h.modes()) throw std::invalid_argument("compose: mode mismatch");
  return SympMap(g.c() * h.c() + g.a() * h.a().conjugate(), g.c() * h.a() + g.a() * h.c().conjugate());
}

SympMap invert(const SympMap& g) { return split(g.real_form().inverse()); }

SympMap j_conjugate(const SympMap& g) { return SympMap(g.c(), -g.a()); }

SymAntilinear shale_operator(const SympMap& g, double tol) {
  const auto report = is_symplectic(g, tol);
  if (!report.symplectic) {
    throw std::invalid_argument("shale_operator: map is not symplectic (violation " +
                                std::to_string(report.max_violation) + ")");
  }
  Eigen::PartialPivLU<CMatrix> lu(g.c());
  const auto m = static_cast<Eigen::Index>(g.modes());
  const CMatrix c_inv = lu.solve(CMatrix::Identity(m, m));
  if (!c_inv.allFinite()) throw std::invalid_argument("shale_operator: C_g is singular");
  // A(C^{-1} w) = A conj(C^{-1}) conj(w).
  return SymAntilinear(-g.a() * c_inv.conjugate(), 1e-8);
}

CMatrix shale_operator_via_inverse(const SympMap& g) {
  const SympMap inv = invert(g);
  return inv.c().partialPivLu().solve(inv.a());
}

SympMap make_squeeze(double r, std::size_t mode, std::size_t modes) {
  if (mode >= modes) throw std::invalid_argument("make_squeeze: mode out of range");
  std::vector<double> rs(modes, 0.0);
  rs[mode] = r;
  return make_squeeze_diag(rs);
}

SympMap make_squeeze_diag(const std::vector<double>& r) {
  const auto m = static_cast<Eigen::Index>(r.size());
  CMatrix c = CMatrix::Identity(m, m);
  CMatrix a = CMatrix::Zero(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    c(k, k) = std::cosh(r[static_cast<std::size_t>(k)]);
    a(k, k) = std::sinh(r[static_cast<std::size_t>(k)]);
  }
  return SympMap(std::move(c), std::move(a));
}

SympMap make_unitary(const CMatrix& u, double tol) {
  if (u.rows() != u.cols()) throw std::invalid_argument("make_unitary: matrix is not square");
  const double dev = (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).norm();
  if (dev > tol) throw std::invalid_argument("make_unitary: matrix is not unitary");
  return SympMap(u, CMatrix::Zero(u.rows(), u.cols()));
}

CMatrix random_unitary(std::size_t modes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const auto m = static_cast<Eigen::Index>(modes);
  CMatrix z(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) z(i, j) = Complex{normal(rng), normal(rng)};
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(m, m);
  // Fix the phases so the distribution does not depend on the QR convention.
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < m; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

SympMap random_symplectic(std::size_t modes, std::uint64_t seed, double spread, int depth) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-spread, spread);
  SympMap g = make_unitary(random_unitary(modes, rng()));
  for (int layer = 0; layer < depth; ++layer) {
    std::vector<double> r(modes);
    for (auto& x : r) x = uniform(rng);
    g = compose(g, make_squeeze_diag(r));
    g = compose(g, make_unitary(random_unitary(modes, rng())));
  }
  return g;
}

}  // namespace fockforge
