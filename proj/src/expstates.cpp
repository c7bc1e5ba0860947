#include "fockforge/expstates.hpp"

#include <cmath>
#include <stdexcept>

#include "fockforge/ops.hpp"

namespace fockforge {

SymAntilinear::SymAntilinear(const CMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("SymAntilinear: matrix must be square and non-empty");
  }
  const double asym = (m - m.transpose()).norm();
  if (asym > tol * std::max(1.0, m.norm())) {
    throw std::invalid_argument("SymAntilinear: matrix is not symmetric (|M - M^T| = " +
                                std::to_string(asym) + ")");
  }
  m_ = 0.5 * (m + m.transpose());
}

SymAntilinear SymAntilinear::zero(std::size_t modes) {
  const auto n = static_cast<Eigen::Index>(modes);
  return SymAntilinear(CMatrix::Zero(n, n));
}

double SymAntilinear::op_norm() const {
  Eigen::JacobiSVD<CMatrix> svd(m_);
  return svd.singularValues()(0);
}

FockVector coherent(const CVector& z, int cap) {
  const auto m = static_cast<std::size_t>(z.size());
  FockBasis basis(m, cap);
  FockVector out(m, cap);
  for (const auto& index : basis.indices()) {
    Complex c = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
      const int d = index[k];
      if (d == 0) continue;
      c *= std::pow(z(static_cast<Eigen::Index>(k)), d) / std::sqrt(std::tgamma(d + 1.0));
    }
    out.add(index, c);
  }
  return out;
}

FockVector quadratic(const SymAntilinear& z) {
  const std::size_t m = z.modes();
  const CMatrix& mat = z.matrix();
  FockVector out(m, 2);
  for (std::size_t a = 0; a < m; ++a) {
    const auto ia = static_cast<Eigen::Index>(a);
    // 1/2 M_aa v_a^2 with |v_a^2| = sqrt(2).
    out.add(MultiIndex::unit(m, a).raised(a), mat(ia, ia) / std::sqrt(2.0));
    for (std::size_t b = a + 1; b < m; ++b) {
      // The (a,b) and (b,a) halves combine.
      out.add(MultiIndex::unit(m, a).raised(b), mat(ia, static_cast<Eigen::Index>(b)));
    }
  }
  return out;
}

CVector annihilate_quadratic_check(const CVector& v, const SymAntilinear& z) {
  const std::size_t m = z.modes();
  if (static_cast<std::size_t>(v.size()) != m) {
    throw std::invalid_argument("annihilate_quadratic_check: dimension mismatch");
  }
  const FockVector lowered = annihilate(v, quadratic(z));
  CVector out(static_cast<Eigen::Index>(m));
  for (std::size_t k = 0; k < m; ++k) out(static_cast<Eigen::Index>(k)) = lowered.coeff(MultiIndex::unit(m, k));
  return out;
}

FockVector gaussian(const SymAntilinear& z, int cap) {
  const FockVector zeta = quadratic(z).with_cap(cap);
  FockVector term = FockVector::vacuum(z.modes(), cap);
  FockVector sum = term;
  for (int n = 1; 2 * n <= cap; ++n) {
    term = fock_product(zeta, term, cap);
    term *= Complex{1.0 / n};
    sum += term;
  }
  return sum;
}

double gaussian_norm2_exact(const SymAntilinear& z) {
  Eigen::JacobiSVD<CMatrix> svd(z.matrix());
  const auto& s = svd.singularValues();
  if (s(0) >= 1.0) return kInfinity;
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) log_det += std::log1p(-s(i) * s(i));
  return std::exp(-0.5 * log_det);
}

Complex inv_sqrt_det_one_minus(const CMatrix& k) {
  Eigen::ComplexEigenSolver<CMatrix> es(k, false);
  Complex log_det = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const Complex mu = es.eigenvalues()(i);
    if (std::abs(mu) >= 1.0) {
      throw std::domain_error("inv_sqrt_det_one_minus: eigenvalue outside the unit disc");
    }
    log_det += std::log(Complex{1.0} - mu);
  }
  return std::exp(-0.5 * log_det);
}

Complex gaussian_pair_exact(const SymAntilinear& x, const SymAntilinear& y) {
  if (x.modes() != y.modes()) throw std::invalid_argument("gaussian_pair_exact: mode mismatch");
  if (x.op_norm() >= 1.0 || y.op_norm() >= 1.0) {
    throw std::domain_error("gaussian_pair_exact: operator norm must be below 1");
  }
  return inv_sqrt_det_one_minus(y.matrix() * x.matrix().conjugate());
}

Complex coherent_gaussian_pair(const CVector& z, const SymAntilinear& m) {
  if (static_cast<std::size_t>(z.size()) != m.modes()) {
    throw std::invalid_argument("coherent_gaussian_pair: dimension mismatch");
  }
  return std::exp(0.5 * inner(z, m.apply(z)));
}

FockVector exp_homogeneous(const FockVector& phi, int cap) {
  if (phi.empty()) return FockVector::vacuum(phi.modes(), cap);
  const int d = phi.coeffs().begin()->first.degree();
  if (!phi.is_homogeneous(d)) throw std::invalid_argument("exp_homogeneous: input is not homogeneous");
  if (d == 0) {
    return std::exp(phi.coeffs().begin()->second) * FockVector::vacuum(phi.modes(), cap);
  }
  const FockVector base = phi.with_cap(cap);
  FockVector term = FockVector::vacuum(phi.modes(), cap);
  FockVector sum = term;
  for (int n = 1; n * d <= cap; ++n) {
    term = fock_product(base, term, cap);
    term *= Complex{1.0 / n};
    sum += term;
  }
  return sum;
}

std::vector<double> partial_norms2(const FockVector& phi, std::span<const int> caps) {
  std::vector<double> out;
  out.reserve(caps.size());
  for (int c : caps) {
    double s = 0.0;
    for (const auto& [index, coeff] : phi.coeffs()) {
      if (index.degree() > c) break;
      s += std::norm(coeff);
    }
    out.push_back(s);
  }
  return out;
}

bool strictly_increasing(std::span<const double> values) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) return false;
  }
  return true;
}

}  // namespace fockforge
