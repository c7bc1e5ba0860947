#include "fockforge/weyl.hpp"

#include <cmath>
#include <stdexcept>

#include "fockforge/symalg.hpp"

namespace fockforge {

namespace {

bool coincide(const CVector& a, const CVector& b) {
  return (a - b).cwiseAbs().maxCoeff() <= kPointTolerance;
}

void require_distinct(const std::vector<CVector>& points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (coincide(points[i], points[j])) {
        throw std::invalid_argument("coherent span: points " + std::to_string(i) + " and " +
                                    std::to_string(j) + " coincide");
      }
    }
  }
}

CVector solve(const CMatrix& a, const CVector& b) { return a.partialPivLu().solve(b); }

}  // namespace

CoherentSpan::CoherentSpan(std::vector<CVector> points, std::vector<Complex> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.empty()) throw std::invalid_argument("CoherentSpan: no points");
  if (points_.size() != weights_.size()) throw std::invalid_argument("CoherentSpan: weight count mismatch");
  for (const auto& p : points_) {
    if (p.size() != points_.front().size()) throw std::invalid_argument("CoherentSpan: dimension mismatch");
  }
  require_distinct(points_);
}

CMatrix coherent_gram(const std::vector<CVector>& points) {
  require_distinct(points);
  const auto k = static_cast<Eigen::Index>(points.size());
  CMatrix g(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      g(i, j) = std::exp(inner(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]));
    }
  }
  return g;
}

Complex span_inner(const CoherentSpan& a, const CoherentSpan& b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      s += std::conj(a.weights()[i]) * b.weights()[j] * std::exp(inner(a.points()[i], b.points()[j]));
    }
  }
  return s;
}

CoherentSpan weyl_apply(const CVector& v, const CoherentSpan& span) {
  if (static_cast<std::size_t>(v.size()) != span.modes()) throw std::invalid_argument("weyl_apply: dimension mismatch");
  std::vector<CVector> points;
  std::vector<Complex> weights;
  points.reserve(span.size());
  weights.reserve(span.size());
  const double half_norm2 = 0.5 * v.squaredNorm();
  for (std::size_t i = 0; i < span.size(); ++i) {
    const CVector& z = span.points()[i];
    points.push_back(v + z);
    weights.push_back(span.weights()[i] * std::exp(-half_norm2 - inner(v, z)));
  }
  return CoherentSpan(std::move(points), std::move(weights));
}

double weyl_cocycle_check(const CVector& x, const CVector& y, const CoherentSpan& span) {
  const CoherentSpan lhs = weyl_apply(x, weyl_apply(y, span));
  const CoherentSpan rhs = weyl_apply(x + y, span);
  const Complex phase = std::exp(-kI * omega(x, y));
  double worst = 0.0;
  for (std::size_t i = 0; i < span.size(); ++i) {
    worst = std::max(worst, std::abs(lhs.weights()[i] - phase * rhs.weights()[i]));
    worst = std::max(worst, (lhs.points()[i] - rhs.points()[i]).cwiseAbs().maxCoeff());
  }
  return worst;
}

Complex regularity_element(const CVector& x, const CVector& v, const CVector& y, double t) {
  return std::exp(inner(x, y) + (inner(x, v) - inner(v, y)) * t - 0.5 * v.squaredNorm() * t * t);
}

Complex regularity_via_spans(const CVector& x, const CVector& v, const CVector& y, double t) {
  const CoherentSpan bra({x}, {1.0});
  const CoherentSpan ket = weyl_apply(t * v, CoherentSpan({y}, {1.0}));
  return span_inner(bra, ket);
}

Complex implementer_kernel(const SympMap& g, const CVector& x, const CVector& y) {
  const auto report = is_symplectic(g, 1e-9);
  if (!report.symplectic) throw std::invalid_argument("implementer_kernel: map is not symplectic");
  const SympMap inv = invert(g);
  const CVector first = solve(inv.c(), y - inv.a() * x.conjugate());
  const CVector second = solve(g.c(), x - g.a() * y.conjugate());
  return std::exp(0.5 * inner(x, first) + 0.5 * inner(second, y));
}

double kernel_intertwining_deviation(const SympMap& g, const CVector& v, const CVector& x, const CVector& y) {
  // U_g is linear: U_g W(v) eps^y = w U_g eps^{y+v}.
  const CoherentSpan moved = weyl_apply(v, CoherentSpan({y}, {1.0}));
  const Complex lhs = moved.weights()[0] * implementer_kernel(g, x, moved.points()[0]);
  // The functional is antilinear in its argument.
  const CoherentSpan probe = weyl_apply(-g.apply(v), CoherentSpan({x}, {1.0}));
  const Complex rhs = std::conj(probe.weights()[0]) * implementer_kernel(g, probe.points()[0], y);
  return std::abs(lhs - rhs);
}

int cyclicity_rank(const SymAntilinear& m, int cap, int probe_degree) {
  if (m.op_norm() >= 1.0) throw std::domain_error("cyclicity_rank: operator norm must be below 1");
  if (probe_degree < 0 || probe_degree > cap) throw std::invalid_argument("cyclicity_rank: probe degree out of range");
  const FockVector gauss = gaussian(m, cap);
  const FockBasis probe(m.modes(), probe_degree);
  const auto n = static_cast<Eigen::Index>(probe.size());
  CMatrix columns(n, n);
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const FockVector product = fock_product(FockVector::basis_element(probe[i], cap), gauss, probe_degree);
    columns.col(static_cast<Eigen::Index>(i)) = product.to_dense(probe);
  }
  Eigen::JacobiSVD<CMatrix> svd(columns);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > 1e-10 * s(0)) ++rank;
  }
  return rank;
}

}  // namespace fockforge
