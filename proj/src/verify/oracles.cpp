#include "fockforge/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fockforge::oracle {

Complex naive_permanent(const CMatrix& a) {
  if (a.rows() != a.cols() || a.rows() > 8) throw std::invalid_argument("naive_permanent: square n <= 8 only");
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(a.rows()));
  std::iota(perm.begin(), perm.end(), 0);
  Complex total = 0.0;
  do {
    Complex p = 1.0;
    for (Eigen::Index k = 0; k < a.rows(); ++k) p *= a(k, perm[static_cast<std::size_t>(k)]);
    total += p;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

std::vector<std::vector<int>> brute_force_basis(std::size_t modes, int cap) {
  std::vector<std::vector<int>> all;
  std::vector<int> t(modes, 0);
  while (true) {
    if (std::accumulate(t.begin(), t.end(), 0) <= cap) all.push_back(t);
    std::size_t k = 0;
    while (k < modes && t[k] == cap) t[k++] = 0;
    if (k == modes) break;
    ++t[k];
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    const int da = std::accumulate(a.begin(), a.end(), 0);
    const int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  });
  return all;
}

double gaussian_norm2_series(double lambda, int cap) {
  // C(2n, n) (lambda/2)^{2n} via the ratio of consecutive terms.
  double term = 1.0, sum = 1.0;
  const double q = lambda * lambda / 4.0;
  for (int n = 1; 2 * n <= cap; ++n) {
    term *= q * (2.0 * n) * (2.0 * n - 1.0) / (static_cast<double>(n) * n);
    sum += term;
  }
  return sum;
}

double gaussian_coefficient(double lambda, int n) {
  return std::pow(lambda, n) * std::sqrt(std::tgamma(2.0 * n + 1.0)) / (std::pow(2.0, n) * std::tgamma(n + 1.0));
}

double coherent_norm2_series(double abs_alpha, int cap) {
  double term = 1.0, sum = 1.0;
  for (int n = 1; n <= cap; ++n) {
    term *= abs_alpha * abs_alpha / n;
    sum += term;
  }
  return sum;
}

double cubic_norm2_series(double lambda, int cap) {
  double sum = 0.0;
  for (int n = 0; 3 * n <= cap; ++n) {
    sum += std::exp(std::lgamma(3.0 * n + 1.0) - 2.0 * std::lgamma(n + 1.0) + 2.0 * n * std::log(std::abs(lambda)));
  }
  return sum;
}

double Sampler::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

Complex Sampler::scalar() { return {normal_(rng_), normal_(rng_)}; }

CVector Sampler::vector(std::size_t modes, double scale) {
  CVector v(static_cast<Eigen::Index>(modes));
  for (auto& x : v) x = scale * scalar();
  return v;
}

CMatrix Sampler::matrix(std::size_t rows, std::size_t cols) {
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = scalar();
  }
  return m;
}

FockVector Sampler::fock(std::size_t modes, int cap, int lo, int hi) {
  FockVector out(modes, cap);
  for (const auto& index : enumerate_basis(modes, std::min(hi, cap))) {
    if (index.degree() >= lo) out.add(index, scalar());
  }
  return out;
}

SymAntilinear Sampler::symmetric(std::size_t modes, double norm) {
  const CMatrix raw = matrix(modes, modes);
  CMatrix sym = raw + raw.transpose();
  Eigen::JacobiSVD<CMatrix> svd(sym);
  sym *= norm / svd.singularValues()(0);
  return SymAntilinear(sym);
}

}  // namespace fockforge::oracle
