#include "fockforge/symalg.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fockforge {

MultiIndex::MultiIndex(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  for (int e : exponents_) {
    if (e < 0) throw std::invalid_argument("MultiIndex: negative exponent");
    degree_ += e;
  }
}

MultiIndex MultiIndex::zero(std::size_t modes) { return MultiIndex(std::vector<int>(modes, 0)); }

MultiIndex MultiIndex::unit(std::size_t modes, std::size_t k) {
  std::vector<int> e(modes, 0);
  e.at(k) = 1;
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::raised(std::size_t k) const {
  MultiIndex r = *this;
  ++r.exponents_.at(k);
  ++r.degree_;
  return r;
}

MultiIndex MultiIndex::lowered(std::size_t k) const {
  if (exponents_.at(k) == 0) throw std::invalid_argument("MultiIndex: lowering a zero exponent");
  MultiIndex r = *this;
  --r.exponents_[k];
  --r.degree_;
  return r;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.modes() != modes()) throw std::invalid_argument("MultiIndex: mode mismatch");
  MultiIndex r = *this;
  for (std::size_t k = 0; k < modes(); ++k) r.exponents_[k] += other.exponents_[k];
  r.degree_ += other.degree_;
  return r;
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
  if (a.modes() != b.modes()) return a.modes() <=> b.modes();
  for (std::size_t k = 0; k < a.modes(); ++k) {
    if (a.exponents_[k] != b.exponents_[k]) return b.exponents_[k] <=> a.exponents_[k];
  }
  return std::strong_ordering::equal;
}

std::size_t basis_size(std::size_t modes, int cap) {
  if (cap < 0) return 0;
  // C(modes + cap, cap) built incrementally; every partial product is integral.
  std::size_t n = 1;
  for (std::size_t k = 1; k <= static_cast<std::size_t>(cap); ++k) n = n * (modes + k) / k;
  return n;
}

namespace {

// Degree-d indices in graded-lex order: the first exponent runs downward.
void append_degree(std::size_t modes, int degree, std::size_t pos, std::vector<int>& current,
                   std::vector<MultiIndex>& out) {
  if (pos + 1 == modes) {
    current[pos] = degree;
    out.emplace_back(current);
    return;
  }
  for (int e = degree; e >= 0; --e) {
    current[pos] = e;
    append_degree(modes, degree - e, pos + 1, current, out);
  }
  current[pos] = 0;
}

}  // namespace

std::vector<MultiIndex> enumerate_basis(std::size_t modes, int cap) {
  if (modes == 0) throw std::invalid_argument("enumerate_basis: modes must be positive");
  if (cap < 0) throw std::invalid_argument("enumerate_basis: negative cap");
  std::vector<MultiIndex> out;
  out.reserve(basis_size(modes, cap));
  std::vector<int> current(modes, 0);
  for (int d = 0; d <= cap; ++d) append_degree(modes, d, 0, current, out);
  return out;
}

FockBasis::FockBasis(std::size_t modes, int cap)
    : modes_(modes), cap_(cap), indices_(enumerate_basis(modes, cap)) {
  for (std::size_t i = 0; i < indices_.size(); ++i) lookup_.emplace(indices_[i], i);
}

std::optional<std::size_t> FockBasis::position(const MultiIndex& index) const {
  auto it = lookup_.find(index);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t FockBasis::block_size(int d) const {
  if (d < 0) return 0;
  return basis_size(modes_, std::min(d, cap_));
}

Complex permanent(const CMatrix& a, std::size_t limit) {
  if (a.rows() != a.cols()) throw std::invalid_argument("permanent: matrix is not square");
  const auto n = static_cast<std::size_t>(a.rows());
  if (n > limit) {
    throw std::invalid_argument("permanent: size " + std::to_string(n) + " exceeds limit " +
                                std::to_string(limit));
  }
  if (n == 0) return 1.0;

  // per(A) = (-1)^n sum_S (-1)^{|S|} prod_i sum_{j in S} A_ij, visiting the
  // column subsets S in Gray-code order so each step flips one column.
  CVector row_sums = CVector::Zero(a.rows());
  Complex total = 0.0;
  std::uint64_t gray = 0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < subsets; ++step) {
    const int flipped = std::countr_zero(step);
    const std::uint64_t bit = std::uint64_t{1} << flipped;
    gray ^= bit;
    if (gray & bit) {
      row_sums += a.col(flipped);
    } else {
      row_sums -= a.col(flipped);
    }
    Complex prod = row_sums.prod();
    total += (std::popcount(gray) % 2 == 0) ? prod : -prod;
  }
  return (n % 2 == 0) ? total : -total;
}

Complex monomial_inner(std::span<const CVector> xs, std::span<const CVector> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("monomial_inner: length mismatch");
  const auto d = static_cast<Eigen::Index>(xs.size());
  CMatrix gram(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      if (xs[a].size() != ys[b].size()) {
        throw std::invalid_argument("monomial_inner: vector dimension mismatch");
      }
      gram(a, b) = inner(xs[a], ys[b]);
    }
  }
  return permanent(gram);
}

FockVector::FockVector(std::size_t modes, int cap) : modes_(modes), cap_(cap) {
  if (modes == 0) throw std::invalid_argument("FockVector: modes must be positive");
  if (cap < 0) throw std::invalid_argument("FockVector: negative cap");
}

FockVector FockVector::vacuum(std::size_t modes, int cap) {
  FockVector v(modes, cap);
  v.add(MultiIndex::zero(modes), 1.0);
  return v;
}

FockVector FockVector::basis_element(const MultiIndex& index, int cap) {
  FockVector v(index.modes(), cap);
  v.add(index, 1.0);
  return v;
}

FockVector FockVector::from_one_particle(const CVector& v, int cap) {
  const auto m = static_cast<std::size_t>(v.size());
  FockVector out(m, cap);
  for (std::size_t k = 0; k < m; ++k) out.add(MultiIndex::unit(m, k), v(static_cast<Eigen::Index>(k)));
  return out;
}

FockVector FockVector::from_dense(const FockBasis& basis, const CVector& coeffs) {
  if (static_cast<std::size_t>(coeffs.size()) != basis.size()) {
    throw std::invalid_argument("FockVector::from_dense: length does not match basis");
  }
  FockVector out(basis.modes(), basis.cap());
  for (std::size_t i = 0; i < basis.size(); ++i) out.add(basis[i], coeffs(static_cast<Eigen::Index>(i)));
  return out;
}

Complex FockVector::coeff(const MultiIndex& index) const {
  auto it = coeffs_.find(index);
  return it == coeffs_.end() ? Complex{0.0} : it->second;
}

void FockVector::add(const MultiIndex& index, Complex value) {
  if (index.modes() != modes_) throw std::invalid_argument("FockVector: index mode mismatch");
  if (index.degree() > cap_ || value == Complex{0.0}) return;
  auto [it, inserted] = coeffs_.try_emplace(index, value);
  if (!inserted) {
    it->second += value;
    if (it->second == Complex{0.0}) coeffs_.erase(it);
  }
}

double FockVector::norm2() const {
  double s = 0.0;
  for (const auto& [_, c] : coeffs_) s += std::norm(c);
  return s;
}

double FockVector::norm() const { return std::sqrt(norm2()); }

int FockVector::max_degree() const {
  return coeffs_.empty() ? -1 : coeffs_.rbegin()->first.degree();
}

bool FockVector::is_homogeneous(int degree) const {
  for (const auto& [index, _] : coeffs_) {
    if (index.degree() != degree) return false;
  }
  return true;
}

CVector FockVector::to_dense(const FockBasis& basis) const {
  if (basis.modes() != modes_) throw std::invalid_argument("FockVector::to_dense: mode mismatch");
  CVector out = CVector::Zero(static_cast<Eigen::Index>(basis.size()));
  for (const auto& [index, c] : coeffs_) {
    if (auto pos = basis.position(index)) out(static_cast<Eigen::Index>(*pos)) = c;
  }
  return out;
}

FockVector FockVector::with_cap(int cap) const {
  FockVector out(modes_, cap);
  for (const auto& [index, c] : coeffs_) out.add(index, c);
  return out;
}

FockVector& FockVector::operator+=(const FockVector& other) {
  if (other.modes_ != modes_) throw std::invalid_argument("FockVector: mode mismatch");
  for (const auto& [index, c] : other.coeffs_) add(index, c);
  return *this;
}

FockVector& FockVector::operator-=(const FockVector& other) {
  if (other.modes_ != modes_) throw std::invalid_argument("FockVector: mode mismatch");
  for (const auto& [index, c] : other.coeffs_) add(index, -c);
  return *this;
}

FockVector& FockVector::operator*=(Complex s) {
  if (s == Complex{0.0}) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [_, c] : coeffs_) c *= s;
  return *this;
}

FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
FockVector operator*(Complex s, FockVector a) { return a *= s; }

double max_abs_diff(const FockVector& a, const FockVector& b, int max_degree) {
  FockVector d = a - b;
  double worst = 0.0;
  for (const auto& [index, c] : d.coeffs()) {
    if (index.degree() <= max_degree) worst = std::max(worst, std::abs(c));
  }
  return worst;
}

Complex fock_inner(const FockVector& phi, const FockVector& psi) {
  if (phi.modes() != psi.modes()) throw std::invalid_argument("fock_inner: mode mismatch");
  const auto& small = phi.coeffs().size() <= psi.coeffs().size() ? phi : psi;
  const auto& large = &small == &phi ? psi : phi;
  Complex s = 0.0;
  for (const auto& [index, c] : small.coeffs()) {
    auto it = large.coeffs().find(index);
    if (it == large.coeffs().end()) continue;
    s += (&small == &phi) ? std::conj(c) * it->second : std::conj(it->second) * c;
  }
  return s;
}

namespace {

// sqrt(C(n, k)) accumulated in floating point.
double sqrt_binomial(int n, int k) {
  k = std::min(k, n - k);
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return std::sqrt(b);
}

}  // namespace

FockVector fock_product(const FockVector& phi, const FockVector& psi, int cap) {
  if (phi.modes() != psi.modes()) throw std::invalid_argument("fock_product: mode mismatch");
  FockVector out(phi.modes(), cap);
  for (const auto& [a, ca] : phi.coeffs()) {
    for (const auto& [b, cb] : psi.coeffs()) {
      if (a.degree() + b.degree() > cap) break;  // psi is stored in degree order
      double factor = 1.0;
      for (std::size_t k = 0; k < a.modes(); ++k) {
        if (a[k] != 0 && b[k] != 0) factor *= sqrt_binomial(a[k] + b[k], a[k]);
      }
      out.add(a + b, factor * ca * cb);
    }
  }
  return out;
}

FockVector embed_monomial(std::size_t m, std::span<const CVector> factors, int cap) {
  FockVector out = FockVector::vacuum(m, cap);
  for (const auto& x : factors) {
    if (static_cast<std::size_t>(x.size()) != m) {
      throw std::invalid_argument("embed_monomial: vector dimension mismatch");
    }
    out = fock_product(FockVector::from_one_particle(x, cap), out, cap);
  }
  return out;
}

FockVector project_degree(const FockVector& phi, int degree) {
  if (degree < 0 || degree > phi.cap()) throw std::invalid_argument("project_degree: degree out of range");
  FockVector out(phi.modes(), phi.cap());
  for (const auto& [index, c] : phi.coeffs()) {
    if (index.degree() == degree) out.add(index, c);
  }
  return out;
}

FockVector project_modes(const FockVector& phi, std::span<const std::size_t> keep) {
  std::vector<bool> kept(phi.modes(), false);
  for (std::size_t k : keep) {
    if (k >= phi.modes()) throw std::invalid_argument("project_modes: invalid mode id " + std::to_string(k));
    kept[k] = true;
  }
  FockVector out(phi.modes(), phi.cap());
  for (const auto& [index, c] : phi.coeffs()) {
    bool inside = true;
    for (std::size_t k = 0; k < index.modes() && inside; ++k) inside = kept[k] || index[k] == 0;
    if (inside) out.add(index, c);
  }
  return out;
}

FockVector scale_action(double t, const FockVector& phi) {
  if (!(t > 0.0)) throw std::invalid_argument("scale_action: t must be positive");
  FockVector out(phi.modes(), phi.cap());
  for (const auto& [index, c] : phi.coeffs()) out.add(index, std::pow(t, index.degree()) * c);
  return out;
}

}  // namespace fockforge
