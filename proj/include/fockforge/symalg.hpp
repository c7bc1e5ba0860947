#pragma once

// Truncated symmetric algebra over C^m in the normalized occupation basis.
//
// A basis element v^D is indexed by an occupation vector D = (d_1, ..., d_m)
// and equals v_1^{d_1} ... v_m^{d_m} / sqrt(d_1! ... d_m!). These elements
// are orthonormal, so a FockVector stores plain coefficients and every norm
// is a coefficient sum.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "fockforge/types.hpp"

namespace fockforge {

class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);

  static MultiIndex zero(std::size_t modes);
  static MultiIndex unit(std::size_t modes, std::size_t k);

  std::size_t modes() const { return exponents_.size(); }
  int degree() const { return degree_; }
  int operator[](std::size_t k) const { return exponents_[k]; }
  const std::vector<int>& exponents() const { return exponents_; }

  MultiIndex raised(std::size_t k) const;
  // Requires exponents()[k] > 0.
  MultiIndex lowered(std::size_t k) const;
  MultiIndex operator+(const MultiIndex& other) const;

  // Graded lexicographic: lower degree first, then the larger leading
  // exponent first, so (1,0) precedes (0,1).
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);
  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.exponents_ == b.exponents_;
  }

 private:
  std::vector<int> exponents_;
  int degree_ = 0;
};

// C(modes + cap, cap).
std::size_t basis_size(std::size_t modes, int cap);

// All multi-indices of degree <= cap in graded-lex order.
std::vector<MultiIndex> enumerate_basis(std::size_t modes, int cap);

// Enumerated basis with reverse lookup; fixes the row/column layout of
// every dense vector and matrix in the library.
class FockBasis {
 public:
  FockBasis(std::size_t modes, int cap);

  std::size_t modes() const { return modes_; }
  int cap() const { return cap_; }
  std::size_t size() const { return indices_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<MultiIndex>& indices() const { return indices_; }

  std::optional<std::size_t> position(const MultiIndex& index) const;
  // Number of basis elements with degree <= d (a leading block in graded order).
  std::size_t block_size(int d) const;

 private:
  std::size_t modes_;
  int cap_;
  std::vector<MultiIndex> indices_;
  std::map<MultiIndex, std::size_t> lookup_;
};

inline constexpr std::size_t kDefaultPermanentLimit = 16;

// Ryser's inclusion-exclusion formula with Gray-code updates.
Complex permanent(const CMatrix& a, std::size_t limit = kDefaultPermanentLimit);

// <x_1 ... x_d | y_1 ... y_d> = Per[<x_a|y_b>].
Complex monomial_inner(std::span<const CVector> xs, std::span<const CVector> ys);

class FockVector {
 public:
  using Storage = std::map<MultiIndex, Complex>;

  FockVector(std::size_t modes, int cap);

  static FockVector vacuum(std::size_t modes, int cap);
  static FockVector basis_element(const MultiIndex& index, int cap);
  // Degree-1 vector sum_k v_k v^{e_k}.
  static FockVector from_one_particle(const CVector& v, int cap);
  static FockVector from_dense(const FockBasis& basis, const CVector& coeffs);

  std::size_t modes() const { return modes_; }
  int cap() const { return cap_; }
  const Storage& coeffs() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }

  Complex coeff(const MultiIndex& index) const;
  // Adds to a coefficient. Indices above the cap are dropped silently; exact
  // zeros are never stored.
  void add(const MultiIndex& index, Complex value);

  double norm2() const;
  double norm() const;
  // -1 for the zero vector.
  int max_degree() const;
  bool is_homogeneous(int degree) const;

  // Coefficients in `basis` order; entries above basis.cap() are ignored.
  CVector to_dense(const FockBasis& basis) const;
  FockVector with_cap(int cap) const;

  FockVector& operator+=(const FockVector& other);
  FockVector& operator-=(const FockVector& other);
  FockVector& operator*=(Complex s);

 private:
  std::size_t modes_;
  int cap_;
  Storage coeffs_;
};

FockVector operator+(FockVector a, const FockVector& b);
FockVector operator-(FockVector a, const FockVector& b);
FockVector operator*(Complex s, FockVector a);

// Largest coefficient difference over degrees <= max_degree.
double max_abs_diff(const FockVector& a, const FockVector& b, int max_degree);

Complex fock_inner(const FockVector& phi, const FockVector& psi);

// Symmetric-algebra product truncated at `cap`.
FockVector fock_product(const FockVector& phi, const FockVector& psi, int cap);

// x_1 x_2 ... x_d as a FockVector (d = 0 gives the vacuum).
FockVector embed_monomial(std::size_t modes, std::span<const CVector> factors, int cap);

FockVector project_degree(const FockVector& phi, int degree);
FockVector project_modes(const FockVector& phi, std::span<const std::size_t> keep);
// Degree-d component multiplied by t^d.
FockVector scale_action(double t, const FockVector& phi);

}  // namespace fockforge
