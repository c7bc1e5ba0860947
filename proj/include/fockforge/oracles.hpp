#pragma once

// Independent reference computations and random fixtures used by the unit
// tests and the acceptance suite. Nothing here calls into the code paths it
// is meant to check.

#include <cstdint>
#include <random>
#include <vector>

#include "fockforge/expstates.hpp"
#include "fockforge/symalg.hpp"
#include "fockforge/types.hpp"

namespace fockforge::oracle {

// Sum over all n! permutations; n <= 8.
Complex naive_permanent(const CMatrix& a);

// Every tuple in [0, cap]^modes with sum <= cap, sorted by (degree, then
// larger leading exponent first).
std::vector<std::vector<int>> brute_force_basis(std::size_t modes, int cap);

// sum_{n <= cap/2} C(2n, n) (lambda/2)^{2n}: one-mode Gaussian truncated at degree cap.
double gaussian_norm2_series(double lambda, int cap);

// Degree-2n coefficient of the one-mode Gaussian: lambda^n sqrt((2n)!) / (2^n n!).
double gaussian_coefficient(double lambda, int n);

// sum_{n <= cap} |alpha|^{2n} / n!.
double coherent_norm2_series(double abs_alpha, int cap);

// sum_{n <= cap/3} (3n)! / (n!)^2 |lambda|^{2n}: truncated |exp(lambda v^3)|^2.
double cubic_norm2_series(double lambda, int cap);

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi);
  Complex scalar();
  CVector vector(std::size_t modes, double scale = 1.0);
  CMatrix matrix(std::size_t rows, std::size_t cols);
  // Random coefficients on every index with degree in [lo, hi].
  FockVector fock(std::size_t modes, int cap, int lo, int hi);
  // Symmetric matrix rescaled to operator norm `norm`.
  SymAntilinear symmetric(std::size_t modes, double norm);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
};

}  // namespace fockforge::oracle
