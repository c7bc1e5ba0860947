#include <doctest.h>

#include <cmath>

#include "fockforge/expstates.hpp"
#include "fockforge/ops.hpp"
#include "fockforge/oracles.hpp"

using namespace fockforge;
using oracle::Sampler;

namespace {

SymAntilinear one_mode(Complex lambda) { return SymAntilinear(CMatrix::Constant(1, 1, lambda)); }

}  // namespace

TEST_CASE("SymAntilinear validation") {
  CHECK_THROWS_AS(SymAntilinear(CMatrix::Ones(2, 3)), std::invalid_argument);
  CMatrix m(2, 2);
  m << 0.1, 0.2, 0.3, 0.1;
  CHECK_THROWS_AS(SymAntilinear{m}, std::invalid_argument);
  m(1, 0) = 0.2;
  const SymAntilinear z(m);
  CHECK(z.modes() == 2);
  CHECK(z.hs_norm() == doctest::Approx(m.norm()));
  CHECK(z.op_norm() == doctest::Approx(0.3));

  Sampler s(31);
  const CVector v = s.vector(2), w = s.vector(2);
  // Symmetric antilinear: <v|Z w> = <w|Z v>.
  CHECK(std::abs(inner(v, z.apply(w)) - inner(w, z.apply(v))) < 1e-14);
  CHECK(SymAntilinear::zero(3).op_norm() == 0.0);
}

TEST_CASE("coherent vectors") {
  const CVector z = (CVector(2) << Complex{0.3, 0.1}, Complex{-0.2, 0.4}).finished();
  const FockVector e = coherent(z, 20);
  CHECK(e.norm2() == doctest::Approx(std::exp(z.squaredNorm())).epsilon(1e-13));
  CHECK(e.norm2() == doctest::Approx(oracle::coherent_norm2_series(z.norm(), 20)).epsilon(1e-14));
  CHECK(coherent(CVector::Zero(2), 5).coeffs().size() == 1);

  // Coherent vectors are eigenvectors of annihilators.
  Sampler s(32);
  const CVector v = s.vector(2);
  const FockVector lowered = annihilate(v, e);
  CHECK(max_abs_diff(lowered, inner(v, z) * e, 19) < 1e-13);
}

TEST_CASE("quadratic vector") {
  CMatrix m(2, 2);
  m << Complex{0.2, 0.1}, 0.3, 0.3, -0.4;
  const SymAntilinear z(m);
  const FockVector q = quadratic(z);
  CHECK(q.is_homogeneous(2));
  CHECK(std::abs(q.coeff(MultiIndex({2, 0})) - m(0, 0) / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(q.coeff(MultiIndex({1, 1})) - m(0, 1)) < 1e-15);
  CHECK(std::abs(q.coeff(MultiIndex({0, 2})) - m(1, 1) / std::sqrt(2.0)) < 1e-15);
  CHECK(q.norm2() == doctest::Approx(0.5 * m.squaredNorm()));

  Sampler s(33);
  for (int trial = 0; trial < 10; ++trial) {
    const SymAntilinear zz = s.symmetric(3, 0.7);
    const CVector v = s.vector(3);
    const CVector expected = zz.apply(v);
    CHECK((annihilate_quadratic_check(v, zz) - expected).cwiseAbs().maxCoeff() < 1e-13);
    const FockVector lowered = annihilate(v, quadratic(zz));
    CHECK(max_abs_diff(lowered, FockVector::from_one_particle(expected, 2), 2) < 1e-13);
  }
}

TEST_CASE("one-mode Gaussian coefficients and norm") {
  for (double lambda : {0.2, 0.5, -0.7}) {
    const FockVector g = gaussian(one_mode(lambda), 30);
    for (int n = 0; n <= 15; ++n) {
      const double expected = oracle::gaussian_coefficient(lambda, n);
      CHECK(std::abs(g.coeff(MultiIndex({2 * n})) - expected) < 1e-13 * std::max(1.0, std::abs(expected)));
      if (2 * n + 1 <= 30) CHECK(g.coeff(MultiIndex({2 * n + 1})) == Complex{0.0});
    }
    CHECK(g.norm2() == doctest::Approx(oracle::gaussian_norm2_series(std::abs(lambda), 30)).epsilon(1e-13));
    CHECK(gaussian_norm2_exact(one_mode(lambda)) == doctest::Approx(1.0 / std::sqrt(1 - lambda * lambda)));
  }
  CHECK(gaussian_norm2_exact(one_mode(1.0)) == kInfinity);
  CHECK(gaussian_norm2_exact(one_mode(1.3)) == kInfinity);
  CHECK(gaussian(SymAntilinear::zero(2), 8).coeffs().size() == 1);
}

TEST_CASE("Gaussian truncation errors shrink with the cap") {
  const double lambda = 0.5;
  const double exact = gaussian_norm2_exact(one_mode(lambda));
  double previous = kInfinity;
  for (int cap : {10, 20, 40}) {
    const double err = std::abs(gaussian(one_mode(lambda), cap).norm2() - exact);
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous < 1e-12);
}

TEST_CASE("multi-mode Gaussian norms and pairings") {
  Sampler s(34);
  for (int trial = 0; trial < 5; ++trial) {
    const SymAntilinear x = s.symmetric(2, 0.4), y = s.symmetric(2, 0.35);
    const FockVector gx = gaussian(x, 40), gy = gaussian(y, 40);
    const double exact = gaussian_norm2_exact(x);
    CHECK(std::abs(gx.norm2() - exact) < 1e-10 * exact);
    const Complex pair = gaussian_pair_exact(x, y);
    CHECK(std::abs(fock_inner(gx, gy) - pair) < 1e-10 * std::abs(pair));
    CHECK(std::abs(gaussian_pair_exact(y, x) - std::conj(pair)) < 1e-13);
  }
  CHECK_THROWS_AS(gaussian_pair_exact(one_mode(1.0), one_mode(0.2)), std::domain_error);
  CHECK_THROWS_AS(gaussian_pair_exact(one_mode(0.1), one_mode(-1.5)), std::domain_error);
}

TEST_CASE("Gaussians are annihilated by a(v) - c(Z v)") {
  Sampler s(35);
  const SymAntilinear z = s.symmetric(2, 0.5);
  const FockVector g = gaussian(z, 16);
  for (int trial = 0; trial < 5; ++trial) {
    const CVector v = s.vector(2);
    const FockVector residual = annihilate(v, g) - create(z.apply(v), g);
    CHECK(max_abs_diff(residual, FockVector(2, 16), 14) < 1e-12);
  }
}

TEST_CASE("inv_sqrt_det_one_minus") {
  CHECK(std::abs(inv_sqrt_det_one_minus(CMatrix::Zero(3, 3)) - 1.0) < 1e-15);
  CMatrix k = CMatrix::Zero(2, 2);
  k(0, 0) = 0.75;
  k(1, 1) = Complex{0.0, 0.5};
  const Complex expected = 1.0 / std::sqrt((1.0 - 0.75) * (1.0 - Complex{0.0, 0.5}));
  CHECK(std::abs(inv_sqrt_det_one_minus(k) - expected) < 1e-14);
  k(0, 0) = 1.0;
  CHECK_THROWS_AS(inv_sqrt_det_one_minus(k), std::domain_error);
}

TEST_CASE("coherent against Gaussian") {
  Sampler s(36);
  const SymAntilinear m = s.symmetric(2, 0.5);
  const CVector z = s.vector(2, 0.5);
  const Complex expected = coherent_gaussian_pair(z, m);
  CHECK(std::abs(fock_inner(coherent(z, 40), gaussian(m, 40)) - expected) < 1e-12);
}

TEST_CASE("exp_homogeneous and partial norms") {
  const FockVector cube = (0.1 * std::sqrt(6.0)) * FockVector::basis_element(MultiIndex({3}), 40);
  const FockVector e = exp_homogeneous(cube, 40);
  CHECK(e.norm2() == doctest::Approx(oracle::cubic_norm2_series(0.1, 40)).epsilon(1e-12));

  const std::vector<int> caps{10, 20, 30, 40};
  const auto norms = partial_norms2(e, caps);
  REQUIRE(norms.size() == 4);
  for (std::size_t i = 0; i < caps.size(); ++i) {
    CHECK(norms[i] == doctest::Approx(oracle::cubic_norm2_series(0.1, caps[i])).epsilon(1e-12));
  }
  CHECK(strictly_increasing(norms));

  const FockVector g = gaussian(one_mode(1.0), 40);
  const auto gaussian_norms = partial_norms2(g, caps);
  const std::vector<double> frozen{2.70703125, 3.7001380920410156, 4.478397890925407, 5.1401981924027496};
  for (std::size_t i = 0; i < 4; ++i) CHECK(gaussian_norms[i] == doctest::Approx(frozen[i]).epsilon(1e-13));
  CHECK(strictly_increasing(gaussian_norms));

  const std::vector<double> flat{1.0, 1.0, 2.0};
  CHECK_FALSE(strictly_increasing(flat));
  CHECK_THROWS_AS(exp_homogeneous(FockVector::vacuum(1, 3) + cube, 40), std::invalid_argument);
}
