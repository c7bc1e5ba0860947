#include <doctest.h>

#include <cmath>

#include "fockforge/oracles.hpp"
#include "fockforge/symplectic.hpp"

using namespace fockforge;
using oracle::Sampler;

namespace {

double max_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("real form round trip") {
  Sampler s(41);
  const CMatrix c = s.matrix(3, 3), a = s.matrix(3, 3);
  const SympMap g(c, a);
  const SympMap back = split(g.real_form());
  CHECK(max_diff(back.c(), c) < 1e-14);
  CHECK(max_diff(back.a(), a) < 1e-14);

  // The real form acts on (Re v, Im v).
  const CVector v = s.vector(3);
  Eigen::VectorXd xy(6);
  xy << v.real(), v.imag();
  const Eigen::VectorXd out = g.real_form() * xy;
  const CVector gv = g.apply(v);
  CHECK((out.head(3) - gv.real()).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((out.tail(3) - gv.imag()).cwiseAbs().maxCoeff() < 1e-13);

  const RMatrix j = real_j(2);
  CHECK(((j * j) + RMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("SympMap construction errors") {
  CHECK_THROWS_AS(SympMap(CMatrix::Identity(2, 2), CMatrix::Zero(3, 3)), std::invalid_argument);
  CHECK_THROWS_AS(SympMap(CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)), std::invalid_argument);
  // C = A gives g v = 2 Re v: singular.
  CHECK_THROWS_AS(SympMap(CMatrix::Identity(1, 1), CMatrix::Identity(1, 1)), std::invalid_argument);
  CHECK_THROWS_AS(make_unitary(2.0 * CMatrix::Identity(2, 2)), std::invalid_argument);
}

TEST_CASE("symplectic test") {
  CHECK(is_symplectic(SympMap::identity(3)).symplectic);
  CHECK(is_symplectic(make_squeeze(0.7, 1, 3)).symplectic);
  CHECK(is_symplectic(make_unitary(random_unitary(3, 4))).symplectic);
  CHECK(is_symplectic(random_symplectic(3, 5, 0.8, 2)).symplectic);

  const SympMap scaled(2.0 * CMatrix::Identity(2, 2), CMatrix::Zero(2, 2));
  const auto report = is_symplectic(scaled);
  CHECK_FALSE(report.symplectic);
  CHECK(report.max_violation == doctest::Approx(3.0));

  // Complex conjugation reverses Omega.
  CHECK_FALSE(is_symplectic(SympMap(CMatrix::Zero(1, 1), CMatrix::Identity(1, 1))).symplectic);
}

TEST_CASE("composition and inverse") {
  Sampler s(42);
  const SympMap g = random_symplectic(2, 6, 0.9), h = random_symplectic(2, 7, 0.6);
  const CVector v = s.vector(2);
  CHECK((compose(g, h).apply(v) - g.apply(h.apply(v))).cwiseAbs().maxCoeff() < 1e-13);

  const SympMap gi = invert(g);
  const SympMap id = compose(g, gi);
  CHECK(max_diff(id.c(), CMatrix::Identity(2, 2)) < 1e-12);
  CHECK(max_diff(id.a(), CMatrix::Zero(2, 2)) < 1e-12);

  // For symplectic g the inverse is (C^dagger, -A^T).
  CHECK(max_diff(gi.c(), g.c().adjoint()) < 1e-12);
  CHECK(max_diff(gi.a(), -g.a().transpose()) < 1e-12);

  const SympMap sq = make_squeeze(0.5, 0, 1);
  CHECK(std::abs(invert(sq).a()(0, 0) + std::sinh(0.5)) < 1e-14);
}

TEST_CASE("j_conjugate") {
  const SympMap g = random_symplectic(2, 8, 0.5);
  const SympMap gj = j_conjugate(g);
  CHECK(max_diff(gj.c(), g.c()) == 0.0);
  CHECK(max_diff(gj.a(), -g.a()) == 0.0);
  // -J g J on the real side.
  const RMatrix j = real_j(2);
  CHECK((gj.real_form() + j * g.real_form() * j).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(is_symplectic(gj).symplectic);
}

TEST_CASE("Shale operator") {
  for (double r : {-1.2, 0.1, 0.4, 2.0}) {
    const SymAntilinear z = shale_operator(make_squeeze(r, 0, 1));
    CHECK(std::abs(z.matrix()(0, 0) + std::tanh(r)) < 1e-14);
    CHECK(z.op_norm() < 1.0);
  }
  CHECK(shale_operator(make_unitary(random_unitary(3, 9))).op_norm() < 1e-14);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SympMap g = random_symplectic(3, seed, 1.0, 2);
    const SymAntilinear z = shale_operator(g);
    CHECK(max_diff(z.matrix(), z.matrix().transpose()) < 1e-12);
    CHECK(max_diff(z.matrix(), shale_operator_via_inverse(g)) < 1e-10);
    CHECK(z.op_norm() < 1.0);
  }

  const double spread = 0.7;
  const SymAntilinear z = shale_operator(random_symplectic(3, 11, spread));
  CHECK(z.op_norm() <= std::tanh(spread) + 1e-12);

  const SympMap scaled(2.0 * CMatrix::Identity(1, 1), CMatrix::Zero(1, 1));
  CHECK_THROWS_AS(shale_operator(scaled), std::invalid_argument);
}

TEST_CASE("squeeze helpers") {
  const SympMap sq = make_squeeze(0.3, 1, 3);
  CHECK(std::abs(sq.c()(1, 1) - std::cosh(0.3)) < 1e-15);
  CHECK(std::abs(sq.a()(1, 1) - std::sinh(0.3)) < 1e-15);
  CHECK(sq.c()(0, 0) == Complex{1.0});
  CHECK(sq.a()(0, 0) == Complex{0.0});
  CHECK_THROWS_AS(make_squeeze(0.3, 3, 3), std::invalid_argument);

  const SympMap diag = make_squeeze_diag({0.1, -0.2});
  CHECK(std::abs(diag.a()(1, 1) - std::sinh(-0.2)) < 1e-15);

  const CMatrix u = random_unitary(4, 12);
  CHECK(max_diff(u.adjoint() * u, CMatrix::Identity(4, 4)) < 1e-13);
  CHECK(max_diff(random_unitary(4, 12), u) == 0.0);
}
