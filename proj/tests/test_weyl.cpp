#include <doctest.h>

#include <cmath>

#include "fockforge/implementer.hpp"
#include "fockforge/oracles.hpp"
#include "fockforge/weyl.hpp"

using namespace fockforge;
using oracle::Sampler;

TEST_CASE("coherent spans") {
  Sampler s(91);
  const CVector a = s.vector(2);
  CHECK_THROWS_AS(CoherentSpan({a, a}, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(CoherentSpan({a}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(CoherentSpan({a, s.vector(3)}, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(coherent_gram({a, a}), std::invalid_argument);

  const CoherentSpan single({a}, {Complex{0.0, 2.0}});
  CHECK(std::abs(span_inner(single, single) - 4.0 * std::exp(a.squaredNorm())) < 1e-12);
}

TEST_CASE("coherent Gram matrices are positive definite") {
  Sampler s(92);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<CVector> points;
    for (int k = 0; k < 6; ++k) points.push_back(s.vector(2, 0.7));
    const CMatrix gram = coherent_gram(points);
    CHECK(((gram - gram.adjoint()).cwiseAbs().maxCoeff()) < 1e-13);
    const Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("Weyl operators") {
  Sampler s(93);
  const CoherentSpan span({s.vector(2), s.vector(2)}, {s.scalar(), s.scalar()});
  for (int trial = 0; trial < 10; ++trial) {
    const CVector x = s.vector(2), y = s.vector(2), v = s.vector(2);
    CHECK(weyl_cocycle_check(x, y, span) < 1e-10);
    // Unitary on the span.
    const CoherentSpan moved = weyl_apply(v, span);
    const Complex before = span_inner(span, span), after = span_inner(moved, moved);
    CHECK(std::abs(after - before) < 1e-10 * std::abs(before));
  }
  // W(0) is the identity.
  const CoherentSpan same = weyl_apply(CVector::Zero(2), span);
  CHECK((same.points()[0] - span.points()[0]).norm() == 0.0);
  CHECK(same.weights()[1] == span.weights()[1]);
}

TEST_CASE("Weyl matrix elements are smooth in t") {
  Sampler s(94);
  const CVector x = s.vector(2), v = s.vector(2), y = s.vector(2);
  for (double t : {0.0, 0.3, -1.1}) {
    const Complex closed = regularity_element(x, v, y, t);
    CHECK(std::abs(closed - regularity_via_spans(x, v, y, t)) < 1e-12 * std::max(1.0, std::abs(closed)));
  }
  CHECK(std::abs(regularity_element(x, v, y, 0.0) - std::exp(inner(x, y))) < 1e-12 * std::abs(std::exp(inner(x, y))));

  // Central difference converges.
  const double h1 = 1e-2, h2 = 1e-3;
  auto deriv = [&](double h) { return (regularity_element(x, v, y, h) - regularity_element(x, v, y, -h)) / (2 * h); };
  CHECK(std::abs(deriv(h1) - deriv(h2)) < 1e-2 * std::max(1.0, std::abs(deriv(h2))));
}

TEST_CASE("kernel intertwines the Weyl operators") {
  Sampler s(95);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SympMap g = random_symplectic(2, 100 + seed, 0.6);
    const CVector v = s.vector(2, 0.5), x = s.vector(2, 0.5), y = s.vector(2, 0.5);
    CHECK(kernel_intertwining_deviation(g, v, x, y) < 1e-10);
  }
  const CVector zero = CVector::Zero(2);
  CHECK(std::abs(implementer_kernel(random_symplectic(2, 7, 0.4), zero, zero) - 1.0) < 1e-14);
}

TEST_CASE("kernel agrees with the occupation-basis implementer of -JgJ") {
  Sampler s(96);
  const SympMap g = make_squeeze(0.4, 0, 1);
  const Implementer imp = build_implementer(j_conjugate(g), 30);
  for (int trial = 0; trial < 5; ++trial) {
    const CVector x = s.vector(1, 0.3), y = s.vector(1, 0.3);
    const Complex closed = implementer_kernel(g, x, y);
    CHECK(std::abs(closed - fock_kernel(imp, x, y)) < 1e-10);
  }
}

TEST_CASE("Fock-side Weyl intertwining uses C v - A conj(v)") {
  // With W(v) = exp(c(v) - a(v)), U_g W(v) U_g^{-1} = W(C v - A conj(v)): checked
  // on the vacuum through coherent states.
  const SympMap g = make_squeeze(0.3, 0, 1);
  const Implementer imp = build_implementer(g, 30);
  const CVector v = (CVector(1) << Complex{0.2, -0.1}).finished();
  const CVector w = j_conjugate(g).apply(v);
  const CVector x = (CVector(1) << Complex{0.1, 0.15}).finished();

  // <e^x|U_g W(v) 1> with W(v) 1 = e^{-|v|^2/2} e^v.
  const Complex lhs = std::exp(-0.5 * v.squaredNorm()) * fock_kernel(imp, x, v);
  // <e^x|W(w) U_g 1> = <W(-w) e^x|U_g 1>, W(-w) e^x = e^{-|w|^2/2 + <w|x>} e^{x - w}.
  const Complex phase = std::exp(-0.5 * w.squaredNorm() + inner(w, x));
  const Complex rhs = std::conj(phase) * fock_kernel(imp, x - w, CVector::Zero(1));
  CHECK(std::abs(lhs - rhs) < 1e-10);
}

TEST_CASE("cyclicity ranks") {
  CHECK(cyclicity_rank(SymAntilinear(CMatrix::Constant(1, 1, 0.5)), 16, 6) == 7);
  Sampler s(97);
  CHECK(cyclicity_rank(s.symmetric(2, 0.6), 12, 3) == 10);
  CHECK_THROWS_AS(cyclicity_rank(SymAntilinear(CMatrix::Constant(1, 1, 1.0)), 16, 6), std::domain_error);
}
