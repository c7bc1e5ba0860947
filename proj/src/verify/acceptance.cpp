#include "fockforge/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "fockforge/expstates.hpp"
#include "fockforge/implementer.hpp"
#include "fockforge/ops.hpp"
#include "fockforge/oracles.hpp"
#include "fockforge/symalg.hpp"
#include "fockforge/symplectic.hpp"
#include "fockforge/weyl.hpp"

namespace fockforge {

namespace {

using oracle::Sampler;

// Running maximum with a pass flag; `check` records one comparison.
struct Tally {
  double worst = 0.0;
  double tolerance = 0.0;
  double worst_ratio = -1.0;
  bool ok = true;

  void check(double deviation, double tol) {
    if (!(deviation <= tol)) ok = false;
    const double ratio = deviation / tol;
    if (!(ratio <= worst_ratio)) {
      worst_ratio = ratio;
      worst = deviation;
      tolerance = tol;
    }
  }
};

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

std::string sci(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << x;
  return os.str();
}

CriterionResult finish(int id, const std::string& name, const Tally& t, std::string detail) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  r.passed = t.ok;
  r.worst = t.worst;
  r.tolerance = t.tolerance;
  r.detail = std::move(detail);
  return r;
}

SymAntilinear one_mode(double lambda) { return SymAntilinear(CMatrix::Constant(1, 1, lambda)); }

// Non-increasing sequence of errors that is strict until it reaches the
// floating-point floor of the reference value.
bool decreasing_to_floor(const std::vector<double>& errors, double reference) {
  const double floor = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(reference);
  for (std::size_t i = 1; i < errors.size(); ++i) {
    if (errors[i] < errors[i - 1]) continue;
    if (errors[i] <= floor && errors[i - 1] <= floor) continue;
    return false;
  }
  return true;
}

CriterionResult gaussian_norm() {
  Tally t;
  bool monotone = true;
  std::ostringstream detail;
  for (int step = 1; step <= 9; ++step) {
    const double lambda = 0.1 * step;
    const SymAntilinear z = one_mode(lambda);
    const double exact = gaussian_norm2_exact(z);
    std::vector<double> errors;
    for (int cap : {10, 20, 40}) errors.push_back(std::abs(gaussian(z, cap).norm2() - exact));
    t.check(errors.back(), step <= 7 ? 1e-8 : 1e-4);
    monotone = monotone && decreasing_to_floor(errors, exact);
    if (step >= 7) detail << "lambda=" << lambda << " err@40=" << sci(errors.back()) << "; ";
  }
  if (!monotone) t.ok = false;
  detail << (monotone ? "errors decrease in cap" : "errors NOT decreasing in cap");
  return finish(1, "Gaussian norm vs det(I - Z^2)^(-1/2)", t, detail.str());
}

CriterionResult gaussian_pairing() {
  Tally t;
  Sampler s(2002);
  for (int trial = 0; trial < 20; ++trial) {
    const SymAntilinear x = s.symmetric(2, s.uniform(0.05, 0.5));
    const SymAntilinear y = s.symmetric(2, s.uniform(0.05, 0.5));
    const Complex truncated = fock_inner(gaussian(x, 30), gaussian(y, 30));
    t.check(std::abs(truncated - gaussian_pair_exact(x, y)), 1e-8);
  }
  return finish(2, "Gaussian pairing vs det(I - M_Y conj M_X)^(-1/2)", t, "20 random m=2 pairs, cap=30");
}

double commutator_deviation(const CMatrix& a, const CMatrix& b, Complex scalar, Eigen::Index cols) {
  const CMatrix comm = a * b - b * a;
  const CMatrix target = scalar * CMatrix::Identity(comm.rows(), comm.cols());
  return (comm - target).leftCols(cols).cwiseAbs().maxCoeff();
}

CriterionResult ccr() {
  constexpr int kCap = 10;
  const FockBasis basis(2, kCap);
  const auto cols = static_cast<Eigen::Index>(basis.block_size(kCap - 2));
  auto dense = [&](LadderKind k, const CVector& v) { return CMatrix(ladder_sparse(k, v, basis)); };

  Tally t;
  Sampler s(3003);
  for (int trial = 0; trial < 20; ++trial) {
    const CVector x = s.vector(2), y = s.vector(2);
    const CMatrix ax = dense(LadderKind::annihilate, x), ay = dense(LadderKind::annihilate, y);
    const CMatrix cx = dense(LadderKind::create, x), cy = dense(LadderKind::create, y);
    t.check(commutator_deviation(ax, cy, inner(x, y), cols), 1e-10);
    t.check(commutator_deviation(ax, ay, 0.0, cols), 1e-10);
    t.check(commutator_deviation(cx, cy, 0.0, cols), 1e-10);
    t.check(commutator_deviation(dense(LadderKind::field, x), dense(LadderKind::field, y), kI * omega(x, y), cols),
            1e-10);
  }
  for (int trial = 0; trial < 10; ++trial) {
    const SympMap g = random_symplectic(2, 3100 + trial, 0.6, 2);
    const CVector x = s.vector(2), y = s.vector(2);
    auto moved = [&](LadderKind k, const CVector& v) { return CMatrix(transformed_sparse(k, g, v, basis)); };
    const CMatrix ax = moved(LadderKind::annihilate, x), ay = moved(LadderKind::annihilate, y);
    const CMatrix cx = moved(LadderKind::create, x), cy = moved(LadderKind::create, y);
    t.check(commutator_deviation(ax, cy, inner(x, y), cols), 1e-10);
    t.check(commutator_deviation(ax, ay, 0.0, cols), 1e-10);
    t.check(commutator_deviation(cx, cy, 0.0, cols), 1e-10);
    t.check(commutator_deviation(moved(LadderKind::field, x), moved(LadderKind::field, y), kI * omega(x, y), cols),
            1e-10);
  }
  return finish(3, "CCR, transformed CCR and Heisenberg form", t, "m=2, cap=10, columns of degree <= 8");
}

CriterionResult adjointness() {
  constexpr int kCap = 8;
  Tally t;
  Sampler s(4004);
  for (int trial = 0; trial < 100; ++trial) {
    const CVector v = s.vector(2);
    const FockVector phi = s.fock(2, kCap, 0, kCap);
    const FockVector psi = s.fock(2, kCap, 0, kCap - 1);
    const Complex lhs = fock_inner(annihilate(v, phi), psi);
    t.check(rel(lhs, fock_inner(phi, create(v, psi))), 1e-10);

    // a_g(v) and c_g(v) are adjoint once neither side loses its top degree.
    const SympMap g = random_symplectic(2, 4100 + trial, 0.5);
    const FockVector phi_low = s.fock(2, kCap, 0, kCap - 1);
    const Complex lhs_g = fock_inner(transformed_annihilate(g, v, phi_low), psi);
    t.check(rel(lhs_g, fock_inner(phi_low, transformed_create(g, v, psi))), 1e-10);
  }
  return finish(4, "Adjointness of creators and annihilators", t, "100 random triples, m=2, cap=8");
}

CriterionResult pythagorean() {
  Tally t;
  Sampler s(5005);
  for (int trial = 0; trial < 100; ++trial) {
    const CVector v = s.vector(2);
    const FockVector phi = s.fock(2, 8, 0, 7);
    const double lhs = create(v, phi).norm2();
    const double rhs = annihilate(v, phi).norm2() + v.squaredNorm() * phi.norm2();
    t.check(std::abs(lhs - rhs) / rhs, 1e-10);

    const FockVector chi = s.fock(3, 6, 0, 6);
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < 3; ++k) {
      if (s.uniform(0.0, 1.0) < 0.5) keep.push_back(k);
    }
    const FockVector part = project_modes(chi, keep);
    t.check(std::abs(chi.norm2() - (chi - part).norm2() - part.norm2()) / chi.norm2(), 1e-10);
  }
  return finish(5, "Pythagorean identities for creators and mode projections", t, "100 random instances");
}

CriterionResult shale() {
  Tally t;
  double worst_norm = 0.0;
  for (int seed = 0; seed < 20; ++seed) {
    const SympMap g = random_symplectic(seed % 2 == 0 ? 2 : 3, 6000 + seed, 0.9, 2);
    const auto m = static_cast<Eigen::Index>(g.modes());
    const CMatrix raw = -g.a() * g.c().partialPivLu().solve(CMatrix::Identity(m, m)).conjugate();
    const CMatrix alt = shale_operator_via_inverse(g);
    t.check((raw - alt).cwiseAbs().maxCoeff() / std::max(1.0, raw.norm()), 1e-10);
    t.check((raw - raw.transpose()).cwiseAbs().maxCoeff(), 1e-10);
    const double norm = shale_operator(g).op_norm();
    worst_norm = std::max(worst_norm, norm);
    if (!(norm < 1.0)) t.ok = false;
  }
  for (double r : {0.2, 0.5, 1.0}) {
    const SymAntilinear z = shale_operator(make_squeeze(r, 0, 1));
    t.check(std::abs(z.matrix()(0, 0) - Complex{-std::tanh(r)}), 1e-12);
  }
  return finish(6, "Shale operator formulas, symmetry, norm and squeeze value", t,
                "max |Z_g| over random maps = " + sci(worst_norm));
}

CriterionResult intertwining() {
  constexpr int kCap = 16;
  Tally t;
  Sampler s(7007);
  std::vector<SympMap> maps = {make_squeeze(0.4, 0, 1), make_squeeze(0.5, 1, 2)};
  for (int seed = 0; seed < 3; ++seed) maps.push_back(random_symplectic(2, 7100 + seed, 0.5));
  double worst_z = 0.0;
  for (const auto& g : maps) {
    const Implementer imp = build_implementer(g, kCap);
    worst_z = std::max(worst_z, imp.shale().op_norm());
    for (int trial = 0; trial < 3; ++trial) {
      t.check(intertwining_deviation(imp, s.vector(g.modes())).max(), 1e-8);
    }
  }
  return finish(7, "Implementer intertwines c, a and pi", t,
                "cap=16, degrees <= 14, max |Z_g| = " + sci(worst_z));
}

CriterionResult unitarity() {
  Tally t;
  std::vector<double> devs;
  for (int cap : {16, 20, 24}) devs.push_back(unitarity_deviation(build_implementer(make_squeeze(0.4, 0, 1), cap), 8));
  t.check(devs.back(), 1e-6);
  const bool monotone = devs[1] < devs[0] && devs[2] < devs[1];
  if (!monotone) t.ok = false;
  return finish(8, "Unitarity of U(g) on the degree <= 8 block", t,
                "caps 16/20/24: " + sci(devs[0]) + " " + sci(devs[1]) + " " + sci(devs[2]) +
                    (monotone ? " (decreasing)" : " (NOT decreasing)"));
}

CriterionResult cocycle_check() {
  constexpr int kCap = 24;
  Tally t;
  int words = 0;
  for (std::size_t m : {std::size_t{1}, std::size_t{2}}) {
    CMatrix u(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    if (m == 1) {
      u(0, 0) = std::polar(1.0, 0.7);
    } else {
      u << std::polar(std::cos(0.6), 0.3), -std::sin(0.6), std::sin(0.6), std::polar(std::cos(0.6), -0.3);
    }
    const std::vector<SympMap> gens = {make_squeeze(0.3, 0, m), make_squeeze(0.6, 0, m), make_unitary(u)};
    std::vector<Implementer> imps;
    for (const auto& g : gens) imps.push_back(build_implementer(g, kCap));
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (std::size_t j = 0; j < gens.size(); ++j) {
        const Complex exact = cocycle(gens[i], gens[j]);
        t.check(std::abs(cocycle_from_vacuum_entry(imps[i], imps[j]) - exact), 1e-6);
        ++words;
      }
    }
  }
  return finish(9, "Metaplectic cocycle from the vacuum-vacuum entry", t,
                std::to_string(words) + " words of length 2, cap=24");
}

CriterionResult weyl_relations() {
  Tally t;
  Sampler s(10010);
  for (int trial = 0; trial < 50; ++trial) {
    const CVector x = s.vector(2, 0.7), y = s.vector(2, 0.7);
    const CoherentSpan span({s.vector(2, 0.7), s.vector(2, 0.7), s.vector(2, 0.7)}, {s.scalar(), s.scalar(), s.scalar()});
    t.check(weyl_cocycle_check(x, y, span), 1e-12);
    const CVector v = s.vector(2, 0.7);
    const double time = s.uniform(-1.0, 1.0);
    t.check(rel(regularity_via_spans(x, v, y, time), regularity_element(x, v, y, time)), 1e-12);
  }
  return finish(10, "Weyl relation and regularity matrix element", t, "50 random pairs, m=2");
}

CriterionResult kernel() {
  constexpr int kCap = 30;
  const SympMap g = make_squeeze(0.4, 0, 1);
  // The closed-form kernel implements U W(v) = W(g v) U; the occupation-basis
  // implementer with that Weyl intertwining is the one built from -J g J.
  const Implementer weyl_matched = build_implementer(j_conjugate(g), kCap);
  const Implementer literal = build_implementer(g, kCap);
  Tally t;
  double literal_gap = 0.0;
  Sampler s(11011);
  for (int trial = 0; trial < 20; ++trial) {
    CVector x = s.vector(1), y = s.vector(1);
    x *= s.uniform(0.0, 1.0) / x.norm();
    y *= s.uniform(0.0, 1.0) / y.norm();
    const Complex closed = implementer_kernel(g, x, y);
    t.check(std::abs(closed - fock_kernel(weyl_matched, x, y)), 1e-6);
    literal_gap = std::max(literal_gap, std::abs(closed - fock_kernel(literal, x, y)));
  }
  return finish(11, "Closed-form implementer kernel vs truncated Fock kernel", t,
                "squeeze(0.4), cap=30, matched via -JgJ; U_g(g) itself differs by " + sci(literal_gap));
}

CriterionResult divergence() {
  const std::vector<int> caps = {10, 20, 30, 40};
  const FockVector gauss = gaussian(one_mode(1.0), 40);
  FockVector cubic(1, 3);
  cubic.add(MultiIndex({3}), 0.1 * std::sqrt(6.0));  // 0.1 v^3 with |v^3| = sqrt(3!)
  const FockVector cubic_exp = exp_homogeneous(cubic, 40);

  Tally t;
  std::ostringstream detail;
  const std::vector<std::pair<const char*, const FockVector*>> series = {{"gaussian", &gauss},
                                                                         {"cubic", &cubic_exp}};
  for (const auto& [name, vec] : series) {
    std::vector<double> norms = partial_norms2(*vec, caps);
    for (auto& n : norms) n = std::sqrt(n);
    const bool increasing = strictly_increasing(norms);
    const double ratio = norms.back() / norms.front();
    if (!increasing) t.ok = false;
    // Growth requirement: final > 10 x initial, recorded as 10 / ratio <= 1.
    t.check(10.0 / ratio, 1.0);
    detail << name << ": |.| " << std::setprecision(4) << norms.front() << " -> " << norms.back()
           << " (x" << ratio << (increasing ? ", increasing" : ", NOT increasing") << "); ";
  }
  const bool flagged = std::isinf(gaussian_norm2_exact(one_mode(1.0)));
  if (!flagged) t.ok = false;
  detail << "exact norm " << (flagged ? "+inf" : "finite");
  return finish(12, "Divergence certificates (lambda=1 Gaussian, cubic)", t, detail.str());
}

CriterionResult oracle_equivalence() {
  Tally t;
  Sampler s(13013);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(1 + trial % 8);
    const CMatrix a = s.matrix(n, n);
    const Complex naive = oracle::naive_permanent(a);
    t.check(std::abs(permanent(a) - naive) / std::max(1.0, std::abs(naive)), 1e-10);

    const auto m = static_cast<std::size_t>(1 + trial % 3);
    const int d = trial % 6;
    std::vector<CVector> xs, ys;
    for (int k = 0; k < d; ++k) {
      xs.push_back(s.vector(m));
      ys.push_back(s.vector(m));
    }
    const Complex via_permanent = monomial_inner(xs, ys);
    const Complex via_basis = fock_inner(embed_monomial(m, xs, d), embed_monomial(m, ys, d));
    t.check(std::abs(via_basis - via_permanent) / std::max(1.0, std::abs(via_permanent)), 1e-10);
  }
  return finish(13, "Ryser = naive permanent; basis inner = permanent inner", t, "200 random cases");
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> criteria = {
      {1, "gaussian-norm", gaussian_norm},   {2, "gaussian-pairing", gaussian_pairing},
      {3, "ccr", ccr},                       {4, "adjointness", adjointness},
      {5, "pythagorean", pythagorean},       {6, "shale", shale},
      {7, "intertwining", intertwining},     {8, "unitarity", unitarity},
      {9, "cocycle", cocycle_check},         {10, "weyl", weyl_relations},
      {11, "kernel", kernel},                {12, "divergence", divergence},
      {13, "oracles", oracle_equivalence},
  };
  return criteria;
}

std::vector<CriterionResult> run_acceptance(std::ostream& out, int only) {
  std::vector<CriterionResult> results;
  for (const auto& c : acceptance_criteria()) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.id = c.id;
      r.name = c.name;
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out << (r.passed ? "PASS" : "FAIL") << "  [" << std::setw(2) << r.id << "] " << r.name
        << "  worst=" << sci(r.worst) << " tol=" << sci(r.tolerance) << "  (" << std::fixed
        << std::setprecision(2) << r.seconds << "s)  " << std::defaultfloat << r.detail << '\n';
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace fockforge
