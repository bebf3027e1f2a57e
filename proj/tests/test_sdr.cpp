#include <cmath>
#include <random>

#include "doctest.h"
#include "rissr/errors.hpp"
#include "rissr/optimizer.hpp"
#include "rissr/sdr.hpp"
#include "support.hpp"

using namespace rissr;

namespace {

PhaseQuadratic random_quadratic(std::mt19937_64& g, int n) {
  std::normal_distribution<double> nd;
  CMatrix A(n, n);
  CVector z(n);
  for (int i = 0; i < n; ++i) {
    z[i] = {nd(g), nd(g)};
    for (int j = 0; j < n; ++j) A(i, j) = {nd(g), nd(g)};
  }
  return {A * A.adjoint() / n, z};
}

// Unit-modulus optimum over a 64-level grid per element.
double brute_force(const PhaseQuadratic& pq, int n) {
  RVector th = RVector::Zero(n);
  double best = -INFINITY;
  const int total = 1 << (6 * n);
  for (int idx = 0; idx < total; ++idx) {
    int r = idx;
    for (int i = 0; i < n; ++i, r >>= 6) th[i] = kTwoPi * (r & 63) / 64.0;
    best = std::max(best, pq.value_of_phases(th));
  }
  return best;
}

}  // namespace

TEST_CASE("lifted problem") {
  const LiftedProblem zero = build_lifted(CMatrix::Zero(2, 2), CVector::Zero(2));
  CHECK(zero.Q.norm() == 0.0);

  // N = 1: v = [e^{j t}; 1] gives -u + 2 Re{conj(z) e^{j t}}.
  CMatrix U(1, 1);
  U(0, 0) = 2.0;
  CVector z(1);
  z[0] = cdouble(0.5, -1.0);
  const LiftedProblem lp1 = build_lifted(U, z);
  CVector v(2);
  v << std::polar(1.0, 0.7), 1.0;
  const double hand = -2.0 + 2.0 * (std::conj(z[0]) * std::polar(1.0, 0.7)).real();
  CHECK(v.dot(lp1.Q * v).real() == doctest::Approx(hand).epsilon(1e-14));

  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> ud(0.0, kTwoPi);
  const PhaseQuadratic pq = random_quadratic(g, 4);
  const LiftedProblem lp = build_lifted(pq.U, pq.z);
  for (int t = 0; t < 100; ++t) {
    RVector th(4);
    for (int i = 0; i < 4; ++i) th[i] = ud(g);
    CVector w(5);
    w.head(4) = unit_modulus(th);
    w[4] = 1.0;
    CHECK(w.dot(lp.Q * w).real() == doctest::Approx(pq.value_of_phases(th)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(build_lifted(CMatrix::Zero(2, 2), CVector::Zero(3)), ValidationError);
}

TEST_CASE("diagonal SDP special cases") {
  const SdpSolution s0 = solve_diag_sdp({CMatrix::Zero(3, 3)}, SdrSettings{});
  CHECK((s0.V - CMatrix::Identity(3, 3)).norm() == 0.0);

  CMatrix D = CMatrix::Zero(2, 2);
  D(0, 0) = 1.5;
  D(1, 1) = -0.5;
  const SdpSolution sd = solve_diag_sdp({D}, SdrSettings{});
  CHECK(sd.objective == doctest::Approx(1.0).epsilon(1e-6));
  // With a diagonal objective the value is fixed by the diagonal constraint.
  for (double t : {0.0, 0.4, 1.0}) {
    CMatrix V = CMatrix::Identity(2, 2);
    V(0, 1) = V(1, 0) = t;
    CHECK((D * V).trace().real() == doctest::Approx(1.0));
  }
}

TEST_CASE("relaxation bound, feasibility and rounding at N <= 3") {
  std::mt19937_64 g(11);
  for (int n : {1, 2, 3}) {
    for (int t = 0; t < (n == 3 ? 3 : 10); ++t) {
      const PhaseQuadratic pq = random_quadratic(g, n);
      const double brute = brute_force(pq, n);
      const SdpSolution sol = solve_diag_sdp(build_lifted(pq.U, pq.z), SdrSettings{});
      CHECK(sol.objective >= brute - 1e-6 * std::abs(brute));
      for (int i = 0; i <= n; ++i) CHECK(std::abs(sol.V(i, i) - 1.0) <= 1e-6);
      Eigen::SelfAdjointEigenSolver<CMatrix> eig(sol.V);
      CHECK(eig.eigenvalues().minCoeff() >= -1e-6);

      Rng rng(static_cast<std::uint64_t>(100 * n + t));
      const RVector phases = gaussian_randomize(sol.V, pq, 1000, PhaseMode{}, rng);
      CHECK(pq.value_of_phases(phases) >= brute - 0.02 * std::abs(brute));
    }
  }
}

TEST_CASE("rank-one randomization recovers the phases") {
  std::mt19937_64 g(4);
  std::uniform_real_distribution<double> ud(0.0, kTwoPi);
  RVector th(3);
  for (int i = 0; i < 3; ++i) th[i] = ud(g);
  CVector v(4);
  v.head(3) = unit_modulus(th);
  v[3] = std::polar(1.0, 0.9);  // arbitrary global rotation
  v *= std::polar(1.0, 0.3);
  const CMatrix V = v * v.adjoint();
  PhaseQuadratic pq{CMatrix::Zero(3, 3), CVector::Zero(3)};
  Rng rng(1);
  const RVector out = gaussian_randomize(V, pq, 1, PhaseMode{}, rng);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(std::polar(1.0, out[i]) - v[i] / v[3]) <= 1e-9);
  }
}

TEST_CASE("more randomizations never hurt") {
  std::mt19937_64 g(5);
  const PhaseQuadratic pq = random_quadratic(g, 6);
  const SdpSolution sol = solve_diag_sdp(build_lifted(pq.U, pq.z), SdrSettings{});
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Rng a(seed), b(seed);
    const double one = pq.value_of_phases(gaussian_randomize(sol.V, pq, 1, PhaseMode{}, a));
    const double many = pq.value_of_phases(gaussian_randomize(sol.V, pq, 1000, PhaseMode{}, b));
    CHECK(many >= one);
  }
  Rng r(9);
  const RVector snapped = gaussian_randomize(sol.V, pq, 50, PhaseMode{2}, r);
  for (int i = 0; i < snapped.size(); ++i) CHECK(snapped[i] == snap_to_grid(snapped[i], 2));
}

TEST_CASE("monotone acceptance") {
  const auto f = [](const RVector& x) { return x.sum(); };
  const RVector lo = RVector::Constant(2, 1.0), hi = RVector::Constant(2, 2.0);
  CHECK(monotone_accept(lo, hi, f) == hi);
  CHECK(monotone_accept(hi, lo, f) == hi);
  const RVector same = RVector::Constant(2, 1.0);
  RVector other(2);
  other << 0.5, 1.5;
  CHECK(monotone_accept(same, other, f) == same);  // ties keep the old value

  std::mt19937_64 g(6);
  const PhaseQuadratic pq = random_quadratic(g, 5);
  const auto f3 = [&](const RVector& th) { return pq.value_of_phases(th); };
  std::uniform_real_distribution<double> ud(0.0, kTwoPi);
  RVector cur = RVector::Zero(5);
  double prev = f3(cur);
  for (int t = 0; t < 200; ++t) {
    RVector cand(5);
    for (int i = 0; i < 5; ++i) cand[i] = ud(g);
    cur = monotone_accept(cur, cand, f3);
    CHECK(f3(cur) >= prev);
    prev = f3(cur);
  }
}

TEST_CASE("SDR phase solver keeps the AO trace monotone") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto in = oracle::physical(seed, 4, 4, 8);
    const Problem p = Problem::make(in.cfg, in.channels);
    AOSettings s;
    s.phase_solver = PhaseSolver::kSdr;
    s.max_iters = 30;
    const AOResult r = run_ao(p, initial_state(p, seed), s);
    for (std::size_t i = 1; i < r.trace.rows.size(); ++i) {
      CHECK(r.trace.rows[i].surrogate >= r.trace.rows[i - 1].surrogate * (1.0 - 1e-9));
    }
  }
}

TEST_CASE("non-convergence is reported") {
  std::mt19937_64 g(7);
  const PhaseQuadratic pq = random_quadratic(g, 6);
  SdrSettings s;
  s.max_iters = 2;
  CHECK_THROWS_AS(solve_diag_sdp(build_lifted(pq.U, pq.z), s), NonConvergence);
}
