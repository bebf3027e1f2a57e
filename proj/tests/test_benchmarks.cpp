#include <cmath>

#include "doctest.h"
#include "rissr/benchmarks.hpp"
#include "rissr/errors.hpp"
#include "support.hpp"

using namespace rissr;

TEST_CASE("scheme names round-trip") {
  for (Scheme s : all_schemes()) CHECK(parse_scheme(scheme_name(s)) == s);
  CHECK_THROWS_AS(parse_scheme("best"), ValidationError);
}

TEST_CASE("zero forcing") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto in = oracle::physical(seed, 4, 4, 4);
    const CMatrix W = zero_forcing(in.channels.h_d);
    for (int i = 0; i < 4; ++i) {
      CHECK(W.col(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
      for (int k = 0; k < 4; ++k) {
        if (i == k) continue;
        const double off = std::abs(W.col(i).dot(in.channels.h_d[k]));
        CHECK(off <= 1e-10 * std::abs(W.col(i).dot(in.channels.h_d[i])));
      }
    }
  }
  std::vector<CVector> dup{CVector::Ones(2), CVector::Ones(2)};
  CHECK_THROWS_AS(zero_forcing(dup), RankDeficient);
  std::vector<CVector> too_many(3, CVector::Ones(2));
  CHECK_THROWS_AS(zero_forcing(too_many), RankDeficient);
}

TEST_CASE("without RIS ignores the surfaces") {
  auto in = oracle::physical(3, 4, 4, 16);
  const SchemeResult small = run_without_ris(in.cfg, in.channels, AOSettings{});
  auto big = oracle::physical(3, 4, 4, 64);
  const SchemeResult large = run_without_ris(big.cfg, big.channels, AOSettings{});
  CHECK(small.metrics.objective == doctest::Approx(large.metrics.objective).epsilon(1e-12));
  CHECK(small.metrics.sum_R_s() == 0.0);
}

TEST_CASE("without SR has no RIS bits and reduces to the no-RIS user rate") {
  const auto in = oracle::physical(4, 4, 4, 8);
  const SchemeResult r = run_without_sr(in.cfg, in.channels, AOSettings{});
  CHECK(r.metrics.sum_R_s() == 0.0);

  // With b = 0 and the same fixed beamformers and powers, both models give
  // the same user bits.
  const ChannelSet flat = without_reflection(in.channels);
  const Problem assist = Problem::make(in.cfg, flat, SignalModel::kAssistOnly);
  const Problem sym = Problem::make(in.cfg, flat);
  OptState s = initial_state(sym, 4);
  s.W = zero_forcing(flat.h_d);
  AOSettings fixed;
  fixed.optimize_w = false;
  fixed.optimize_phases = false;
  const AOResult a = run_ao(assist, s, fixed);
  const SchemeResult nr = run_without_ris(in.cfg, in.channels, AOSettings{});
  CHECK(a.metrics.objective == doctest::Approx(nr.metrics.objective).epsilon(1e-10));
  CHECK(completed_bits(assist, s).objective == doctest::Approx(completed_bits(sym, s).objective).epsilon(1e-12));
}

TEST_CASE("local-only scheme") {
  const auto in = oracle::physical(5, 4, 4, 8);
  const SchemeResult r = run_local_only(in.cfg, in.channels, AOSettings{});
  const Problem p = Problem::make(in.cfg, in.channels);
  double expected = 0.0;
  for (int k = 0; k < 4; ++k) {
    expected += std::cbrt(p.energy.offload[k] / (p.processing_time() * in.cfg.kappa)) *
                p.processing_time() / in.cfg.cycles_per_bit;
  }
  CHECK(r.metrics.objective == doctest::Approx(expected).epsilon(1e-12));
  CHECK(r.metrics.objective / 4 == doctest::Approx(1.05e6).epsilon(1e-3));
  const auto other = oracle::physical(6, 4, 4, 8);
  CHECK(run_local_only(other.cfg, other.channels, AOSettings{}).metrics.objective == r.metrics.objective);
}

TEST_CASE("random schemes are seeded") {
  const auto in = oracle::physical(7, 4, 4, 8);
  AOSettings s;
  s.seed = 12;
  const SchemeResult a = run_random_phase(in.cfg, in.channels, s);
  const SchemeResult b = run_random_phase(in.cfg, in.channels, s);
  const Problem p = Problem::make(in.cfg, in.channels);
  const OptState init = initial_state(p, 12);
  for (int k = 0; k < 4; ++k) {
    CHECK(a.state.phases[k] == b.state.phases[k]);
    CHECK(a.state.phases[k] == init.phases[k]);
  }
  const SchemeResult c = run_random_beta(in.cfg, in.channels, s);
  const SchemeResult d = run_random_beta(in.cfg, in.channels, s);
  CHECK(c.state.beta == d.state.beta);
  CHECK(c.state.beta == random_beta_draw(4, 12));
}

TEST_CASE("random beta at the optimized beta reproduces the proposed objective") {
  const auto in = oracle::physical(8, 4, 4, 8);
  const SchemeResult prop = run_proposed(in.cfg, in.channels, AOSettings{});
  const Problem p = Problem::make(in.cfg, in.channels);
  AOSettings frozen;
  frozen.optimize_beta = false;
  frozen.order = prop.order;
  const AOResult r = run_ao(p, prop.state, frozen);
  CHECK(r.state.beta == prop.state.beta);
  CHECK(r.metrics.objective == doctest::Approx(prop.metrics.objective).epsilon(1e-4));
}

TEST_CASE("every scheme honors the constraints") {
  auto in = oracle::physical(9, 4, 4, 8);
  in.cfg.phase_mode = PhaseMode{2};
  for (Scheme sc : all_schemes()) {
    AOSettings s;
    s.max_iters = sc == Scheme::kProposedSdr ? 10 : 200;
    const SchemeResult r = run_scheme(sc, in.cfg, in.channels, s);
    CAPTURE(scheme_name(sc));
    CHECK(r.scheme == sc);
    for (int k = 0; k < 4; ++k) {
      CHECK(r.state.W.col(k).norm() <= 1.0 + 1e-12);
      CHECK(r.state.beta[k] >= 0.0);
      CHECK(r.state.beta[k] <= 1.0);
      for (int n = 0; n < 8; ++n) CHECK(r.state.phases[k][n] == snap_to_grid(r.state.phases[k][n], 2));
    }
    CHECK(std::isfinite(r.metrics.objective));
    CHECK(r.metrics.objective > 0.0);
  }
}
