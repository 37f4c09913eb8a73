#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "rework/engine.hpp"
#include "rework/oracle.hpp"
#include "rework/probability.hpp"
#include "support.hpp"

using namespace rework;
using rework::test::fig1_high;
using rework::test::fig1_low;
using rework::test::rel_diff;

namespace {

double p_cap_at_least(const ReworkNetwork& net, int k, int l) {
  double s = 0.0;
  for (const auto& st : net.node(k).dist.levels()) {
    if (st.level >= l) s += st.prob;
  }
  return s;
}

// One unit: either it passes every node cleanly, or it is a node-3 defect
// that is sent back and survives nodes 2..4 on the rework pass.
double physical_one_unit(const ReworkNetwork& net) {
  double clean = 1.0;
  for (int k = 1; k <= 4; ++k) clean *= p_cap_at_least(net, k, 1) * (1 - net.node(k).delta);
  const double s = per_defect_send_probability(net.delta_send(), net.convention());
  const double rework = p_cap_at_least(net, 1, 1) * (1 - net.node(1).delta) *
                        p_cap_at_least(net, 2, 1) * (1 - net.node(2).delta) *
                        p_cap_at_least(net, 3, 1) * net.node(3).delta * s *
                        (1 - net.node(2).gamma) * (1 - net.node(3).gamma) *
                        (1 - net.node(4).gamma) * p_cap_at_least(net, 4, 1);
  return clean + rework;
}

}  // namespace

TEST_CASE("brute force agrees with the engine for b <= 6") {
  for (const auto* net : {&fig1_low(), &fig1_high()}) {
    for (int b = 1; b <= 6; ++b) {
      for (int d = 1; d <= b; ++d) {
        CAPTURE(b);
        CAPTURE(d);
        const auto e = reliability(*net, {b, d});
        const auto o = brute_force_reliability(*net, {b, d});
        CHECK(e.n_non_rework == o.n_non_rework);
        CHECK(e.n_rework == o.n_rework);
        CHECK(rel_diff(e.r_non_rework, o.r_non_rework) <= 1e-12);
        CHECK(rel_diff(e.r_rework, o.r_rework) <= 1e-12);
      }
    }
  }
  const auto z = brute_force_reliability(fig1_low(), {16, 1});
  CHECK(z.total() == 0.0);
  CHECK(z.n_non_rework == 0);
}

TEST_CASE("physical oracle: closed form at one unit") {
  for (const auto* net : {&fig1_low(), &fig1_high()}) {
    CHECK(rel_diff(physical_exact(*net, {1, 1}), physical_one_unit(*net)) < 1e-12);
  }
  const auto eq16 = rework::test::with_rates(
      fig1_high(), {0.05, 0.10, 0.15, 0.20}, {0.06, 0.12, 0.18, 0.24}, 0.2,
      SendbackConvention::kEq16Literal);
  CHECK(rel_diff(physical_exact(eq16, {1, 1}), physical_one_unit(eq16)) < 1e-12);
}

TEST_CASE("physical oracle: degenerate networks") {
  const auto sure = rework::test::point_mass(4, 5, 0.0, 0.0, 3, 2, 0.1);
  for (int b = 1; b <= 3; ++b) {
    for (int d = 1; d <= b; ++d) CHECK(physical_exact(sure, {b, d}) == 1.0);
  }
  const auto broken = rework::test::with_rates(
      fig1_low(), {1, 1, 1, 1}, {0.1, 0.1, 0.1, 0.1}, 0.3,
      SendbackConvention::kEq17Literal);
  CHECK(physical_exact(broken, {2, 1}) == 0.0);
}

TEST_CASE("physical oracle: range and monotonicity in d") {
  for (const auto* net : {&fig1_low(), &fig1_high()}) {
    for (int b = 1; b <= 4; ++b) {
      double prev = 1.0;
      for (int d = 1; d <= b; ++d) {
        const double p = physical_exact(*net, {b, d});
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        CHECK(p <= prev + 1e-15);
        prev = p;
      }
    }
  }
}

TEST_CASE("physical oracle guards its state space") {
  CHECK_THROWS_AS(physical_exact(fig1_low(), {400, 1}), std::length_error);
}

TEST_CASE("simulation: certain success") {
  const auto sure = rework::test::point_mass(3, 4, 0.0, 0.0, 2, 1, 0.5);
  SimConfig cfg;
  cfg.replications = 1000;
  cfg.query = {3, 3};
  const auto r = simulate(sure, cfg);
  CHECK(r.estimate == 1.0);
  CHECK(r.std_error == 0.0);
  CHECK(r.successes == 1000);
}

TEST_CASE("simulation: determinism across runs and thread counts") {
  SimConfig cfg;
  cfg.replications = 20000;
  cfg.seed = 42;
  cfg.query = {3, 2};
  cfg.threads = 1;
  const auto a = simulate(fig1_high(), cfg);
  const auto b = simulate(fig1_high(), cfg);
  cfg.threads = 7;
  const auto c = simulate(fig1_high(), cfg);
  CHECK(a == b);
  CHECK(a == c);
  cfg.seed = 43;
  CHECK_FALSE(simulate(fig1_high(), cfg) == a);
}

TEST_CASE("simulation: agrees with the physical oracle") {
  SimConfig cfg;
  cfg.replications = 200000;
  cfg.seed = 3;
  cfg.query = {2, 1};
  for (const auto* net : {&fig1_low(), &fig1_high()}) {
    const auto r = simulate(*net, cfg);
    CHECK(std::abs(r.estimate - physical_exact(*net, cfg.query)) <= 4 * r.std_error);
    CHECK(r.ci95.first <= r.estimate);
    CHECK(r.estimate <= r.ci95.second);
    CHECK(r.std_error ==
          doctest::Approx(std::sqrt(r.estimate * (1 - r.estimate) / r.replications)));
  }
}

TEST_CASE("simulation: standard error shrinks as 1/sqrt(n)") {
  SimConfig cfg;
  cfg.seed = 11;
  cfg.query = {2, 2};
  cfg.replications = 40000;
  const auto small = simulate(fig1_high(), cfg);
  cfg.replications = 640000;
  const auto large = simulate(fig1_high(), cfg);
  // Sixteen times the replications gives a quarter of the error.
  CHECK(small.std_error / large.std_error == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("splitmix64 reference output") {
  SplitMix64 g(1234567);
  // First outputs of the reference SplitMix64 for seed 1234567.
  CHECK(g() == 6457827717110365317ULL);
  CHECK(g() == 3203168211198807973ULL);
  SplitMix64 a = SplitMix64::stream(5, 9), b = SplitMix64::stream(5, 9);
  CHECK(a() == b());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
