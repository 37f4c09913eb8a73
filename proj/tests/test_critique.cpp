#include <doctest.h>

#include <cmath>

#include "rework/critique.hpp"
#include "rework/engine.hpp"
#include "support.hpp"

using namespace rework;
using rework::test::fig1_high;
using rework::test::fig1_low;
using rework::test::rel_diff;
using rework::test::with_rates;

namespace {

ReworkNetwork no_send(const ReworkNetwork& base) {
  std::vector<double> d, g;
  for (const auto& n : base.nodes()) {
    d.push_back(n.delta);
    g.push_back(n.gamma);
  }
  return with_rates(base, d, g, 0.0, SendbackConvention::kEq16Literal);
}

}  // namespace

TEST_CASE("joint distribution at one unit") {
  const auto& net = fig1_low();
  const auto joint = joint_output_distribution(net, {1, 1});
  const auto cell = reliability(net, {1, 1});
  REQUIRE(joint.atoms().size() == 2);
  CHECK(joint.atoms().at({1, 0}) == cell.r_non_rework);
  CHECK(joint.atoms().at({0, 1}) == cell.r_rework);
}

TEST_CASE("joint distribution reproduces the engine and stays sub-stochastic") {
  for (const auto* net : {&fig1_low(), &fig1_high()}) {
    for (int b = 1; b <= 8; ++b) {
      for (int d = 1; d <= b; ++d) {
        const auto joint = joint_output_distribution(*net, {b, d});
        const double r = reliability(*net, {b, d}).total();
        const double p = joint.sum_if([d](int u, int v) { return u + v >= d; });
        CHECK(rel_diff(p, r) <= 1e-12);
        CHECK(joint.total() <= 1.0);
        for (const auto& [uv, m] : joint.atoms()) CHECK(m >= 0.0);
      }
    }
  }
}

TEST_CASE("without send-back all mass sits on v = 0 and the gap vanishes") {
  const auto net = no_send(fig1_high());
  for (int b = 1; b <= 6; ++b) {
    for (int d = 1; d <= b; ++d) {
      const auto joint = joint_output_distribution(net, {b, d});
      for (const auto& [uv, m] : joint.atoms()) {
        if (uv.second != 0) CHECK(m == 0.0);
      }
      const auto g = song_gap(net, {b, d});
      CHECK(g.gap == 0.0);
    }
  }
}

TEST_CASE("song gap is nonzero on the high setting") {
  const auto g = song_gap(fig1_high(), {3, 2});
  CHECK(g.gap != 0.0);
  CHECK(g.correct == doctest::Approx(reliability(fig1_high(), {3, 2}).total()));
}

TEST_CASE("one-unit gap is confined to the rework term") {
  const auto g = song_gap(fig1_low(), {1, 1});
  CHECK(std::abs(g.gap) <= reliability(fig1_low(), {1, 1}).r_rework);
}

TEST_CASE("song formula on a hand-built joint distribution") {
  JointOutputDistribution j;
  j.add(2, 0, 0.3);
  j.add(1, 1, 0.2);
  j.add(0, 2, 0.1);
  j.add(0, 1, 0.1);
  // Marginals: u = {2: .3, 1: .2, 0: .2}; v >= 1: .4, v >= 2: .1.
  const auto g = song_gap(j, 2);
  CHECK(g.correct == doctest::Approx(0.6));
  CHECK(g.song_value == doctest::Approx(0.3 + 0.2 * 0.4 + 0.2 * 0.1));
  CHECK(g.gap == doctest::Approx(g.song_value - g.correct));
  CHECK(g.both_at_least_d == 0.0);
  CHECK(g.independent_both == doctest::Approx(0.3 * 0.1));
  j.add(3, 3, 0.0);
  CHECK(j.atoms().size() == 4);
}

TEST_CASE("inclusion-exclusion holds on the union event") {
  for (const auto* net : {&fig1_low(), &fig1_high()}) {
    for (int b = 1; b <= 8; ++b) {
      for (int d = 1; d <= b; ++d) {
        const auto joint = joint_output_distribution(*net, {b, d});
        const auto u = union_identity(joint, d);
        CHECK(std::abs(u.union_direct - u.inclusion_exclusion) <= 1e-15);
        const double with_rework = joint.sum_if([d](int a, int v) { return a + v >= d; });
        const double first = joint.sum_if([d](int a, int) { return a >= d; });
        CHECK(with_rework >= first);
      }
    }
  }
}
