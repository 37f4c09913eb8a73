#include "rework/critique.hpp"

#include "rework/enumerate.hpp"
#include "rework/probability.hpp"

namespace rework {

void JointOutputDistribution::add(int u, int v, double mass) {
  if (mass == 0.0) return;
  mass_[{u, v}] += mass;
}

double JointOutputDistribution::total() const {
  return sum_if([](int, int) { return true; });
}

JointOutputDistribution joint_output_distribution(const ReworkNetwork& net,
                                                  const Query& query) {
  JointOutputDistribution joint;
  for_each_non_rework(net, query, [&](const NonReworkVector& px) {
    joint.add(px.output(), 0, prob_non_rework(net, px));
  });
  for_each_rework_candidate(net, query, [&](const NonReworkVector& px) {
    for_each_rework_pass(net, query, px, [&](const ReworkVector& piy) {
      joint.add(px.output(), piy.output(), prob_solution(net, {px, piy}));
    });
  });
  return joint;
}

SongGap song_gap(const JointOutputDistribution& joint, int d) {
  SongGap g;
  g.correct = joint.sum_if([d](int u, int v) { return u + v >= d; });

  const double first_alone = joint.sum_if([d](int u, int) { return u >= d; });
  double cross = 0.0;
  for (int j = 1; j <= d; ++j) {
    const double u_eq =
        joint.sum_if([d, j](int u, int) { return u == d - j; });
    const double v_ge = joint.sum_if([j](int, int v) { return v >= j; });
    cross += u_eq * v_ge;
  }
  g.song_value = first_alone + cross;
  g.gap = g.song_value - g.correct;

  g.both_at_least_d =
      joint.sum_if([d](int u, int v) { return u >= d && v >= d; });
  g.independent_both =
      first_alone * joint.sum_if([d](int, int v) { return v >= d; });
  return g;
}

SongGap song_gap(const ReworkNetwork& net, const Query& query) {
  return song_gap(joint_output_distribution(net, query), query.d);
}

UnionCheck union_identity(const JointOutputDistribution& joint, int d) {
  UnionCheck c;
  c.union_direct = joint.sum_if([d](int u, int v) { return u >= d || v >= d; });
  const double pu = joint.sum_if([d](int u, int) { return u >= d; });
  const double pv = joint.sum_if([d](int, int v) { return v >= d; });
  const double both =
      joint.sum_if([d](int u, int v) { return u >= d && v >= d; });
  c.inclusion_exclusion = pu + pv - both;
  return c;
}

}  // namespace rework
