/// @file critique.hpp
/// Joint (first-pass, rework-pass) output distribution and the gap between
/// the exact reliability and the marginal-product formula that treats the
/// two outputs as independent.
#ifndef REWORK_CRITIQUE_HPP
#define REWORK_CRITIQUE_HPP

#include <map>
#include <utility>

#include "rework/model.hpp"

namespace rework {

/// Sub-probability mass over (first-pass output u, rework output v), built
/// from the feasible solutions of one query. Non-rework solutions sit at
/// (p_n, 0), rework ones at (p_n, pi_n). Mass outside the feasible sets is
/// not represented, so the total is at most one.
class JointOutputDistribution {
 public:
  using Atom = std::pair<int, int>;

  void add(int u, int v, double mass);
  const std::map<Atom, double>& atoms() const noexcept { return mass_; }

  double total() const;
  /// Sum of the mass of atoms satisfying @p pred(u, v).
  template <typename Pred>
  double sum_if(Pred pred) const {
    double s = 0.0;
    for (const auto& [uv, m] : mass_) {
      if (pred(uv.first, uv.second)) s += m;
    }
    return s;
  }

 private:
  std::map<Atom, double> mass_;
};

JointOutputDistribution joint_output_distribution(const ReworkNetwork& net,
                                                  const Query& query);

struct SongGap {
  double correct = 0.0;     ///< P(u + v >= d) on the joint distribution
  double song_value = 0.0;  ///< P(u >= d) + sum_j P(u = d - j) P(v >= j)
  double gap = 0.0;         ///< song_value - correct

  double both_at_least_d = 0.0;  ///< P(u >= d and v >= d)
  double independent_both = 0.0; ///< P(u >= d) P(v >= d)
};

SongGap song_gap(const JointOutputDistribution& joint, int d);
SongGap song_gap(const ReworkNetwork& net, const Query& query);

/// Both sides of P(u >= d or v >= d) = P(u >= d) + P(v >= d) - P(both),
/// the left evaluated directly on the union event.
struct UnionCheck {
  double union_direct = 0.0;
  double inclusion_exclusion = 0.0;
};

UnionCheck union_identity(const JointOutputDistribution& joint, int d);

}  // namespace rework

#endif  // REWORK_CRITIQUE_HPP
