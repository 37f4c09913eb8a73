/// @file enumerate.hpp
/// Depth-first enumeration of first-pass (non-rework) vectors, rework
/// candidates, and rework-pass vectors.
///
/// All streams visit values in decreasing order at every depth, so repeated
/// runs produce identical sequences. Branches whose stage input exceeds the
/// receiving node's largest capacity level are pruned: such vectors have
/// probability zero.
#ifndef REWORK_ENUMERATE_HPP
#define REWORK_ENUMERATE_HPP

#include <functional>
#include <optional>
#include <vector>

#include "rework/model.hpp"

namespace rework {

/// Perfect-product counts after each node of the first pass.
/// perfect(0) is the input b; defects(i) = perfect(i-1) - perfect(i).
class NonReworkVector {
 public:
  /// @p counts holds b followed by the n per-node counts. Throws
  /// std::invalid_argument unless the counts are nonnegative and
  /// non-increasing.
  explicit NonReworkVector(std::vector<int> counts);

  int nodes() const noexcept { return static_cast<int>(counts_.size()) - 1; }
  int input() const noexcept { return counts_.front(); }
  int output() const noexcept { return counts_.back(); }
  int perfect(int i) const { return counts_.at(static_cast<std::size_t>(i)); }
  int defects(int i) const { return i == 0 ? 0 : perfect(i - 1) - perfect(i); }
  const std::vector<int>& counts() const noexcept { return counts_; }

  friend bool operator==(const NonReworkVector&,
                         const NonReworkVector&) = default;
  friend auto operator<=>(const NonReworkVector&,
                          const NonReworkVector&) = default;

 private:
  std::vector<int> counts_;
};

/// Perfect-product counts of the rework pass. head() is the number of
/// defects sent back from alpha; at(k) for k in beta..n is the count right
/// after node k. defects(beta) = head() - at(beta).
class ReworkVector {
 public:
  /// Throws std::invalid_argument unless head >= pass[0] >= pass[1] >= ... >= 0.
  ReworkVector(int beta, int head, std::vector<int> pass);

  int beta() const noexcept { return beta_; }
  int last_node() const noexcept {
    return beta_ + static_cast<int>(pass_.size()) - 1;
  }
  int head() const noexcept { return head_; }
  int at(int node) const;
  /// Count entering @p node during the rework pass.
  int input_to(int node) const { return node == beta_ ? head_ : at(node - 1); }
  int defects(int node) const { return input_to(node) - at(node); }
  int output() const noexcept { return pass_.back(); }
  const std::vector<int>& pass() const noexcept { return pass_; }

  friend bool operator==(const ReworkVector&, const ReworkVector&) = default;
  friend auto operator<=>(const ReworkVector&, const ReworkVector&) = default;

 private:
  int beta_;
  int head_;
  std::vector<int> pass_;
};

struct FeasibleSolution {
  NonReworkVector px;
  std::optional<ReworkVector> piy;

  friend bool operator==(const FeasibleSolution&,
                         const FeasibleSolution&) = default;
};

template <typename T>
using Visitor = std::function<void(const T&)>;

/// Vectors with b >= p_1 >= ... >= p_n >= d.
void for_each_non_rework(const ReworkNetwork& net, const Query& query,
                         const Visitor<NonReworkVector>& visit);

/// Monotone vectors with p_n < d whose alpha defects can cover the shortfall:
/// q_alpha >= d - p_n.
void for_each_rework_candidate(const ReworkNetwork& net, const Query& query,
                               const Visitor<NonReworkVector>& visit);

/// Rework passes following @p px: d - p_n <= head <= q_alpha, monotone over
/// (alpha, beta, ..., n), and output >= d - p_n.
void for_each_rework_pass(const ReworkNetwork& net, const Query& query,
                          const NonReworkVector& px,
                          const Visitor<ReworkVector>& visit);

std::vector<NonReworkVector> enumerate_non_rework(const ReworkNetwork& net,
                                                  const Query& query);
std::vector<NonReworkVector> enumerate_rework_candidates(
    const ReworkNetwork& net, const Query& query);
std::vector<ReworkVector> enumerate_rework_passes(const ReworkNetwork& net,
                                                  const Query& query,
                                                  const NonReworkVector& px);

struct SolutionSets {
  std::vector<FeasibleSolution> non_rework;  ///< I_n
  std::vector<FeasibleSolution> rework;      ///< I_r, one per (p_x, pi_y) pair
  std::size_t candidate_count = 0;           ///< distinct p_x behind rework
};

SolutionSets collect_solutions(const ReworkNetwork& net, const Query& query);

}  // namespace rework

#endif  // REWORK_ENUMERATE_HPP
