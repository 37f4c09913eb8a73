#include "rework/enumerate.hpp"

#include <algorithm>
#include <stdexcept>

namespace rework {

NonReworkVector::NonReworkVector(std::vector<int> counts)
    : counts_(std::move(counts)) {
  if (counts_.size() < 2) {
    throw std::invalid_argument("non-rework vector needs b and >= 1 node");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] < 0) throw std::invalid_argument("negative product count");
    if (i > 0 && counts_[i] > counts_[i - 1]) {
      throw std::invalid_argument("perfect-product counts must not increase");
    }
  }
}

ReworkVector::ReworkVector(int beta, int head, std::vector<int> pass)
    : beta_(beta), head_(head), pass_(std::move(pass)) {
  if (pass_.empty()) throw std::invalid_argument("empty rework pass");
  int prev = head_;
  if (prev < 0) throw std::invalid_argument("negative send-back count");
  for (int v : pass_) {
    if (v < 0) throw std::invalid_argument("negative product count");
    if (v > prev) {
      throw std::invalid_argument("rework-pass counts must not increase");
    }
    prev = v;
  }
}

int ReworkVector::at(int node) const {
  if (node < beta_ || node > last_node()) {
    throw std::out_of_range("node " + std::to_string(node) +
                            " is not part of the rework pass");
  }
  return pass_[static_cast<std::size_t>(node - beta_)];
}

namespace {

bool accepts_input(const ReworkNetwork& net, int node, int input) {
  return input <= net.node(node).dist.max_level();
}

/// Shared recursion over (b, p_1, ..., p_n). @p bounds(i, counts) yields the
/// inclusive [low, high] range for p_i, @p admit(i, v, counts) filters a
/// value at depth i, and @p leaf decides whether a full vector is emitted.
template <typename Bounds, typename Admit, typename Leaf>
void descend(const ReworkNetwork& net, std::vector<int>& counts, int i,
             const Bounds& bounds, const Admit& admit, const Leaf& leaf,
             const Visitor<NonReworkVector>& visit) {
  if (i > net.size()) {
    if (leaf(counts)) visit(NonReworkVector(counts));
    return;
  }
  if (!accepts_input(net, i, counts[static_cast<std::size_t>(i - 1)])) return;
  const auto [low, high] = bounds(i, counts);
  for (int v = high; v >= low; --v) {
    if (!admit(i, v, counts)) continue;
    counts[static_cast<std::size_t>(i)] = v;
    descend(net, counts, i + 1, bounds, admit, leaf, visit);
  }
}

void descend_pass(const ReworkNetwork& net, int shortfall, int beta,
                  int head, std::vector<int>& pass, int node,
                  const Visitor<ReworkVector>& visit) {
  const int n = net.size();
  if (node > n) {
    visit(ReworkVector(beta, head, pass));
    return;
  }
  const int input =
      node == beta ? head : pass[static_cast<std::size_t>(node - 1 - beta)];
  if (!accepts_input(net, node, input)) return;
  for (int v = input; v >= shortfall; --v) {
    pass[static_cast<std::size_t>(node - beta)] = v;
    descend_pass(net, shortfall, beta, head, pass, node + 1, visit);
  }
}

}  // namespace

void for_each_non_rework(const ReworkNetwork& net, const Query& query,
                         const Visitor<NonReworkVector>& visit) {
  query.validate();
  std::vector<int> counts(static_cast<std::size_t>(net.size()) + 1, 0);
  counts[0] = query.b;
  const auto bounds = [&](int i, const std::vector<int>& c) {
    return std::pair{query.d, c[static_cast<std::size_t>(i - 1)]};
  };
  const auto admit = [](int, int, const std::vector<int>&) { return true; };
  const auto leaf = [](const std::vector<int>&) { return true; };
  descend(net, counts, 1, bounds, admit, leaf, visit);
}

void for_each_rework_candidate(const ReworkNetwork& net, const Query& query,
                               const Visitor<NonReworkVector>& visit) {
  query.validate();
  const int n = net.size();
  const int alpha = net.alpha();
  const auto at = [](const std::vector<int>& c, int i) {
    return c[static_cast<std::size_t>(i)];
  };
  std::vector<int> counts(static_cast<std::size_t>(n) + 1, 0);
  counts[0] = query.b;
  const auto bounds = [&](int i, const std::vector<int>& c) {
    const int prev = at(c, i - 1);
    return std::pair{0, i == n ? std::min(prev, query.d - 1) : prev};
  };
  // The final count ends below d and at most at p_alpha, so node alpha must
  // already hold max(d - p_alpha, 1) defects.
  const auto admit = [&](int i, int v, const std::vector<int>& c) {
    return i != alpha || at(c, alpha - 1) - v >= std::max(query.d - v, 1);
  };
  const auto leaf = [&](const std::vector<int>& c) {
    return at(c, alpha - 1) - at(c, alpha) >= query.d - at(c, n);
  };
  descend(net, counts, 1, bounds, admit, leaf, visit);
}

void for_each_rework_pass(const ReworkNetwork& net, const Query& query,
                          const NonReworkVector& px,
                          const Visitor<ReworkVector>& visit) {
  query.validate();
  const int shortfall = query.d - px.output();
  if (shortfall <= 0) return;
  const int available = px.defects(net.alpha());
  const int beta = net.beta();
  std::vector<int> pass(static_cast<std::size_t>(net.size() - beta + 1), 0);
  for (int head = available; head >= shortfall; --head) {
    descend_pass(net, shortfall, beta, head, pass, beta, visit);
  }
}

std::vector<NonReworkVector> enumerate_non_rework(const ReworkNetwork& net,
                                                  const Query& query) {
  std::vector<NonReworkVector> out;
  for_each_non_rework(net, query,
                      [&](const NonReworkVector& v) { out.push_back(v); });
  return out;
}

std::vector<NonReworkVector> enumerate_rework_candidates(
    const ReworkNetwork& net, const Query& query) {
  std::vector<NonReworkVector> out;
  for_each_rework_candidate(
      net, query, [&](const NonReworkVector& v) { out.push_back(v); });
  return out;
}

std::vector<ReworkVector> enumerate_rework_passes(const ReworkNetwork& net,
                                                  const Query& query,
                                                  const NonReworkVector& px) {
  std::vector<ReworkVector> out;
  for_each_rework_pass(net, query, px,
                       [&](const ReworkVector& v) { out.push_back(v); });
  return out;
}

SolutionSets collect_solutions(const ReworkNetwork& net, const Query& query) {
  SolutionSets sets;
  for_each_non_rework(net, query, [&](const NonReworkVector& px) {
    sets.non_rework.push_back({px, std::nullopt});
  });
  for_each_rework_candidate(net, query, [&](const NonReworkVector& px) {
    ++sets.candidate_count;
    for_each_rework_pass(net, query, px, [&](const ReworkVector& piy) {
      sets.rework.push_back({px, piy});
    });
  });
  return sets;
}

}  // namespace rework
