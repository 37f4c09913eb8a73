// Shared fixtures for the test binaries.
#ifndef REWORK_TESTS_SUPPORT_HPP
#define REWORK_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rework/model.hpp"

namespace rework::test {

inline std::string data_path(const std::string& file) {
  return std::string(REWORK_DATA_DIR) + "/" + file;
}

inline const ReworkNetwork& fig1_low() {
  static const ReworkNetwork net = load_network(data_path("fig1_low.json"));
  return net;
}

inline const ReworkNetwork& fig1_high() {
  static const ReworkNetwork net = load_network(data_path("fig1_high.json"));
  return net;
}

/// Same topology and distributions as @p base with new rates.
inline ReworkNetwork with_rates(const ReworkNetwork& base,
                                const std::vector<double>& delta,
                                const std::vector<double>& gamma,
                                double delta_send,
                                SendbackConvention conv) {
  auto nodes = base.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    nodes[i].delta = delta[i];
    nodes[i].gamma = gamma[i];
  }
  return ReworkNetwork(nodes, base.alpha(), base.beta(), delta_send, conv);
}

/// Every node a point mass at @p level.
inline ReworkNetwork point_mass(int n, int level, double delta, double gamma,
                                int alpha, int beta, double delta_send) {
  std::vector<NodeParams> nodes;
  for (int i = 0; i < n; ++i) {
    nodes.push_back({StateDistribution({{level, 1.0}}), delta, gamma, {}});
  }
  return ReworkNetwork(nodes, alpha, beta, delta_send);
}

inline double rel_diff(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace rework::test

#endif  // REWORK_TESTS_SUPPORT_HPP
