#include "rework/probability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rework {

namespace {
__extension__ using u128 = unsigned __int128;
}  // namespace

std::uint64_t binomial_coefficient(int m, int p) {
  if (m < 0 || p < 0 || p > m) {
    throw std::domain_error("binomial coefficient C(" + std::to_string(m) +
                            ", " + std::to_string(p) + ") is undefined");
  }
  const int k = std::min(p, m - p);
  u128 c = 1;
  for (int i = 1; i <= k; ++i) {
    // c * (m - k + i) / i stays integral at every step.
    c = c * static_cast<unsigned>(m - k + i) / static_cast<unsigned>(i);
    if (c > std::numeric_limits<std::uint64_t>::max()) {
      throw std::overflow_error("C(" + std::to_string(m) + ", " +
                                std::to_string(p) + ") exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(c);
}

double binomial_term(int m, int p, double rate) {
  return static_cast<double>(binomial_coefficient(m, p)) *
         std::pow(1.0 - rate, p) * std::pow(rate, m - p);
}

double stage_factor(const ReworkNetwork& net, int node, int input, int output,
                    double rate) {
  if (output < 0 || output > input) {
    throw std::domain_error("stage output " + std::to_string(output) +
                            " outside [0, " + std::to_string(input) + "]");
  }
  const auto cap = capacity_lookup(net, node, input);
  if (!cap) return 0.0;
  return binomial_term(input, output, rate) * cap->prob;
}

double prob_non_rework(const ReworkNetwork& net, const NonReworkVector& px) {
  double prob = 1.0;
  for (int i = 1; i <= px.nodes(); ++i) {
    prob *= stage_factor(net, i, px.perfect(i - 1), px.perfect(i),
                         net.node(i).delta);
  }
  return prob;
}

double per_defect_send_probability(double delta_send,
                                   SendbackConvention convention) noexcept {
  return convention == SendbackConvention::kEq16Literal ? delta_send
                                                        : 1.0 - delta_send;
}

double prob_sendback(int available, int sent, double delta_send,
                     SendbackConvention convention) {
  if (sent < 0 || sent > available) {
    throw std::domain_error("cannot send " + std::to_string(sent) + " of " +
                            std::to_string(available) + " defects");
  }
  const double coeff = static_cast<double>(binomial_coefficient(available, sent));
  const double rate = delta_send;
  const double complement = 1.0 - delta_send;
  if (convention == SendbackConvention::kEq16Literal) {
    return coeff * std::pow(rate, sent) * std::pow(complement, available - sent);
  }
  return coeff * std::pow(complement, sent) * std::pow(rate, available - sent);
}

double prob_rework_pass(const ReworkNetwork& net, const ReworkVector& piy) {
  double prob = 1.0;
  for (int i = piy.beta(); i <= piy.last_node(); ++i) {
    prob *= stage_factor(net, i, piy.input_to(i), piy.at(i), net.node(i).gamma);
  }
  return prob;
}

double prob_solution(const ReworkNetwork& net, const FeasibleSolution& sol) {
  const double first = prob_non_rework(net, sol.px);
  if (!sol.piy) return first;
  return first *
         prob_sendback(sol.px.defects(net.alpha()), sol.piy->head(),
                       net.delta_send(), net.convention()) *
         prob_rework_pass(net, *sol.piy);
}

}  // namespace rework
