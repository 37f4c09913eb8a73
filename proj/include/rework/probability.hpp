/// @file probability.hpp
/// Occurrence probabilities of stages, vectors and feasible solutions.
///
/// Everything is evaluated as direct products in double precision. The
/// smallest cell magnitudes on the 15-unit example network are around 1e-21,
/// far above the subnormal range, so no log-space path is used.
#ifndef REWORK_PROBABILITY_HPP
#define REWORK_PROBABILITY_HPP

#include <cstdint>

#include "rework/enumerate.hpp"
#include "rework/model.hpp"

namespace rework {

/// Exact C(m, p). Throws std::domain_error when p is outside [0, m] and
/// std::overflow_error when the value does not fit 64 bits.
std::uint64_t binomial_coefficient(int m, int p);

/// C(m, p) (1 - rate)^p rate^(m - p) for m units of which p survive.
double binomial_term(int m, int p, double rate);

/// Probability that @p node turns @p input units into @p output perfect ones:
/// binomial_term(input, output, rate) times C_node(input). Zero when the
/// input exceeds the node's largest level. A zero input keeps the capacity
/// factor C_node(0).
double stage_factor(const ReworkNetwork& net, int node, int input, int output,
                    double rate);

double prob_non_rework(const ReworkNetwork& net, const NonReworkVector& px);

/// Probability that @p sent of @p available defects at alpha enter rework.
double prob_sendback(int available, int sent, double delta_send,
                     SendbackConvention convention);

/// Per-defect send-back probability implied by a convention.
double per_defect_send_probability(double delta_send,
                                   SendbackConvention convention) noexcept;

double prob_rework_pass(const ReworkNetwork& net, const ReworkVector& piy);

double prob_solution(const ReworkNetwork& net, const FeasibleSolution& sol);

}  // namespace rework

#endif  // REWORK_PROBABILITY_HPP
