/// @file oracle.hpp
/// Independent checks of the analytic engine.
///
/// brute_force_reliability re-derives every cell by exhaustive nested loops
/// with its own binomial and capacity code. physical_exact and simulate
/// instead model the line operationally: each node draws one capacity state
/// per run, processes min(arrivals, capacity) items, and each processed item
/// is defective with the node's rate. Defects are scrapped except at alpha.
/// When the first pass ends with fewer than d perfect units, every alpha
/// defect is independently sent back with the convention's per-defect send
/// probability and reprocessed once from beta to n against the same capacity
/// draw, with the rework-pass defect rates.
#ifndef REWORK_ORACLE_HPP
#define REWORK_ORACLE_HPP

#include <cstdint>
#include <utility>

#include "rework/engine.hpp"
#include "rework/model.hpp"

namespace rework {

CellResult brute_force_reliability(const ReworkNetwork& net,
                                   const Query& query);

/// Upper bound on (capacity combinations) x (b + 1)^2 accepted by
/// physical_exact.
inline constexpr double kPhysicalStateLimit = 5e7;

/// Exact P(total perfect output >= d) under the operational semantics.
/// Throws std::length_error when the state space exceeds
/// kPhysicalStateLimit.
double physical_exact(const ReworkNetwork& net, const Query& query);

/// SplitMix64: a seedable 64-bit generator whose streams are cheap to derive,
/// used to give each replication its own stream.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Independent stream for replication @p index of a run seeded @p seed.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) noexcept {
    SplitMix64 mix(seed ^ (index * 0xD1B54A32D192ED03ULL));
    mix();
    return SplitMix64(mix() ^ index);
  }

 private:
  std::uint64_t state_;
};

struct SimConfig {
  std::uint64_t replications = 100000;
  std::uint64_t seed = 1;
  Query query;
  unsigned threads = 0;  ///< 0 = hardware concurrency; results do not depend on it
};

struct SimResult {
  std::uint64_t replications = 0;
  std::uint64_t successes = 0;
  double estimate = 0.0;
  double std_error = 0.0;  ///< sqrt(p(1 - p) / replications)
  std::pair<double, double> ci95;

  friend bool operator==(const SimResult&, const SimResult&) = default;
};

/// Monte Carlo estimate of physical_exact. Deterministic for a fixed seed.
SimResult simulate(const ReworkNetwork& net, const SimConfig& cfg);

}  // namespace rework

#endif  // REWORK_ORACLE_HPP
