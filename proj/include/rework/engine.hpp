/// @file engine.hpp
/// d-reliability of a rework network and (b, d) sweeps.
#ifndef REWORK_ENGINE_HPP
#define REWORK_ENGINE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "rework/model.hpp"

namespace rework {

/// One (b, d) cell: counts of non-rework vectors and rework candidates, and
/// the probability mass contributed by each kind of feasible solution.
struct CellResult {
  int b = 0;
  int d = 0;
  std::size_t n_non_rework = 0;
  std::size_t n_rework = 0;
  double r_non_rework = 0.0;
  double r_rework = 0.0;

  double total() const noexcept { return r_non_rework + r_rework; }
};

/// Sums solution probabilities in enumeration order.
CellResult reliability(const ReworkNetwork& net, const Query& query);

struct SweepReport {
  std::string network;
  std::string setting;
  std::vector<CellResult> rows;  ///< ordered by (b, d), 1 <= d <= b <= b_max

  /// Throws std::out_of_range for a cell outside the grid.
  const CellResult& cell(int b, int d) const;
};

/// Cells are computed on up to @p threads workers (0 = hardware
/// concurrency); the report is identical for any thread count.
SweepReport sweep(const ReworkNetwork& net, int b_max, unsigned threads = 0);

struct RatioRow {
  int b = 0;
  int d = 0;
  double r_low = 0.0;
  double r_high = 0.0;
  double ratio = 0.0;     ///< r_low / r_high
  double rn_share = 0.0;  ///< R_n / R of the high-rate report
  double rr_share = 0.0;  ///< R_r / R of the high-rate report
};

/// Per-cell reliability of the low-defect setting relative to the high one.
/// Throws std::invalid_argument when the grids differ.
std::vector<RatioRow> compare_settings(const SweepReport& low,
                                       const SweepReport& high);

}  // namespace rework

#endif  // REWORK_ENGINE_HPP
