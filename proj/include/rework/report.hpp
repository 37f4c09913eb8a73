/// @file report.hpp
/// CSV renderings of sweeps, ratio tables, gap tables and capacity tables.
/// Every file starts with '#'-prefixed manifest lines.
#ifndef REWORK_REPORT_HPP
#define REWORK_REPORT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rework/critique.hpp"
#include "rework/engine.hpp"
#include "rework/model.hpp"

namespace rework {

inline constexpr std::string_view kToolVersion = "1.0.0";

struct RunManifest {
  std::string subcommand;
  std::string network_path;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> outputs;
  std::string tool_version{kToolVersion};
};

void write_manifest(std::ostream& out, const RunManifest& manifest);

/// Scientific notation with @p significant digits, e.g. 4.65878E-09.
std::string format_sci(double value, int significant = 6);

inline constexpr std::string_view kSweepHeader = "b,d,N_n,N_r,R_n,R_r,R";
inline constexpr std::string_view kRatioHeader =
    "b,d,R_low,R_high,ratio,Rn_share,Rr_share";
inline constexpr std::string_view kGapHeader = "b,d,correct,song_value,gap";

void write_sweep_csv(std::ostream& out, const SweepReport& report,
                     const RunManifest& manifest);
void write_ratio_csv(std::ostream& out, const std::vector<RatioRow>& rows,
                     const RunManifest& manifest);

struct GapRow {
  int b = 0;
  int d = 0;
  SongGap gap;
};

void write_gap_csv(std::ostream& out, const std::vector<GapRow>& rows,
                   const RunManifest& manifest);

/// input,node_1,...,node_n with six decimals.
void write_table_csv(std::ostream& out, const CapacityTable& table,
                     const RunManifest& manifest);

/// Reads back a sweep CSV (manifest lines are skipped). Throws
/// std::runtime_error on a malformed file.
SweepReport read_sweep_csv(std::istream& in);

}  // namespace rework

#endif  // REWORK_REPORT_HPP
