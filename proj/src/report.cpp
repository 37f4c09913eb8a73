#include "rework/report.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rework {

void write_manifest(std::ostream& out, const RunManifest& m) {
  out << "# tool: rework " << m.tool_version << '\n';
  out << "# command: " << m.subcommand << '\n';
  if (!m.network_path.empty()) out << "# network: " << m.network_path << '\n';
  if (!m.parameters.empty()) {
    out << "# parameters:";
    for (const auto& [k, v] : m.parameters) out << ' ' << k << '=' << v;
    out << '\n';
  }
  if (m.seed) out << "# seed: " << *m.seed << '\n';
  if (!m.outputs.empty()) {
    out << "# outputs:";
    for (const auto& o : m.outputs) out << ' ' << o;
    out << '\n';
  }
}

std::string format_sci(double value, int significant) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*E", significant - 1, value);
  return buf;
}

void write_sweep_csv(std::ostream& out, const SweepReport& report,
                     const RunManifest& manifest) {
  write_manifest(out, manifest);
  out << kSweepHeader << '\n';
  for (const auto& c : report.rows) {
    out << c.b << ',' << c.d << ',' << c.n_non_rework << ',' << c.n_rework
        << ',' << format_sci(c.r_non_rework) << ',' << format_sci(c.r_rework)
        << ',' << format_sci(c.total()) << '\n';
  }
}

void write_ratio_csv(std::ostream& out, const std::vector<RatioRow>& rows,
                     const RunManifest& manifest) {
  write_manifest(out, manifest);
  out << kRatioHeader << '\n';
  for (const auto& r : rows) {
    out << r.b << ',' << r.d << ',' << format_sci(r.r_low) << ','
        << format_sci(r.r_high) << ',' << format_sci(r.ratio) << ','
        << format_sci(r.rn_share) << ',' << format_sci(r.rr_share) << '\n';
  }
}

void write_gap_csv(std::ostream& out, const std::vector<GapRow>& rows,
                   const RunManifest& manifest) {
  write_manifest(out, manifest);
  out << kGapHeader << '\n';
  for (const auto& r : rows) {
    out << r.b << ',' << r.d << ',' << format_sci(r.gap.correct) << ','
        << format_sci(r.gap.song_value) << ',' << format_sci(r.gap.gap)
        << '\n';
  }
}

void write_table_csv(std::ostream& out, const CapacityTable& table,
                     const RunManifest& manifest) {
  write_manifest(out, manifest);
  out << "input";
  const std::size_t nodes = table.rows.empty() ? 0 : table.rows.front().size();
  for (std::size_t k = 1; k <= nodes; ++k) out << ",node_" << k;
  out << '\n';
  char buf[32];
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    out << i;
    for (double p : table.rows[i]) {
      std::snprintf(buf, sizeof buf, "%.6f", p);
      out << ',' << buf;
    }
    out << '\n';
  }
}

SweepReport read_sweep_csv(std::istream& in) {
  SweepReport report;
  std::string line;
  bool header = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != kSweepHeader) {
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": expected header '" +
                                 std::string(kSweepHeader) + "'");
      }
      header = true;
      continue;
    }
    std::istringstream fields(line);
    std::string f[7];
    for (auto& s : f) {
      if (!std::getline(fields, s, ',')) {
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": expected 7 fields");
      }
    }
    try {
      CellResult c;
      c.b = std::stoi(f[0]);
      c.d = std::stoi(f[1]);
      c.n_non_rework = std::stoul(f[2]);
      c.n_rework = std::stoul(f[3]);
      c.r_non_rework = std::stod(f[4]);
      c.r_rework = std::stod(f[5]);
      report.rows.push_back(c);
    } catch (const std::logic_error&) {
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": malformed number");
    }
  }
  if (!header) throw std::runtime_error("missing sweep header");
  return report;
}

}  // namespace rework
