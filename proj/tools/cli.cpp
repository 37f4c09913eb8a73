#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "rework/critique.hpp"
#include "rework/engine.hpp"
#include "rework/model.hpp"
#include "rework/oracle.hpp"
#include "rework/report.hpp"

namespace rework::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Brute-force agreement tolerance (relative).
constexpr double kBruteTolerance = 1e-12;
/// Monte Carlo agreement, in standard errors.
constexpr double kMcSigmas = 4.0;
/// Published R_n are printed to 5 significant figures.
constexpr double kReferenceRnTolerance = 1e-4;
/// Published R_r must lie within this factor for b <= kReferenceRrMaxB.
constexpr double kReferenceRrFactor = 10.0;
constexpr int kReferenceRrMaxB = 5;

struct Options {
  std::string network;
  int b = 0;
  int d = 0;
  int b_max = 0;
  int max_input = 0;
  std::string out;
  std::string ratio_against;
  std::string ratio_out;
  std::string oracle;
  std::string reference;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

ReworkNetwork load(const Options& opt, std::ostream& err) {
  std::vector<std::string> warnings;
  auto net = load_network(opt.network, &warnings);
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  return net;
}

/// Writes to @p path, or to @p fallback when the path is empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path) {
    if (path.empty()) {
      stream_ = &fallback;
      return;
    }
    file_.open(path);
    if (!file_) throw IoError("cannot write '" + path + "'");
    stream_ = &file_;
  }

  std::ostream& stream() { return *stream_; }

  void close() {
    if (path_.empty()) return;
    file_.close();
    if (!file_) throw IoError("failed writing '" + path_ + "'");
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

RunManifest manifest_for(const std::string& command, const Options& opt,
                         std::vector<std::pair<std::string, std::string>> params,
                         std::vector<std::string> outputs = {},
                         std::optional<std::uint64_t> seed = std::nullopt) {
  RunManifest m;
  m.subcommand = command;
  m.network_path = opt.network;
  m.parameters = std::move(params);
  m.outputs = std::move(outputs);
  m.seed = seed;
  return m;
}

double relative_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

int cmd_compute(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.b < 1) throw UsageError("--b must be at least 1");
  if (opt.d < 1 || opt.d > opt.b) throw UsageError("--d must lie in 1..b");
  const auto net = load(opt, err);
  const auto c = reliability(net, {opt.b, opt.d});
  out << "b=" << c.b << " d=" << c.d << " N_n=" << c.n_non_rework
      << " N_r=" << c.n_rework << " R_n=" << format_sci(c.r_non_rework, 5)
      << " R_r=" << format_sci(c.r_rework, 5)
      << " R=" << format_sci(c.total(), 5) << '\n';
  return kOk;
}

std::string default_ratio_path(const std::string& out) {
  std::filesystem::path p(out);
  const auto stem = p.stem().string() + "_ratio";
  return (p.parent_path() / (stem + p.extension().string())).string();
}

int cmd_sweep(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.b_max < 1) throw UsageError("--b-max must be at least 1");
  const auto net = load(opt, err);

  SweepReport other;
  std::string ratio_out;
  if (!opt.ratio_against.empty()) {
    std::ifstream in(opt.ratio_against);
    if (!in) throw IoError("cannot read '" + opt.ratio_against + "'");
    try {
      other = read_sweep_csv(in);
    } catch (const std::runtime_error& e) {
      throw IoError(opt.ratio_against + ": " + e.what());
    }
    ratio_out = opt.ratio_out.empty() ? default_ratio_path(opt.out)
                                      : opt.ratio_out;
  }

  const auto report = sweep(net, opt.b_max, opt.threads);
  std::vector<std::string> outputs{opt.out};
  if (!ratio_out.empty()) outputs.push_back(ratio_out);
  std::vector<std::pair<std::string, std::string>> params{
      {"b_max", std::to_string(opt.b_max)}};
  if (!opt.ratio_against.empty()) {
    params.emplace_back("ratio_against", opt.ratio_against);
  }
  const auto manifest = manifest_for("sweep", opt, params, outputs);

  Sink sink(opt.out, out);
  write_sweep_csv(sink.stream(), report, manifest);
  sink.close();

  if (!ratio_out.empty()) {
    std::vector<RatioRow> rows;
    try {
      rows = compare_settings(report, other);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--ratio-against: ") + e.what());
    }
    Sink ratio(ratio_out, out);
    write_ratio_csv(ratio.stream(), rows, manifest);
    ratio.close();
  }
  return kOk;
}

int cmd_table(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.max_input < 0) throw UsageError("--max-input must be nonnegative");
  const auto net = load(opt, err);
  const auto manifest = manifest_for(
      "table", opt, {{"max_input", std::to_string(opt.max_input)}},
      opt.out.empty() ? std::vector<std::string>{} : std::vector{opt.out});
  Sink sink(opt.out, out);
  write_table_csv(sink.stream(), lookup_table(net, opt.max_input), manifest);
  sink.close();
  return kOk;
}

int cmd_critique(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.b_max < 1) throw UsageError("--b-max must be at least 1");
  const auto net = load(opt, err);
  std::vector<GapRow> rows;
  for (int b = 1; b <= opt.b_max; ++b) {
    for (int d = 1; d <= b; ++d) rows.push_back({b, d, song_gap(net, {b, d})});
  }
  const auto manifest = manifest_for(
      "critique", opt, {{"b_max", std::to_string(opt.b_max)}},
      opt.out.empty() ? std::vector<std::string>{} : std::vector{opt.out});
  Sink sink(opt.out, out);
  write_gap_csv(sink.stream(), rows, manifest);
  sink.close();
  return kOk;
}

/// Returns true when every cell passed.
bool verify_brute(const ReworkNetwork& net, int b_max, std::ostream& os,
                  unsigned threads) {
  os << "b,d,N_n,N_r,oracle_N_n,oracle_N_r,R_n,oracle_R_n,R_r,oracle_R_r,"
        "rel_err_R_n,rel_err_R_r,status\n";
  const auto report = sweep(net, b_max, threads);
  bool all = true;
  for (const auto& c : report.rows) {
    const auto o = brute_force_reliability(net, {c.b, c.d});
    const double en = relative_diff(c.r_non_rework, o.r_non_rework);
    const double er = relative_diff(c.r_rework, o.r_rework);
    const bool ok = c.n_non_rework == o.n_non_rework &&
                    c.n_rework == o.n_rework && en <= kBruteTolerance &&
                    er <= kBruteTolerance;
    all = all && ok;
    os << c.b << ',' << c.d << ',' << c.n_non_rework << ',' << c.n_rework
       << ',' << o.n_non_rework << ',' << o.n_rework << ','
       << format_sci(c.r_non_rework, 17) << ','
       << format_sci(o.r_non_rework, 17) << ',' << format_sci(c.r_rework, 17)
       << ',' << format_sci(o.r_rework, 17) << ',' << format_sci(en, 3) << ','
       << format_sci(er, 3) << ',' << (ok ? "pass" : "FAIL") << '\n';
  }
  return all;
}

void verify_physical(const ReworkNetwork& net, int b_max, std::ostream& os) {
  os << "b,d,R_analytic,R_physical,physical_over_analytic\n";
  for (int b = 1; b <= b_max; ++b) {
    for (int d = 1; d <= b; ++d) {
      const double analytic = reliability(net, {b, d}).total();
      os << b << ',' << d << ',' << format_sci(analytic) << ',';
      try {
        const double phys = physical_exact(net, {b, d});
        os << format_sci(phys) << ','
           << (analytic > 0.0 ? format_sci(phys / analytic) : "nan") << '\n';
      } catch (const std::length_error&) {
        os << "n/a,n/a\n";
      }
    }
  }
}

bool verify_mc(const ReworkNetwork& net, const Options& opt, std::ostream& os) {
  os << "b,d,replications,estimate,std_error,ci95_low,ci95_high,"
        "physical_exact,z,status\n";
  bool all = true;
  for (int b = 1; b <= opt.b_max; ++b) {
    for (int d = 1; d <= b; ++d) {
      SimConfig cfg;
      cfg.replications = opt.samples;
      cfg.seed = opt.seed;
      cfg.query = {b, d};
      cfg.threads = opt.threads;
      const auto sim = simulate(net, cfg);
      os << b << ',' << d << ',' << sim.replications << ','
         << format_sci(sim.estimate) << ',' << format_sci(sim.std_error) << ','
         << format_sci(sim.ci95.first) << ',' << format_sci(sim.ci95.second)
         << ',';
      std::optional<double> exact;
      try {
        exact = physical_exact(net, {b, d});
      } catch (const std::length_error&) {
      }
      if (!exact) {
        os << "n/a,n/a,skipped\n";
        continue;
      }
      const double diff = std::abs(sim.estimate - *exact);
      const bool ok = diff <= kMcSigmas * sim.std_error;
      all = all && ok;
      os << format_sci(*exact) << ','
         << (sim.std_error > 0.0 ? format_sci(diff / sim.std_error, 4) : "inf")
         << ',' << (ok ? "pass" : "FAIL") << '\n';
    }
  }
  return all;
}

bool verify_reference(const ReworkNetwork& net, const Options& opt,
                      std::ostream& os) {
  if (opt.reference.empty()) {
    throw UsageError("--oracle reference requires --reference <csv>");
  }
  std::ifstream in(opt.reference);
  if (!in) throw IoError("cannot read '" + opt.reference + "'");
  SweepReport ref;
  try {
    ref = read_sweep_csv(in);
  } catch (const std::runtime_error& e) {
    throw IoError(opt.reference + ": " + e.what());
  }
  os << "b,d,N_n,N_r,ref_N_n,ref_N_r,R_n,ref_R_n,rel_err_R_n,R_r,ref_R_r,"
        "R_r_ratio,status\n";
  bool all = true;
  for (const auto& r : ref.rows) {
    if (r.b > opt.b_max) continue;
    const auto c = reliability(net, {r.b, r.d});
    const double en = relative_diff(c.r_non_rework, r.r_non_rework);
    bool ok = c.n_non_rework == r.n_non_rework && c.n_rework == r.n_rework &&
              en <= kReferenceRnTolerance;
    std::string ratio = "nan";
    if (r.r_rework > 0.0) {
      const double q = c.r_rework / r.r_rework;
      ratio = format_sci(q, 4);
      if (r.b <= kReferenceRrMaxB) {
        ok = ok && q >= 1.0 / kReferenceRrFactor && q <= kReferenceRrFactor;
      }
    }
    all = all && ok;
    os << r.b << ',' << r.d << ',' << c.n_non_rework << ',' << c.n_rework
       << ',' << r.n_non_rework << ',' << r.n_rework << ','
       << format_sci(c.r_non_rework) << ',' << format_sci(r.r_non_rework)
       << ',' << format_sci(en, 3) << ',' << format_sci(c.r_rework) << ','
       << format_sci(r.r_rework) << ',' << ratio << ','
       << (ok ? "pass" : "FAIL") << '\n';
  }
  return all;
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.b_max < 1) throw UsageError("--b-max must be at least 1");
  if (opt.samples < 1) throw UsageError("--samples must be at least 1");
  const auto net = load(opt, err);

  std::vector<std::pair<std::string, std::string>> params{
      {"oracle", opt.oracle}, {"b_max", std::to_string(opt.b_max)}};
  std::optional<std::uint64_t> seed;
  if (opt.oracle == "mc") {
    params.emplace_back("samples", std::to_string(opt.samples));
    seed = opt.seed;
  }
  if (opt.oracle == "reference") params.emplace_back("reference", opt.reference);
  const auto manifest = manifest_for(
      "verify", opt, params,
      opt.out.empty() ? std::vector<std::string>{} : std::vector{opt.out},
      seed);

  // Render into memory first so argument errors never leave partial files.
  std::ostringstream body;
  bool ok = true;
  if (opt.oracle == "brute") {
    ok = verify_brute(net, opt.b_max, body, opt.threads);
  } else if (opt.oracle == "physical") {
    verify_physical(net, opt.b_max, body);
  } else if (opt.oracle == "mc") {
    ok = verify_mc(net, opt, body);
  } else {
    ok = verify_reference(net, opt, body);
  }

  Sink sink(opt.out, out);
  write_manifest(sink.stream(), manifest);
  sink.stream() << body.str();
  sink.close();
  if (!ok) err << "verification failed (see report)\n";
  return ok ? kOk : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Exact reliability of serial production lines with one rework loop",
               "rework"};
  app.require_subcommand(1);
  Options opt;

  auto* compute = app.add_subcommand("compute", "Evaluate one (b, d) cell");
  compute->add_option("--network", opt.network, "Network JSON")->required();
  compute->add_option("--b", opt.b, "Input units")->required();
  compute->add_option("--d", opt.d, "Output demand")->required();

  auto* sweep_cmd =
      app.add_subcommand("sweep", "Evaluate every cell 1 <= d <= b <= b-max");
  sweep_cmd->add_option("--network", opt.network, "Network JSON")->required();
  sweep_cmd->add_option("--b-max", opt.b_max, "Largest input")->required();
  sweep_cmd->add_option("--out", opt.out, "Sweep CSV")->required();
  sweep_cmd->add_option("--ratio-against", opt.ratio_against,
                        "Sweep CSV of the higher-defect setting");
  sweep_cmd->add_option("--ratio-out", opt.ratio_out,
                        "Ratio CSV (default: <out>_ratio.csv)");
  sweep_cmd->add_option("--threads", opt.threads, "Worker threads (0 = auto)");

  auto* table = app.add_subcommand("table", "Capacity lookup table");
  table->add_option("--network", opt.network, "Network JSON")->required();
  table->add_option("--max-input", opt.max_input, "Largest input")->required();
  table->add_option("--out", opt.out, "CSV (default: stdout)");

  auto* verify = app.add_subcommand("verify", "Compare against an oracle");
  verify->add_option("--network", opt.network, "Network JSON")->required();
  verify->add_option("--oracle", opt.oracle, "brute | physical | mc | reference")
      ->required()
      ->check(CLI::IsMember({"brute", "physical", "mc", "reference"}));
  verify->add_option("--b-max", opt.b_max, "Largest input")->required();
  verify->add_option("--samples", opt.samples, "Monte Carlo replications");
  verify->add_option("--seed", opt.seed, "Monte Carlo seed");
  verify->add_option("--reference", opt.reference,
                     "Reference sweep CSV for --oracle reference");
  verify->add_option("--out", opt.out, "Report CSV (default: stdout)");
  verify->add_option("--threads", opt.threads, "Worker threads (0 = auto)");

  auto* critique = app.add_subcommand(
      "critique", "Exact reliability vs the independent-marginals formula");
  critique->add_option("--network", opt.network, "Network JSON")->required();
  critique->add_option("--b-max", opt.b_max, "Largest input")->required();
  critique->add_option("--out", opt.out, "Gap CSV (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (compute->parsed()) return cmd_compute(opt, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(opt, out, err);
    if (table->parsed()) return cmd_table(opt, out, err);
    if (verify->parsed()) return cmd_verify(opt, out, err);
    if (critique->parsed()) return cmd_critique(opt, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}

}  // namespace rework::cli
