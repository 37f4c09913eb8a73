#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "rework/report.hpp"
#include "support.hpp"

using rework::test::data_path;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "rework");
  std::ostringstream out, err;
  const int code = rework::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "rework_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::size_t data_rows(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::size_t n = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("compute prints the cell") {
  const auto r = run({"compute", "--network", data_path("fig1_low.json"), "--b", "1", "--d", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("R_n=4.6588E-09") != std::string::npos);
  CHECK(r.out.find("N_n=1 N_r=1") != std::string::npos);
}

TEST_CASE("usage and config errors") {
  CHECK(run({"compute", "--network", data_path("fig1_low.json"), "--b", "0", "--d", "1"}).code == 2);
  CHECK(run({"compute", "--network", data_path("fig1_low.json"), "--b", "2", "--d", "3"}).code == 2);
  CHECK(run({"compute", "--network", data_path("fig1_low.json"), "--b", "x", "--d", "1"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify", "--network", data_path("fig1_low.json"), "--oracle", "nope", "--b-max", "2"}).code == 2);
  CHECK(run({"verify", "--network", data_path("fig1_low.json"), "--oracle", "reference", "--b-max", "2"}).code == 2);

  const auto missing = run({"compute", "--network", "missing.json", "--b", "1", "--d", "1"});
  CHECK(missing.code == 3);
  CHECK(missing.err.find("missing.json") != std::string::npos);

  const auto bad = scratch("bad.json");
  std::ofstream(bad) << R"({"alpha": 1, "beta": 1, "delta_send": 0, "nodes": []})";
  CHECK(run({"compute", "--network", bad.string(), "--b", "1", "--d", "1"}).code == 3);
}

TEST_CASE("help exits cleanly") {
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("sweep writes a manifest and one row per cell") {
  const auto out = scratch("sweep1.csv");
  const auto r = run({"sweep", "--network", data_path("fig1_low.json"), "--b-max", "1",
                      "--out", out.string()});
  REQUIRE(r.code == 0);
  const auto text = slurp(out);
  CHECK(text.rfind("# tool: rework ", 0) == 0);
  CHECK(text.find("# command: sweep") != std::string::npos);
  CHECK(text.find("b_max=1") != std::string::npos);
  CHECK(data_rows(text) == 1);

  CHECK(run({"sweep", "--network", data_path("fig1_low.json"), "--b-max", "1",
             "--out", "/nonexistent/dir/x.csv"}).code == 4);
}

TEST_CASE("sweep ratio against another report") {
  const auto high = scratch("high.csv");
  const auto low = scratch("low.csv");
  const auto ratio = scratch("ratio.csv");
  REQUIRE(run({"sweep", "--network", data_path("fig1_high.json"), "--b-max", "15",
               "--out", high.string()}).code == 0);
  REQUIRE(run({"sweep", "--network", data_path("fig1_low.json"), "--b-max", "15",
               "--out", low.string(), "--ratio-against", high.string(),
               "--ratio-out", ratio.string(), "--threads", "2"}).code == 0);
  CHECK(data_rows(slurp(low)) == 120);
  std::ifstream in(low);
  const auto report = rework::read_sweep_csv(in);
  CHECK(report.cell(4, 1).n_non_rework == 35);

  const auto text = slurp(ratio);
  CHECK(data_rows(text) == 120);
  const auto pos = text.find("\n15,15,");
  REQUIRE(pos != std::string::npos);
  std::istringstream row(text.substr(pos + 1));
  std::string f;
  for (int i = 0; i < 5; ++i) std::getline(row, f, ',');
  CHECK(std::stod(f) == doctest::Approx(1181.42449).epsilon(5e-3));

  CHECK(run({"sweep", "--network", data_path("fig1_low.json"), "--b-max", "2",
             "--out", scratch("x.csv").string(), "--ratio-against", "/nonexistent.csv"}).code == 4);
  CHECK(run({"sweep", "--network", data_path("fig1_low.json"), "--b-max", "3",
             "--out", scratch("x.csv").string(), "--ratio-against", high.string()}).code == 2);
}

TEST_CASE("table emits the lookup grid") {
  const auto r = run({"table", "--network", data_path("fig1_low.json"), "--max-input", "0"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("input,node_1,node_2,node_3,node_4\n0,0.010000,0.010000,0.005000,0.005000\n") !=
        std::string::npos);
}

TEST_CASE("verify brute passes") {
  const auto r = run({"verify", "--network", data_path("fig1_high.json"), "--oracle", "brute",
                      "--b-max", "6"});
  CHECK(r.code == 0);
  CHECK(data_rows(r.out) == 21);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("verify physical is informational") {
  const auto r = run({"verify", "--network", data_path("fig1_low.json"), "--oracle", "physical",
                      "--b-max", "3"});
  CHECK(r.code == 0);
  CHECK(data_rows(r.out) == 6);
}

TEST_CASE("verify mc is reproducible") {
  const std::vector<std::string> args{"verify", "--network", data_path("fig1_low.json"),
                                      "--oracle", "mc", "--b-max", "2", "--samples", "1",
                                      "--seed", "7"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.out == b.out);
  CHECK(a.out.find("# seed: 7") != std::string::npos);
}

TEST_CASE("verify reference reports per-cell ratios and fails on a mismatch") {
  const auto ok = run({"verify", "--network", data_path("fig1_low.json"), "--oracle", "reference",
                       "--reference", data_path("published_low.csv"), "--b-max", "15"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("R_r_ratio") != std::string::npos);
  CHECK(data_rows(ok.out) == 120);

  const auto wrong = run({"verify", "--network", data_path("fig1_high.json"), "--oracle",
                          "reference", "--reference", data_path("published_low.csv"),
                          "--b-max", "3"});
  CHECK(wrong.code == 1);
  CHECK(wrong.out.find("FAIL") != std::string::npos);
}

TEST_CASE("critique writes the gap table") {
  const auto out = scratch("gap.csv");
  REQUIRE(run({"critique", "--network", data_path("fig1_high.json"), "--b-max", "3",
               "--out", out.string()}).code == 0);
  const auto text = slurp(out);
  CHECK(text.find("b,d,correct,song_value,gap\n") != std::string::npos);
  CHECK(data_rows(text) == 6);
}
