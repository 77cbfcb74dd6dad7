#include <gtest/gtest.h>
#include <sys/wait.h>

#include <heckemetro/heckemetro.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;
using heckemetro::Rational;
using nlohmann::json;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  const fs::path d = fs::temp_directory_path() / ("hecke_metro_cli_" + std::string(info->name()) + "_" +
                                                   std::to_string(static_cast<long>(::getpid())));
  fs::create_directories(d);
  return d;
}

/// Runs the CLI through the shell; `env` is prepended verbatim (e.g. "HECKE_METRO_CAP=10").
Run run(const std::string& args, const std::string& env = "") {
  const fs::path d = scratch_dir();
  const fs::path out = d / "stdout", err = d / "stderr";
  const std::string cmd = env + (env.empty() ? "" : " ") + std::string(HECKE_METRO_BIN) + " " + args + " >" +
                          out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  Run r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

bool is_rational_string(const json& v) {
  static const std::regex re("-?[0-9]+(/[0-9]+)?");
  return v.is_string() && std::regex_match(v.get<std::string>(), re);
}

struct GoldenCase {
  std::string file;
  std::string args;
};

const std::vector<GoldenCase> kGoldens{
    {"analyze_symmetric4_long.json", "analyze --family symmetric --n 4 --theta 1/2 --scan long --lmax 3"},
    {"analyze_dihedral6_long_averaged.csv",
     "analyze --family dihedral --n 6 --theta 1/3 --scan long --lmax 2 --averaged --format csv"},
    {"analyze_hypercube3_theta1_random.json", "analyze --family hypercube --n 3 --theta 1 --scan random --lmax 5"},
    {"analyze_symmetric4_short_start.csv",
     "analyze --family symmetric --n 4 --theta 2/5 --scan short --lmax 2 --start 2,1,4,3 --format csv"},
    {"verify_symmetric4.json", "verify --family symmetric --n 4 --theta 2/3"},
    {"bounds_small.csv", "bounds --n 10,20 --theta 1/2 --c 1,2 --lead-n 100 --lead-theta 1/2,0.9 --format csv"},
    {"sample_symmetric3.json", "sample --family symmetric --n 3 --theta 1/2 --seed 1 --samples 20 --emit-samples"},
};

}  // namespace

TEST(Cli, GoldenOutputs) {
  const bool update = std::getenv("HECKE_METRO_UPDATE_GOLDEN") != nullptr;
  for (const auto& g : kGoldens) {
    const auto r = run(g.args);
    EXPECT_EQ(r.exit_code, 0) << g.args << "\n" << r.err;
    const fs::path path = fs::path(HECKE_METRO_GOLDEN_DIR) / g.file;
    if (update) {
      std::ofstream(path, std::ios::binary) << r.out;
      continue;
    }
    ASSERT_TRUE(fs::exists(path)) << path;
    EXPECT_EQ(r.out, slurp(path)) << g.args;
  }
}

TEST(Cli, JsonSchemaAndExactNumbers) {
  for (const std::string args : {"analyze --family symmetric --n 3 --theta 1/2 --scan long --lmax 2",
                                 "analyze --family hypercube --n 4 --theta 3/7 --scan random --lmax 3 --averaged",
                                 "verify --family dihedral --n 5 --theta 1/2",
                                 "bounds --n 10 --theta 1/2 --c 1",
                                 "sample --family dihedral --n 4 --theta 1/2 --seed 3 --samples 100"}) {
    const auto r = run(args);
    ASSERT_EQ(r.exit_code, 0) << args << "\n" << r.err;
    const json j = json::parse(r.out);
    ASSERT_TRUE(j.contains("config")) << args;
    ASSERT_TRUE(j.contains("rows")) << args;
    ASSERT_TRUE(j.contains("provenance")) << args;
    EXPECT_TRUE(j["rows"].is_array());
    EXPECT_TRUE(j["provenance"].is_object());
    for (const auto& [key, v] : j["provenance"].items()) EXPECT_TRUE(v.is_string()) << key;
  }
  const json j = json::parse(run("analyze --family symmetric --n 3 --theta 1/2 --scan long --lmax 2").out);
  for (const auto& row : j["rows"]) {
    for (const char* key : {"chisq_formula", "chisq_oracle", "tv", "tv_bound"}) {
      EXPECT_TRUE(is_rational_string(row[key])) << key << " = " << row[key];
    }
    EXPECT_TRUE(row["match"].get<bool>());
  }
  EXPECT_EQ(j["rows"][0]["chisq_formula"], "97/512");
}

TEST(Cli, AnalyzeMatchesIndependentClosedForms) {
  // Averaged dihedral long scan: theta^{4ln} + (2n - 2) theta^{2ln}.
  const json j = json::parse(run("analyze --family dihedral --n 6 --theta 1/3 --scan long --lmax 3 --averaged").out);
  ASSERT_EQ(j["rows"].size(), 3u);
  const Rational theta(1, 3);
  for (long l = 1; l <= 3; ++l) {
    const Rational expect = heckemetro::ipow(theta, 24 * l) + 10 * heckemetro::ipow(theta, 12 * l);
    EXPECT_EQ(j["rows"][static_cast<std::size_t>(l - 1)]["chisq_formula"], heckemetro::to_string(expect));
    EXPECT_EQ(j["rows"][static_cast<std::size_t>(l - 1)]["chisq_oracle"], heckemetro::to_string(expect));
  }
  // Undeformed random walk on the 3-cube from 0: sum_{j>0} C(3, j) (1 - 2j/3)^{2l}.
  const json h = json::parse(run("analyze --family hypercube --n 3 --theta 1 --scan random --lmax 5").out);
  ASSERT_EQ(h["rows"].size(), 5u);
  for (long l = 1; l <= 5; ++l) {
    const Rational expect = 3 * heckemetro::ipow(Rational(1, 3), 2 * l) + 3 * heckemetro::ipow(Rational(-1, 3), 2 * l) +
                            heckemetro::ipow(Rational(-1), 2 * l);
    EXPECT_EQ(h["rows"][static_cast<std::size_t>(l - 1)]["chisq_formula"], heckemetro::to_string(expect)) << l;
    EXPECT_TRUE(h["rows"][static_cast<std::size_t>(l - 1)]["match"].get<bool>());
  }
}

TEST(Cli, CsvColumns) {
  const auto r = run("analyze --family symmetric --n 4 --theta 1/2 --scan long --lmax 3 --format csv");
  ASSERT_EQ(r.exit_code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "l,chisq_formula,chisq_oracle,tv,tv_bound,match");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_TRUE(line.ends_with(",true")) << line;
  }
  EXPECT_EQ(rows, 3);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("verify --family symmetric --n 4 --theta 2/3").exit_code, 0);
  EXPECT_EQ(run("verify --family dihedral --n 7 --theta 1/2").exit_code, 0);
  EXPECT_EQ(run("verify --family hypercube --n 3 --theta 1/3").exit_code, 0);

  const auto fault = run("verify --family symmetric --n 4 --theta 2/3 --inject-fault");
  EXPECT_EQ(fault.exit_code, 1);
  const json j = json::parse(fault.out);
  EXPECT_EQ(j["status"], "fail");
  bool kernel_check_failed = false;
  for (const auto& row : j["rows"]) {
    if (row["check"].get<std::string>().starts_with("single-site kernel equals left multiplication")) {
      kernel_check_failed = !row["pass"].get<bool>();
    }
  }
  EXPECT_TRUE(kernel_check_failed);

  for (const std::string bad : {"", "analyze", "analyze --family octahedral --n 3 --theta 1/2",
                                "analyze --family symmetric --n 3 --theta 0", "analyze --family symmetric --n 3 --theta 3/2",
                                "analyze --family symmetric --n 3 --theta 1/2 --scan diagonal",
                                "analyze --family symmetric --n 1 --theta 1/2",
                                "analyze --family symmetric --n 3 --theta 1/2 --start 1,1,2",
                                "analyze --family symmetric --n 3 --theta 1/2 --averaged --start 2,1,3",
                                "analyze --family symmetric --n 3 --theta 1/2 --format xml", "bounds --n 10 --theta 1 --c 1",
                                "sample --family symmetric --n 3 --theta abc"}) {
    const auto r = run(bad);
    EXPECT_EQ(r.exit_code, 2) << bad;
    EXPECT_FALSE(r.err.empty()) << bad;
  }
}

TEST(Cli, OutputFileIsWrittenAtomically) {
  const fs::path d = scratch_dir();
  const fs::path target = d / "report.json";
  fs::remove(target);
  const std::string args = "analyze --family symmetric --n 3 --theta 1/2 --scan short --lmax 2";
  const auto r = run(args + " --output " + target.string());
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(slurp(target), run(args).out);
  for (const auto& e : fs::directory_iterator(d)) EXPECT_FALSE(e.path().string().ends_with(".tmp")) << e.path();

  // A failed run leaves an existing file untouched.
  const auto bad = run("analyze --family symmetric --n 3 --theta 0 --output " + target.string());
  EXPECT_EQ(bad.exit_code, 2);
  EXPECT_EQ(slurp(target), run(args).out);
}

TEST(Cli, SameSeedGivesIdenticalFiles) {
  const fs::path d = scratch_dir();
  const std::string args = "sample --family symmetric --n 5 --theta 1/2 --seed 7 --samples 5000 --emit-samples --output ";
  ASSERT_EQ(run(args + (d / "a.json").string()).exit_code, 0);
  ASSERT_EQ(run(args + (d / "b.json").string()).exit_code, 0);
  EXPECT_EQ(slurp(d / "a.json"), slurp(d / "b.json"));
  const auto other = run("sample --family symmetric --n 5 --theta 1/2 --seed 8 --samples 5000 --emit-samples");
  EXPECT_NE(other.out, slurp(d / "a.json"));
}

TEST(Cli, SampleSummary) {
  const json s = json::parse(run("sample --family symmetric --n 5 --theta 1/2 --seed 7 --samples 100000").out);
  const auto& sum = s["summary"];
  EXPECT_EQ(sum["length_mean_exact"], heckemetro::to_string(heckemetro::length_moments(
                                          heckemetro::GroupFamily::symmetric(5), Rational(1, 2))
                                                                   .mean));
  EXPECT_TRUE(sum["length_mean_within_3se"].get<bool>());
  EXPECT_LT(sum["empirical_tv"].get<double>(), 0.015);

  const json h = json::parse(run("sample --family hypercube --n 10 --theta 1 --seed 3 --samples 20000").out);
  // Bernoulli(1/2) coordinates: 4 standard errors is 4 * 0.5 / sqrt(20000) ~ 0.014.
  for (const auto& m : h["summary"]["coordinate_means"]) EXPECT_NEAR(m.get<double>(), 0.5, 0.015);

  const auto csv = run("sample --family symmetric --n 3 --theta 1/2 --seed 1 --samples 10 --emit-samples --format csv");
  EXPECT_EQ(csv.exit_code, 0);
  EXPECT_NE(csv.err.find("length_mean"), std::string::npos) << "summary goes to stderr in CSV mode";
}

TEST(Cli, CapOverride) {
  const std::string args = "analyze --family symmetric --n 4 --theta 1/2 --scan long --lmax 1";
  EXPECT_EQ(run(args).exit_code, 0);
  const auto capped = run(args, "HECKE_METRO_CAP=10");
  EXPECT_EQ(capped.exit_code, 2);
  EXPECT_NE(capped.err.find("cap"), std::string::npos);
  // Float mode beyond the cap evaluates the closed form without the oracle column.
  const auto fl = run("analyze --family symmetric --n 4 --theta 0.5 --scan long --lmax 1 --mode float", "HECKE_METRO_CAP=10");
  EXPECT_EQ(fl.exit_code, 0) << fl.err;
  const json j = json::parse(fl.out);
  EXPECT_NEAR(j["rows"][0]["chisq_formula"].get<double>(), 46241.0 / 262144.0, 1e-15);
  EXPECT_TRUE(j["rows"][0]["chisq_oracle"].is_null());
  EXPECT_EQ(run("verify --family symmetric --n 4 --theta 1/2", "HECKE_METRO_CAP=10").exit_code, 2);
}

TEST(Cli, BoundsIncludeLeadConstantsAndDihedralSingleScan) {
  const json j = json::parse(run("bounds --n 40 --theta 1/2 --c 1").out);
  bool dihedral = false;
  for (const auto& row : j["rows"]) {
    const auto name = row["bound"].get<std::string>();
    if (name == "dihedral_long_scan_one_pass") {
      dihedral = true;
      EXPECT_LT(row["value"].get<double>(), 1e-10);
      EXPECT_DOUBLE_EQ(row["value"].get<double>(), 2.0 * std::pow(0.5, 41) / 0.5);
    }
  }
  EXPECT_TRUE(dihedral);
  ASSERT_EQ(j["lead_constants"].size(), 3u);
  EXPECT_EQ(j["lead_constants"][1]["theta"].get<double>(), 0.9);
  EXPECT_EQ(j["lead_constants"][0]["n"], 100);
  EXPECT_NEAR(j["lead_constants"][0]["random_scan"].get<double>(), 100.0 * std::log(200.0) / 3.0, 1e-9);
}
