#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;

struct CliRun {
  int code = -1;
  std::string out;
};

/// Runs the CLI with stderr discarded.
CliRun run(const std::string& args) {
  const std::string cmd = std::string("\"") + HARTOGS_GEOM_EXE + "\" " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string config(const std::string& name) { return std::string("--config \"") + HARTOGS_CONFIG_DIR + "/" + name + "\""; }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("hartogs_cli_test_" + std::to_string(::getpid()) + "_" + name);
}

json check(const json& report, const std::string& name) {
  for (const auto& c : report.at("checks"))
    if (c.at("name") == name) return c;
  return json();
}

}  // namespace

TEST(Cli, ImmersionReportEchoesConfigAndPasses) {
  const CliRun r = run("verify-immersion " + config("immersion_type4.json") + " --samples 50");
  ASSERT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("command"), "verify-immersion");
  EXPECT_EQ(j.at("status"), "pass");
  EXPECT_EQ(j.at("config").at("spec").at("base").at("kind"), "IV");
  EXPECT_EQ(j.at("config").at("spec").at("base").at("params"), json::array({5}));
  EXPECT_EQ(j.at("config").at("spec").at("mu"), 0.7);
  EXPECT_EQ(j.at("config").at("seed"), 2);
  EXPECT_EQ(j.at("config").at("samples"), 50);
  for (const auto* name : {"pullback", "norm_identity", "metric_fd"}) EXPECT_EQ(check(j, name).at("status"), "pass") << name;
  EXPECT_FALSE(j.contains("wall_time_s"));
}

TEST(Cli, ReportsAreByteIdenticalAcrossRuns) {
  const std::string args = "verify-immersion " + config("immersion_type1.json") + " --samples 40 --seed 9";
  const CliRun a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const CliRun c = run("verify-immersion " + config("immersion_type1.json") + " --samples 40 --seed 10");
  EXPECT_NE(a.out, c.out);
}

TEST(Cli, SingleSampleAtOriginHasZeroError) {
  const CliRun r = run("verify-immersion --samples 1");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(check(j, "pullback").at("value"), 0.0);
  EXPECT_EQ(check(j, "norm_identity").at("value"), 0.0);
}

TEST(Cli, TimingIsOptIn) {
  const CliRun r = run("verify-immersion --samples 2 --timing");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(json::parse(r.out).contains("wall_time_s"));
}

TEST(Cli, CsvReport) {
  const CliRun r = run("verify-immersion --samples 2 --format csv --pullback 1e-12");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  EXPECT_EQ(header, "name,status,value,relation,tolerance");
  EXPECT_EQ(first.rfind("pullback,pass,", 0), 0u) << first;
  EXPECT_EQ(first.substr(first.size() - 8), ",<,1e-12");
}

TEST(Cli, TotallyGeodesicSlices) {
  for (const auto* name : {"tg_type1_polydisk.json", "tg_factor_slice.json", "tg_diagonal_slice.json"}) {
    const CliRun r = run("verify-tg " + config(name) + " --samples 20");
    ASSERT_EQ(r.code, 0) << name;
    const json j = json::parse(r.out);
    for (const auto* c : {"tg_residual", "confinement", "energy_drift"}) EXPECT_EQ(check(j, c).at("status"), "pass") << name << " " << c;
  }
}

TEST(Cli, SliceOverride) {
  const CliRun r = run("verify-tg " + config("tg_factor_slice.json") + " --samples 5 --slice diagonal-slice");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out).at("config").at("slice"), "diagonal-slice");
  EXPECT_EQ(run("verify-tg " + config("tg_type1_polydisk.json") + " --samples 5 --slice typeIV-polydisk").code, 2);
}

TEST(Cli, GeodesicTraceAndStatus) {
  const auto trace = temp_file("trace.csv");
  const CliRun r = run("geodesic " + config("geodesic_fiber.json") + " --trace \"" + trace.string() + "\"");
  ASSERT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  EXPECT_EQ(check(j, "fiber_confinement").at("status"), "pass");
  EXPECT_EQ(check(j, "energy_drift").at("status"), "pass");
  std::ifstream in(trace);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t,re_z1,im_z1,re_z2,im_z2,re_z3,im_z3,re_w,im_w,energy");
  std::filesystem::remove(trace);

  const CliRun csv = run("geodesic " + config("geodesic_ch2.json") + " --format csv");
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.rfind("t,re_z1,im_z1,re_w,im_w,energy\n", 0), 0u);
}

TEST(Cli, GeodesicBoundaryIsAStatusNotAnError) {
  const CliRun r = run("geodesic " + config("geodesic_ch2.json") + " --T 100");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out).at("details").at("status"), "BoundaryReached");
}

TEST(Cli, LinearScanFlagsOnlyTheHalfExponentBidiskDiagonal) {
  const CliRun r = run("linear-scan " + config("linear_scan.json"));
  ASSERT_EQ(r.code, 1);
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("status"), "fail");
  std::vector<std::string> failed;
  for (const auto& c : j.at("checks"))
    if (c.at("status") == "fail") failed.push_back(c.at("name"));
  EXPECT_EQ(failed, std::vector<std::string>{"mu=0.5 r=2 mixed-equal"});
  EXPECT_EQ(j.at("details").at("records").size(), j.at("checks").size());
}

TEST(Cli, EmbedResidual) {
  const CliRun r = run("embed-residual " + config("embed_residual.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  EXPECT_EQ(check(j, "residual").at("status"), "pass");
  EXPECT_EQ(check(j, "monotone_decrease").at("status"), "pass");
}

TEST(Cli, OutputFile) {
  const auto out = temp_file("report.json");
  const CliRun r = run("embed-residual " + config("embed_residual.json") + " --out \"" + out.string() + "\"");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  EXPECT_EQ(json::parse(in).at("command"), "embed-residual");
  std::filesystem::remove(out);
}

TEST(Cli, UsageAndConfigErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("no-such-command").code, 2);
  EXPECT_EQ(run("verify-immersion --config /nonexistent/file.json").code, 2);
  EXPECT_EQ(run("verify-immersion --format xml").code, 2);
  EXPECT_EQ(run("verify-immersion --samples 0").code, 2);

  const auto bad = temp_file("bad.json");
  {
    std::ofstream f(bad);
    f << R"({"spec": {"base": {"kind": "I", "params": [2, 2]}, "mu": 1}, "bogus": 1})";
  }
  EXPECT_EQ(run("verify-immersion --config \"" + bad.string() + "\"").code, 2);
  {
    std::ofstream f(bad);
    f << R"({"spec": {"base": {"kind": "I", "params": [3, 2]}, "mu": 1}})";
  }
  EXPECT_EQ(run("verify-immersion --config \"" + bad.string() + "\"").code, 2);
  {
    std::ofstream f(bad);
    f << "{ not json";
  }
  EXPECT_EQ(run("verify-immersion --config \"" + bad.string() + "\"").code, 2);
  std::filesystem::remove(bad);
}
