// hartogs_geom: batch verification front end.
//
// Exit codes: 0 when every check passes, 1 when a check fails or a
// computation breaks down, 2 on a usage or configuration error.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "hartogs/cli/commands.hpp"

namespace {

using hartogs::json;
namespace cli = hartogs::cli;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::string out;
  std::string format = "json";
  std::optional<double> pullback, tg_residual, energy_drift, metric_fd, T;
  std::optional<std::string> slice;
  std::string trace;
  bool timing = false;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  sub->add_option("--seed", o.seed, "Override the configured seed");
  sub->add_option("--samples", o.samples, "Override the sample count");
  sub->add_option("--out", o.out, "Write the output here instead of stdout");
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--pullback", o.pullback, "Pullback tolerance");
  sub->add_option("--tg_residual", o.tg_residual, "tg_residual tolerance");
  sub->add_option("--energy_drift", o.energy_drift, "Energy drift tolerance");
  sub->add_option("--metric_fd", o.metric_fd, "Jet versus finite-difference metric tolerance");
  sub->add_flag("--timing", o.timing, "Include wall time in the report");
}

cli::RunConfig load_config(const Options& o) {
  json j = json::object();
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw hartogs::InvalidArgument("cannot open " + o.config_path);
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw hartogs::InvalidArgument(std::string("config parse error: ") + e.what());
    }
  }
  cli::RunConfig c = cli::config_from_json(j);
  if (o.seed) c.seed = *o.seed;
  if (o.samples) c.samples = *o.samples;
  if (o.pullback) c.tolerances.pullback = *o.pullback;
  if (o.tg_residual) c.tolerances.tg_residual = *o.tg_residual;
  if (o.energy_drift) c.tolerances.energy_drift = *o.energy_drift;
  if (o.metric_fd) c.tolerances.metric_fd = *o.metric_fd;
  if (o.slice) c.slice = *o.slice;
  if (o.T) c.geodesic.T = *o.T;
  c.validate();
  return c;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw hartogs::InvalidArgument("cannot write " + o.out);
  f << text;
}

std::string render(const Options& o, const cli::Report& rep) {
  if (o.format == "csv") {
    std::ostringstream os;
    rep.write_csv(os);
    return os.str();
  }
  return rep.to_json().dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometry verification for Cartan-Hartogs domains"};
  app.require_subcommand(1);
  Options o;

  auto* immersion = app.add_subcommand("verify-immersion", "Pullback and norm identities of the polydisk immersion");
  auto* tg = app.add_subcommand("verify-tg", "Total geodesy of a built-in slice");
  auto* geo = app.add_subcommand("geodesic", "Integrate one geodesic and write its trace");
  auto* scan = app.add_subcommand("linear-scan", "Linear-support classification over a (mu, r, direction) grid");
  auto* embed = app.add_subcommand("embed-residual", "Truncation residual of the sequence-space embedding");
  for (auto* sub : {immersion, tg, geo, scan, embed}) add_common(sub, o);
  tg->add_option("--slice", o.slice, "polydisk | typeI..typeIV-polydisk | factor-slice | diagonal-slice | identity");
  geo->add_option("--T", o.T, "Integration time");
  geo->add_option("--trace", o.trace, "Also write the CSV trace to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cli::RunConfig cfg;
  try {
    cfg = load_config(o);
  } catch (const hartogs::Error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    cli::Report rep;
    std::optional<hartogs::GeodesicTrace> trace;
    if (immersion->parsed()) {
      rep = cli::cmd_verify_immersion(cfg);
    } else if (tg->parsed()) {
      rep = cli::cmd_verify_tg(cfg, cfg.slice);
    } else if (geo->parsed()) {
      auto [r, t] = cli::cmd_geodesic(cfg);
      rep = std::move(r);
      trace = std::move(t);
    } else if (scan->parsed()) {
      rep = cli::cmd_linear_scan(cfg);
    } else {
      rep = cli::cmd_embed_residual(cfg);
    }
    if (o.timing) rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (trace && !o.trace.empty()) {
      std::ofstream f(o.trace);
      if (!f) throw hartogs::InvalidArgument("cannot write " + o.trace);
      trace->write_csv(f);
    }
    if (trace && o.format == "csv") {
      std::ostringstream os;
      trace->write_csv(os);
      emit(o, os.str());
      std::cerr << "status " << (rep.passed() ? "pass" : "fail") << ", " << hartogs::to_string(trace->status) << '\n';
    } else {
      emit(o, render(o, rep));
    }
    return rep.passed() ? 0 : 1;
  } catch (const hartogs::InvalidArgument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const hartogs::DimensionError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const hartogs::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
