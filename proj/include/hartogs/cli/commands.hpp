#pragma once

// Verification commands behind the hartogs_geom tool. Each command turns a
// RunConfig into a Report of named checks; reports depend only on the config.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hartogs/chart.hpp"
#include "hartogs/domains.hpp"
#include "hartogs/errors.hpp"
#include "hartogs/geodesic.hpp"
#include "hartogs/hartogs.hpp"
#include "hartogs/io.hpp"
#include "hartogs/l2embed.hpp"
#include "hartogs/metric.hpp"
#include "hartogs/parallel.hpp"

namespace hartogs::cli {

/// Bound on the Euclidean distance of a slice-tangent geodesic from its slice.
inline constexpr double kConfinementTolerance = 1e-6;
/// Deviation above which a geodesic is taken to leave its initial complex line.
inline constexpr double kNonlinearThreshold = 1e-5;
inline constexpr double kEmbedResidualTolerance = 1e-10;
/// Residuals at or below this level count as converged in the monotonicity check.
inline constexpr double kResidualFloor = 1e-14;
inline constexpr int kConfinementRuns = 5;
/// Points of a verify-immersion run that also get the finite-difference metric check.
inline constexpr int kMetricFdPoints = 20;
/// Those points are drawn from the shrink-0.5 region, where the
/// finite-difference oracle itself is accurate well below 1e-7.
inline constexpr double kMetricFdShrink = 0.5;

struct Tolerances {
  double pullback = 1e-12;
  double tg_residual = 1e-9;
  double energy_drift = 1e-8;
  double metric_fd = 1e-7;
};

struct GeodesicSetup {
  std::optional<CVector> p0;  ///< default: origin
  std::optional<CVector> v0;  ///< default: unit fiber direction
  double T = 1.0;
};

struct ScanGrid {
  std::vector<double> mu{0.5, 1.0, 2.0};
  std::vector<int> r{1, 2};
  std::vector<std::string> directions{"pure-base", "pure-fiber", "mixed-equal", "mixed-unequal"};
  double T = 0.5;
};

struct RunConfig {
  HartogsSpec spec{DomainSpec::disk(), 1.0};
  std::uint64_t seed = 0;
  int samples = 100;
  double shrink = 0.9;
  Tolerances tolerances;
  Truncation truncation;
  std::string slice = "polydisk";
  std::vector<int> factors{0};
  GeodesicSetup geodesic;
  ScanGrid grid;
  std::optional<CVector> point;  ///< embed-residual point (z, w); default: origin

  void validate() const {
    if (samples < 1) throw InvalidArgument("config: samples must be at least 1");
    if (!(shrink > 0.0 && shrink <= 1.0)) throw InvalidArgument("config: shrink must lie in (0, 1]");
    for (double t : {tolerances.pullback, tolerances.tg_residual, tolerances.energy_drift, tolerances.metric_fd})
      if (!(t > 0.0)) throw InvalidArgument("config: tolerances must be positive");
    truncation.validate();
    if (!(geodesic.T > 0.0) || !(grid.T > 0.0)) throw InvalidArgument("config: T must be positive");
    if (grid.mu.empty() || grid.r.empty() || grid.directions.empty()) throw InvalidArgument("config: scan grid is empty");
    for (double m : grid.mu)
      if (!(m > 0.0)) throw InvalidArgument("config: grid mu must be positive");
    for (int r : grid.r)
      if (r < 1) throw InvalidArgument("config: grid r must be positive");
  }
};

inline json to_json_value(const RunConfig& c) {
  json j;
  j["spec"] = hartogs::to_json_value(c.spec);
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["shrink"] = c.shrink;
  j["tolerances"] = {{"pullback", c.tolerances.pullback},
                     {"tg_residual", c.tolerances.tg_residual},
                     {"energy_drift", c.tolerances.energy_drift},
                     {"metric_fd", c.tolerances.metric_fd}};
  j["truncation"] = hartogs::to_json_value(c.truncation);
  j["slice"] = c.slice;
  j["factors"] = c.factors;
  json g = {{"T", c.geodesic.T}};
  if (c.geodesic.p0) g["p0"] = hartogs::to_json_value(*c.geodesic.p0);
  if (c.geodesic.v0) g["v0"] = hartogs::to_json_value(*c.geodesic.v0);
  j["geodesic"] = g;
  j["grid"] = {{"mu", c.grid.mu}, {"r", c.grid.r}, {"directions", c.grid.directions}, {"T", c.grid.T}};
  if (c.point) j["point"] = hartogs::to_json_value(*c.point);
  return j;
}

inline RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("config: top level must be an object");
  static const std::vector<std::string> known{"spec",  "seed",    "samples",  "shrink", "tolerances", "truncation",
                                              "slice", "factors", "geodesic", "grid",   "point"};
  for (const auto& [key, value] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) throw InvalidArgument("config: unknown key \"" + key + "\"");

  RunConfig c;
  try {
    if (j.contains("spec")) c.spec = hartogs_from_json(j["spec"]);
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("samples")) c.samples = j["samples"].get<int>();
    if (j.contains("shrink")) c.shrink = j["shrink"].get<double>();
    if (j.contains("tolerances")) {
      const auto& t = j["tolerances"];
      if (!t.is_object()) throw InvalidArgument("config: tolerances must be an object");
      for (const auto& [key, value] : t.items()) {
        if (key == "pullback") c.tolerances.pullback = value.get<double>();
        else if (key == "tg_residual") c.tolerances.tg_residual = value.get<double>();
        else if (key == "energy_drift") c.tolerances.energy_drift = value.get<double>();
        else if (key == "metric_fd") c.tolerances.metric_fd = value.get<double>();
        else throw InvalidArgument("config: unknown tolerance \"" + key + "\"");
      }
    }
    if (j.contains("truncation")) c.truncation = truncation_from_json(j["truncation"]);
    if (j.contains("slice")) c.slice = j["slice"].get<std::string>();
    if (j.contains("factors")) c.factors = j["factors"].get<std::vector<int>>();
    if (j.contains("geodesic")) {
      const auto& g = j["geodesic"];
      if (!g.is_object()) throw InvalidArgument("config: geodesic must be an object");
      if (g.contains("p0")) c.geodesic.p0 = cvector_from_json(g["p0"]);
      if (g.contains("v0")) c.geodesic.v0 = cvector_from_json(g["v0"]);
      if (g.contains("T")) c.geodesic.T = g["T"].get<double>();
    }
    if (j.contains("grid")) {
      const auto& g = j["grid"];
      if (!g.is_object()) throw InvalidArgument("config: grid must be an object");
      if (g.contains("mu")) c.grid.mu = g["mu"].get<std::vector<double>>();
      if (g.contains("r")) c.grid.r = g["r"].get<std::vector<int>>();
      if (g.contains("directions")) c.grid.directions = g["directions"].get<std::vector<std::string>>();
      if (g.contains("T")) c.grid.T = g["T"].get<double>();
    }
    if (j.contains("point")) c.point = cvector_from_json(j["point"]);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

enum class CheckStatus { Pass, Fail, Info };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Info: return "info";
  }
  return "?";
}

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::Info;
  double value = 0.0;
  double tolerance = 0.0;
  std::string relation;  ///< "<" or ">" against the tolerance; empty for info
};

struct Report {
  std::string command;
  json config;
  std::vector<Check> checks;
  json details = json::object();
  std::optional<double> wall_time;

  /// Passes when value < tolerance.
  void below(std::string name, double value, double tolerance) {
    checks.push_back({std::move(name), value < tolerance ? CheckStatus::Pass : CheckStatus::Fail, value, tolerance, "<"});
  }
  /// Passes when value > tolerance.
  void above(std::string name, double value, double tolerance) {
    checks.push_back({std::move(name), value > tolerance ? CheckStatus::Pass : CheckStatus::Fail, value, tolerance, ">"});
  }
  void info(std::string name, double value) { checks.push_back({std::move(name), CheckStatus::Info, value, 0.0, ""}); }

  bool passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == CheckStatus::Fail; });
  }

  json to_json() const {
    json j;
    j["command"] = command;
    j["config"] = config;
    j["status"] = passed() ? "pass" : "fail";
    j["checks"] = json::array();
    for (const auto& c : checks) {
      json e = {{"name", c.name}, {"status", to_string(c.status)}, {"value", c.value}};
      if (c.status != CheckStatus::Info) {
        e["tolerance"] = c.tolerance;
        e["relation"] = c.relation;
      }
      j["checks"].push_back(e);
    }
    if (!details.empty()) j["details"] = details;
    if (wall_time) j["wall_time_s"] = *wall_time;
    return j;
  }

  void write_csv(std::ostream& os) const {
    os << "name,status,value,relation,tolerance\n";
    for (const auto& c : checks) {
      os << c.name << ',' << to_string(c.status) << ',' << shortest(c.value) << ',' << c.relation << ',';
      if (c.status != CheckStatus::Info) os << shortest(c.tolerance);
      os << '\n';
    }
  }

  /// Shortest decimal text that reads back as the same double.
  static std::string shortest(double x) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
  }
};

/// Per-sample seed: splitmix64 of the run seed offset by the sample index.
inline std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace detail {

inline std::string format_real(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

inline Report start(const std::string& command, const RunConfig& cfg) {
  cfg.validate();
  Report rep;
  rep.command = command;
  rep.config = to_json_value(cfg);
  return rep;
}

inline double max_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }

inline CVector normalized(CVector v) {
  const double n = norm2(v);
  for (auto& c : v) c /= n;
  return v;
}

}  // namespace detail

/// Directions of the linear-support scan, base components first and fiber
/// last, normalized to unit Euclidean length.
inline CVector scan_direction(const std::string& name, int r) {
  const auto n = static_cast<std::size_t>(r);
  CVector xi(n + 1, 0.0);
  if (name == "pure-base") {
    for (std::size_t j = 0; j < n; ++j) xi[j] = std::polar(1.0, 0.7 * static_cast<double>(j));
  } else if (name == "pure-fiber") {
    xi[n] = 1.0;
  } else if (name == "mixed-equal") {
    for (std::size_t j = 0; j <= n; ++j) xi[j] = std::polar(1.0, 0.3 * static_cast<double>(j));
  } else if (name == "mixed-unequal") {
    for (std::size_t j = 0; j < n; ++j) xi[j] = std::polar(static_cast<double>(j + 1), 0.4 * static_cast<double>(j));
    xi[n] = std::polar(static_cast<double>(r) + 1.5, 0.2);
  } else {
    throw InvalidArgument("unknown scan direction \"" + name + "\"");
  }
  return detail::normalized(std::move(xi));
}

/// Built-in slices: "polydisk" (also "typeI-polydisk", ..., "typeIV-polydisk",
/// which additionally require that base type), "factor-slice" over the
/// configured factors, "diagonal-slice", and "identity".
inline Chart make_chart(const HartogsSpec& spec, const std::string& selector, const std::vector<int>& factors) {
  static const std::vector<std::pair<std::string, DomainKind>> typed{{"typeI-polydisk", DomainKind::TypeI},
                                                                     {"typeII-polydisk", DomainKind::TypeII},
                                                                     {"typeIII-polydisk", DomainKind::TypeIII},
                                                                     {"typeIV-polydisk", DomainKind::TypeIV}};
  for (const auto& [name, kind] : typed)
    if (selector == name) {
      if (spec.base().kind() != kind) throw InvalidArgument("slice \"" + selector + "\" does not match base " + spec.base().name());
      return polydisk_slice(spec);
    }
  if (selector == "polydisk") return polydisk_slice(spec);
  if (selector == "factor-slice") return factor_slice(spec, factors);
  if (selector == "diagonal-slice") return diagonal_slice(spec);
  if (selector == "identity") return identity_chart(spec);
  throw InvalidArgument("unknown slice selector \"" + selector + "\"");
}

/// Pullback Phi_{Omega,mu}(phi(z), w) = Phi_{Delta^r,mu}(z, w) under the
/// standard polydisk embedding, the norm identity N(phi(z)) = prod(1 - |z_j|^2),
/// and jet-versus-finite-difference metric agreement at interior points.
/// Sample 0 is the origin.
inline Report cmd_verify_immersion(const RunConfig& cfg) {
  Report rep = detail::start("verify-immersion", cfg);
  const DomainSpec& base = cfg.spec.base();
  const int r = base.rank();
  const auto phi = product_polydisk_embedding(base);
  const HartogsSpec poly(DomainSpec::polydisk(r), cfg.spec.mu());
  const HartogsPotential pot(cfg.spec);

  struct Sample {
    double pullback = 0.0;
    double norm = 0.0;
    double metric_fd = 0.0;
  };
  const auto results = parallel_map(static_cast<std::size_t>(cfg.samples), [&](std::size_t i) {
    HartogsPoint p{CVector(static_cast<std::size_t>(r), 0.0), 0.0};
    if (i > 0) p = h_sample(poly, cfg.shrink, sample_seed(cfg.seed, i));
    const HartogsPoint image{phi(p.z), p.w};
    Sample s;
    s.pullback = std::abs(potential(cfg.spec, image) - potential(poly, p));
    double prod = 1.0;
    for (const auto& c : p.z) prod *= 1.0 - std::norm(c);
    s.norm = std::abs(generic_norm(base, image.z) - prod);
    if (i < static_cast<std::size_t>(kMetricFdPoints)) {
      HartogsPoint q{CVector(static_cast<std::size_t>(r), 0.0), 0.0};
      if (i > 0) q = h_sample(poly, kMetricFdShrink, sample_seed(cfg.seed ^ 0x6a09e667f3bcc909ULL, i));
      const CVector x = HartogsPoint{phi(q.z), q.w}.coords();
      s.metric_fd = max_abs(metric_matrix(pot, x) - metric_matrix_fd(pot, x));
    }
    return s;
  });

  std::vector<double> pull, norm, fd;
  for (const auto& s : results) {
    pull.push_back(s.pullback);
    norm.push_back(s.norm);
    fd.push_back(s.metric_fd);
  }
  rep.below("pullback", detail::max_of(pull), cfg.tolerances.pullback);
  rep.below("norm_identity", detail::max_of(norm), cfg.tolerances.pullback);
  rep.below("metric_fd", detail::max_of(fd), cfg.tolerances.metric_fd);
  rep.details = {{"rank", r}, {"samples", cfg.samples}};
  return rep;
}

/// A geodesic started tangent to the chart at a seeded chart point with
/// unit speed, and its largest Euclidean distance from the slice.
struct ConfinementRun {
  double deviation = 0.0;
  double energy_drift = 0.0;
  GeodesicStatus status = GeodesicStatus::Completed;
};

inline ConfinementRun confinement_run(const HartogsPotential& pot, const Chart& chart, std::uint64_t seed, double T) {
  const CVector q = chart.sample_param(0.5, seed);
  const CVector p = chart.embedding(q);
  std::mt19937_64 gen(seed ^ 0x2545f4914f6cdd1dULL);
  CVector u(q.size());
  for (auto& c : u) c = uniform_disk(gen);
  if (norm2(u) == 0.0) u.back() = 1.0;
  const CMatrix jac = chart.map().jacobian(q);
  CVector v(p.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t k = 0; k < u.size(); ++k) v[i] += jac(i, k) * u[k];
  const double speed = std::sqrt(metric_product(metric_matrix(pot, p), v, v).real());
  for (auto& c : v) c /= speed;

  const auto trace = geodesic_ivp(pot, p, v, T);
  ConfinementRun run;
  for (const auto& z : trace.positions) run.deviation = std::max(run.deviation, chart.distance(z));
  run.energy_drift = trace.energy_drift();
  run.status = trace.status;
  return run;
}

/// tg_residual at `samples` seeded chart points plus five unit-speed
/// geodesics started tangent to the slice and followed over [0, T].
inline Report cmd_verify_tg(const RunConfig& cfg, const std::string& selector) {
  Report rep = detail::start("verify-tg", cfg);
  rep.config["slice"] = selector;
  const Chart chart = make_chart(cfg.spec, selector, cfg.factors);
  const HartogsPotential pot(cfg.spec);

  const auto residuals = parallel_map(static_cast<std::size_t>(cfg.samples), [&](std::size_t i) {
    return tg_residual(pot, chart, chart.sample_param(cfg.shrink, sample_seed(cfg.seed, i)));
  });
  const auto runs = parallel_map(static_cast<std::size_t>(kConfinementRuns), [&](std::size_t k) {
    return confinement_run(pot, chart, sample_seed(cfg.seed ^ 0x5bd1e995ULL, k), cfg.geodesic.T);
  });

  rep.below("tg_residual", detail::max_of(residuals), cfg.tolerances.tg_residual);
  double dev = 0.0, drift = 0.0;
  json runs_json = json::array();
  for (const auto& run : runs) {
    dev = std::max(dev, run.deviation);
    drift = std::max(drift, run.energy_drift);
    runs_json.push_back({{"deviation", run.deviation}, {"energy_drift", run.energy_drift}, {"status", to_string(run.status)}});
  }
  rep.below("confinement", dev, kConfinementTolerance);
  rep.below("energy_drift", drift, cfg.tolerances.energy_drift);
  rep.details = {{"chart", chart.name()}, {"param_dim", chart.param_dim()}, {"confinement_runs", runs_json}};
  return rep;
}

/// Integrates one geodesic. Reports the energy drift; from a point on the
/// fiber axis with a fiber velocity, confinement to {z = 0}; from the origin
/// of a polydisk-based domain, the distance to the line C v0, checked when
/// line_constraints predicts linear support.
inline std::pair<Report, GeodesicTrace> cmd_geodesic(const RunConfig& cfg) {
  Report rep = detail::start("geodesic", cfg);
  const auto n = static_cast<std::size_t>(cfg.spec.dim());
  CVector p0 = cfg.geodesic.p0.value_or(CVector(n, 0.0));
  CVector v0 = cfg.geodesic.v0.value_or(CVector(n, 0.0));
  if (!cfg.geodesic.v0) v0.back() = 1.0;
  if (p0.size() != n || v0.size() != n) throw InvalidArgument("geodesic: p0 and v0 must have length " + std::to_string(n));
  if (!h_contains(cfg.spec, p0, kGeodesicMargin)) throw InvalidArgument("geodesic: p0 is not an interior point");

  const HartogsPotential pot(cfg.spec);
  GeodesicTrace trace = geodesic_ivp(pot, p0, v0, cfg.geodesic.T);
  rep.below("energy_drift", trace.energy_drift(), cfg.tolerances.energy_drift);

  auto base_zero = [&](const CVector& v) {
    return std::all_of(v.begin(), v.end() - 1, [](const complex& c) { return c == 0.0; });
  };
  if (base_zero(p0) && base_zero(v0)) {
    double worst = 0.0;
    for (const auto& z : trace.positions)
      for (std::size_t i = 0; i + 1 < n; ++i) worst = std::max(worst, std::abs(z[i]));
    rep.below("fiber_confinement", worst, kConfinementTolerance);
  }
  const bool at_origin = std::all_of(p0.begin(), p0.end(), [](const complex& c) { return c == 0.0; });
  if (at_origin && cfg.spec.base().is_polydisk()) {
    const int r = cfg.spec.base().dim();
    const auto verdict = line_constraints(r, cfg.spec.mu(), v0);
    const double n2 = norm2(v0) * norm2(v0);
    double dev = 0.0;
    for (const auto& z : trace.positions) {
      const complex c = dot(z, v0) / n2;
      CVector res(n);
      for (std::size_t i = 0; i < n; ++i) res[i] = z[i] - c * v0[i];
      dev = std::max(dev, norm2(res));
    }
    if (verdict.cls == LinearClass::Impossible) rep.info("line_deviation", dev);
    else rep.below("line_deviation", dev, kConfinementTolerance);
    rep.details["linear_class"] = to_string(verdict.cls);
  }
  rep.details["status"] = to_string(trace.status);
  rep.details["final_time"] = trace.times.back();
  rep.details["states"] = trace.size();
  rep.details["rejected_steps"] = trace.rejected_steps;
  return {std::move(rep), std::move(trace)};
}

/// line_constraints and line_deviation on every (mu, r, direction) cell.
/// A cell passes when the deviation is below 1e-6 for a linear class and
/// above 1e-5 for Impossible.
inline Report cmd_linear_scan(const RunConfig& cfg) {
  Report rep = detail::start("linear-scan", cfg);
  struct Cell {
    double mu;
    int r;
    std::string direction;
  };
  std::vector<Cell> cells;
  for (double mu : cfg.grid.mu)
    for (int r : cfg.grid.r)
      for (const auto& d : cfg.grid.directions) cells.push_back({mu, r, d});

  struct Outcome {
    CVector xi;
    LinearGeodesicVerdict verdict;
    double deviation = 0.0;
  };
  const auto outcomes = parallel_map(cells.size(), [&](std::size_t i) {
    Outcome o;
    o.xi = scan_direction(cells[i].direction, cells[i].r);
    o.verdict = line_constraints(cells[i].r, cells[i].mu, o.xi);
    o.deviation = line_deviation(cells[i].r, cells[i].mu, o.xi, cfg.grid.T);
    return o;
  });

  json records = json::array();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    const auto& o = outcomes[i];
    const std::string name = "mu=" + detail::format_real(c.mu) + " r=" + std::to_string(c.r) + " " + c.direction;
    if (o.verdict.cls == LinearClass::Impossible) rep.above(name, o.deviation, kNonlinearThreshold);
    else rep.below(name, o.deviation, kConfinementTolerance);
    const auto& k = o.verdict.constraints;
    records.push_back({{"mu", c.mu},
                       {"r", c.r},
                       {"direction", c.direction},
                       {"xi", hartogs::to_json_value(o.xi)},
                       {"class", to_string(o.verdict.cls)},
                       {"deviation", o.deviation},
                       {"constraints",
                        {{"v2", k.v2},
                         {"v3_fiber", k.v3_fiber},
                         {"v3_base", k.v3_base},
                         {"muxi_consistent", k.muxi_consistent},
                         {"active_rank", k.active_rank},
                         {"v5_fiber", k.v5_fiber},
                         {"v5_base", k.v5_base},
                         {"fifth_order_consistent", k.fifth_order_consistent},
                         {"v5_fiber_series", k.v5_fiber_series},
                         {"fifth_order_series_consistent", k.fifth_order_series_consistent}}}});
  }
  rep.details["records"] = records;
  return rep;
}

/// Truncations of the convergence table.
inline constexpr std::array<int, 4> kEmbedTable{10, 20, 40, 60};

/// norm_residual at the configured truncation, and a convergence table over
/// k_max = a_max in {10, 20, 40, 60} that must decrease strictly until it
/// reaches the 1e-14 floor.
inline Report cmd_embed_residual(const RunConfig& cfg) {
  Report rep = detail::start("embed-residual", cfg);
  if (!cfg.spec.base().is_polydisk()) throw InvalidArgument("embed-residual: base must be a polydisk");
  const int r = cfg.spec.base().dim();
  const CVector x = cfg.point.value_or(CVector(static_cast<std::size_t>(r + 1), 0.0));
  if (x.size() != static_cast<std::size_t>(r + 1)) throw InvalidArgument("embed-residual: point must have length r + 1");
  if (!h_contains(cfg.spec, x, 0.0)) throw InvalidArgument("embed-residual: point lies outside the domain");
  const CVector z(x.begin(), x.end() - 1);
  const double mu = cfg.spec.mu();

  const auto table = parallel_map(kEmbedTable.size(), [&](std::size_t i) {
    return norm_residual(r, mu, z, x.back(), Truncation{kEmbedTable[i], kEmbedTable[i]});
  });
  rep.below("residual", norm_residual(r, mu, z, x.back(), cfg.truncation), kEmbedResidualTolerance);
  double worst_ratio = 0.0;
  for (std::size_t i = 1; i < table.size(); ++i) {
    if (table[i - 1] <= kResidualFloor && table[i] <= kResidualFloor) continue;
    worst_ratio = std::max(worst_ratio, table[i - 1] > 0.0 ? table[i] / table[i - 1] : 1.0);
  }
  rep.below("monotone_decrease", worst_ratio, 1.0);
  json rows = json::array();
  for (std::size_t i = 0; i < table.size(); ++i) rows.push_back({{"k_max", kEmbedTable[i]}, {"a_max", kEmbedTable[i]}, {"residual", table[i]}});
  rep.details["table"] = rows;
  return rep;
}

}  // namespace hartogs::cli
