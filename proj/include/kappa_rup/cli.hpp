#pragma once

// Batch commands behind the kappa_rup executable. Each command takes a fully
// resolved RunConfig and returns the emitted text plus an exit code, so the
// commands can be exercised without spawning a process.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 verification or
// solver failure.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>
#include <nlohmann/json.hpp>

#include "kappa_rup/coherent_states.hpp"
#include "kappa_rup/deformed_algebra.hpp"
#include "kappa_rup/errors.hpp"
#include "kappa_rup/kappa_math.hpp"
#include "kappa_rup/kinematics.hpp"
#include "kappa_rup/maxent.hpp"
#include "kappa_rup/phenomenology.hpp"
#include "kappa_rup/report.hpp"

namespace kappa_rup::cli {

inline constexpr const char* kToolName = "kappa_rup";
inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kConfigEnvVar = "KAPPA_RUP_CONFIG";

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitFailure = 2;

enum class Command { verify, table, plot_psi, bound_alpha, maxent_demo };
enum class Format { csv, json };

inline const char* to_string(Command c) {
  switch (c) {
    case Command::verify: return "verify";
    case Command::table: return "table";
    case Command::plot_psi: return "plot-psi";
    case Command::bound_alpha: return "bound-alpha";
    case Command::maxent_demo: return "maxent-demo";
  }
  return "";
}

inline Command parse_command(const std::string& s) {
  for (Command c : {Command::verify, Command::table, Command::plot_psi, Command::bound_alpha,
                    Command::maxent_demo}) {
    if (s == to_string(c)) return c;
  }
  throw ConfigError("unknown command '" + s +
                    "' (expected verify, table, plot-psi, bound-alpha or maxent-demo)");
}

inline const char* to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

inline Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw ConfigError("unknown format '" + s + "' (expected csv or json)");
}

struct MaxEntSettings {
  std::vector<double> energies{0.0, 1.0, 2.0, 3.0, 4.0};
  double mean_energy = 1.2;
  double kappa = 0.2;
};

struct RunConfig {
  Command command = Command::verify;
  /// Empty means "command default"; resolve() fills it in.
  std::vector<double> kappas;
  double zeta = 1.0;
  double hbar = 1.0;
  double grid_min = -5.0;
  double grid_max = 5.0;
  int grid_n = 201;
  /// Unset means "command default": per-check tolerances for verify,
  /// quadrature rel_tol 1e-10 for table, solver tol 1e-12 for maxent-demo.
  std::optional<double> tol;
  std::string out;
  std::optional<Format> format;
  PhenoConfig pheno;
  MaxEntSettings maxent;
};

/// Command-line values; set fields override the config file.
struct Overrides {
  std::optional<std::string> command;
  std::optional<std::vector<double>> kappas;
  std::optional<double> zeta;
  std::optional<double> hbar;
  std::optional<double> grid_min;
  std::optional<double> grid_max;
  std::optional<int> grid_n;
  std::optional<double> tol;
  std::optional<std::string> config_path;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<double> alpha_inverse;
  std::optional<double> alpha_inverse_uncertainty;
  std::optional<double> characteristic_momentum_mev;
  std::optional<double> hbar_mev_fm;
  std::optional<double> electron_mass_mev;
};

inline std::vector<double> default_kappas(Command c) {
  switch (c) {
    case Command::verify: return {0.05, 0.1, 0.3, 0.6};
    case Command::table: return {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.65};
    case Command::plot_psi: return {0.0, 0.2, 0.4, 0.6};
    default: return {};
  }
}

inline Format default_format(Command c) {
  return c == Command::table || c == Command::plot_psi ? Format::csv : Format::json;
}

// ---------------------------------------------------------------------------
// Configuration

namespace detail {

inline double json_number(const nlohmann::json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return j.get<double>();
}

inline std::vector<double> json_number_list(const nlohmann::json& j, const std::string& key) {
  if (j.is_number()) return {j.get<double>()};
  if (!j.is_array()) throw ConfigError("config key '" + key + "' must be a number or array");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(json_number(v, key));
  return out;
}

inline void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> known,
                           const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw ConfigError("unknown config key '" + where + it.key() + "'");
  }
}

}  // namespace detail

/// Applies the keys of a config JSON object on top of `cfg`.
inline void apply_json(RunConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config file must contain a JSON object");
  detail::reject_unknown(j,
                         {"command", "kappa", "zeta", "hbar", "grid", "tol", "out", "format",
                          "phenomenology", "maxent"},
                         "");
  if (j.contains("command")) {
    if (!j["command"].is_string()) throw ConfigError("config key 'command' must be a string");
    cfg.command = parse_command(j["command"].get<std::string>());
  }
  if (j.contains("kappa")) cfg.kappas = detail::json_number_list(j["kappa"], "kappa");
  if (j.contains("zeta")) cfg.zeta = detail::json_number(j["zeta"], "zeta");
  if (j.contains("hbar")) cfg.hbar = detail::json_number(j["hbar"], "hbar");
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    if (!g.is_object()) throw ConfigError("config key 'grid' must be an object");
    detail::reject_unknown(g, {"min", "max", "n"}, "grid.");
    if (g.contains("min")) cfg.grid_min = detail::json_number(g["min"], "grid.min");
    if (g.contains("max")) cfg.grid_max = detail::json_number(g["max"], "grid.max");
    if (g.contains("n")) {
      if (!g["n"].is_number_integer()) throw ConfigError("config key 'grid.n' must be an integer");
      cfg.grid_n = g["n"].get<int>();
    }
  }
  if (j.contains("tol")) cfg.tol = detail::json_number(j["tol"], "tol");
  if (j.contains("out")) {
    if (!j["out"].is_string()) throw ConfigError("config key 'out' must be a string");
    cfg.out = j["out"].get<std::string>();
  }
  if (j.contains("format")) {
    if (!j["format"].is_string()) throw ConfigError("config key 'format' must be a string");
    cfg.format = parse_format(j["format"].get<std::string>());
  }
  if (j.contains("phenomenology")) {
    const auto& p = j["phenomenology"];
    if (!p.is_object()) throw ConfigError("config key 'phenomenology' must be an object");
    detail::reject_unknown(p,
                           {"alpha_inverse", "alpha_inverse_uncertainty",
                            "characteristic_momentum_mev", "hbar_mev_fm", "c",
                            "electron_mass_mev"},
                           "phenomenology.");
    cfg.pheno = pheno_config_from_json(p);
  }
  if (j.contains("maxent")) {
    const auto& m = j["maxent"];
    if (!m.is_object()) throw ConfigError("config key 'maxent' must be an object");
    detail::reject_unknown(m, {"energies", "mean_energy", "kappa"}, "maxent.");
    if (m.contains("energies")) {
      cfg.maxent.energies = detail::json_number_list(m["energies"], "maxent.energies");
    }
    if (m.contains("mean_energy")) {
      cfg.maxent.mean_energy = detail::json_number(m["mean_energy"], "maxent.mean_energy");
    }
    if (m.contains("kappa")) cfg.maxent.kappa = detail::json_number(m["kappa"], "maxent.kappa");
  }
}

inline nlohmann::json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

/// Defaults, then the config file (--config or $KAPPA_RUP_CONFIG), then flags.
/// Command defaults are filled in and the result validated.
inline RunConfig resolve(const Overrides& o, const char* env_config = std::getenv(kConfigEnvVar)) {
  RunConfig cfg;
  std::optional<std::string> path = o.config_path;
  if (!path && env_config != nullptr && *env_config != '\0') path = env_config;
  if (path) apply_json(cfg, read_config_file(*path));

  if (o.command) cfg.command = parse_command(*o.command);
  if (o.kappas) cfg.kappas = *o.kappas;
  if (o.zeta) cfg.zeta = *o.zeta;
  if (o.hbar) cfg.hbar = *o.hbar;
  if (o.grid_min) cfg.grid_min = *o.grid_min;
  if (o.grid_max) cfg.grid_max = *o.grid_max;
  if (o.grid_n) cfg.grid_n = *o.grid_n;
  if (o.tol) cfg.tol = *o.tol;
  if (o.out) cfg.out = *o.out;
  if (o.format) cfg.format = parse_format(*o.format);
  if (o.alpha_inverse) cfg.pheno.alpha_inverse = *o.alpha_inverse;
  if (o.alpha_inverse_uncertainty) cfg.pheno.alpha_inverse_uncertainty = *o.alpha_inverse_uncertainty;
  if (o.characteristic_momentum_mev) {
    cfg.pheno.characteristic_momentum = units::mev_per_c(*o.characteristic_momentum_mev);
  }
  if (o.hbar_mev_fm) cfg.pheno.hbar = units::mev_fm_per_c(*o.hbar_mev_fm);
  if (o.electron_mass_mev) cfg.pheno.electron_mass = units::mev_per_c2(*o.electron_mass_mev);

  if (cfg.kappas.empty()) cfg.kappas = default_kappas(cfg.command);
  if (!cfg.format) cfg.format = default_format(cfg.command);

  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(name) + " must be positive");
  };
  positive(cfg.zeta, "zeta");
  positive(cfg.hbar, "hbar");
  if (cfg.tol) positive(*cfg.tol, "tol");
  for (double k : cfg.kappas) {
    if (!std::isfinite(k)) throw ConfigError("kappa values must be finite");
  }
  cfg.pheno.validate();

  switch (cfg.command) {
    case Command::verify:
      for (double k : cfg.kappas) {
        if (!(k >= 0.0 && k < KappaParameter::kMomentSafeLimit)) {
          throw ConfigError("verify requires every kappa in [0, 2/3) (moments diverge otherwise), got " +
                            report::format_double(k));
        }
      }
      break;
    case Command::plot_psi:
      if (!(cfg.grid_min < cfg.grid_max) || !std::isfinite(cfg.grid_min) ||
          !std::isfinite(cfg.grid_max)) {
        throw ConfigError("grid requires finite grid-min < grid-max");
      }
      if (cfg.grid_n < 2) throw ConfigError("grid-n must be at least 2");
      for (double k : cfg.kappas) {
        if (!(k >= 0.0 && k < 1.0)) throw ConfigError("plot-psi requires every kappa in [0, 1)");
      }
      break;
    case Command::maxent_demo:
      if (cfg.kappas.size() > 1) throw ConfigError("maxent-demo takes a single kappa");
      if (cfg.kappas.size() == 1) cfg.maxent.kappa = cfg.kappas.front();
      cfg.kappas.clear();
      if (!(cfg.maxent.kappa >= 0.0 && cfg.maxent.kappa < 1.0)) {
        throw ConfigError("maxent kappa must lie in [0, 1)");
      }
      try {
        MaxEntProblem{cfg.maxent.energies, cfg.maxent.mean_energy,
                      KappaParameter(cfg.maxent.kappa)}
            .validate();
      } catch (const DomainError& e) {
        throw ConfigError(e.what());
      }
      if (cfg.tol && !(*cfg.tol >= 1e-12 && *cfg.tol <= 1e-4)) {
        throw ConfigError("maxent-demo tol must lie in [1e-12, 1e-4]");
      }
      break;
    case Command::table:
      if (cfg.tol && !(*cfg.tol >= 1e-12 && *cfg.tol <= 1e-3)) {
        throw ConfigError("table tol must lie in [1e-12, 1e-3]");
      }
      break;
    case Command::bound_alpha:
      cfg.kappas.clear();
      break;
  }
  return cfg;
}

/// The full resolved configuration, as recorded in every output header.
inline nlohmann::json to_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["command"] = to_string(cfg.command);
  j["kappa"] = cfg.kappas;
  j["zeta"] = cfg.zeta;
  j["hbar"] = cfg.hbar;
  j["grid"] = {{"min", cfg.grid_min}, {"max", cfg.grid_max}, {"n", cfg.grid_n}};
  j["tol"] = cfg.tol ? nlohmann::json(*cfg.tol) : nlohmann::json("default");
  j["out"] = cfg.out;
  j["format"] = to_string(cfg.format.value_or(default_format(cfg.command)));
  j["phenomenology"] = kappa_rup::to_json(cfg.pheno);
  j["maxent"] = {{"energies", cfg.maxent.energies},
                 {"mean_energy", cfg.maxent.mean_energy},
                 {"kappa", cfg.maxent.kappa}};
  return j;
}

inline nlohmann::json metadata(const RunConfig& cfg) {
  return {{"tool", kToolName},
          {"version", kVersion},
          {"command", to_string(cfg.command)},
          {"config", to_json(cfg)}};
}

// ---------------------------------------------------------------------------
// Commands

struct CommandResult {
  int exit_code = kExitOk;
  std::string output;
  /// Human-readable notes for stderr (failing checks, solver diagnostics).
  std::string diagnostics;
};

namespace detail {

inline std::string json_document(const RunConfig& cfg, nlohmann::json result) {
  return report::to_json_text({{"metadata", metadata(cfg)}, {"result", std::move(result)}});
}

}  // namespace detail

/// One named check of the verification suite.
struct Check {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  /// "<=" when measured must not exceed tolerance, ">=" for lower bounds.
  std::string comparison = "<=";
};

namespace detail {

inline Check make_check(std::string name, double measured, double tolerance, bool lower_bound) {
  Check c;
  c.name = std::move(name);
  c.measured = measured;
  c.tolerance = tolerance;
  c.comparison = lower_bound ? ">=" : "<=";
  c.passed = std::isfinite(measured) && (lower_bound ? measured >= tolerance : measured <= tolerance);
  return c;
}

inline std::string label(const char* what, double kappa) {
  return std::string(what) + "[kappa=" + report::format_short(kappa) + "]";
}

inline std::string label(const char* what, double kappa, double zeta) {
  return std::string(what) + "[kappa=" + report::format_short(kappa) +
         ",zeta=" + report::format_short(zeta) + "]";
}

/// Smallest ratio r(n) / r(2n) over successive doublings.
inline double min_refinement_ratio(const std::function<double(std::size_t)>& residual,
                                   std::size_t n0, int doublings) {
  double prev = residual(n0);
  double worst = HUGE_VAL;
  std::size_t n = n0;
  for (int i = 0; i < doublings; ++i) {
    n = 2 * n - 1;
    const double next = residual(n);
    worst = std::min(worst, prev / next);
    prev = next;
  }
  return worst;
}

/// Boltzmann distribution with the inverse temperature fixed by the mean,
/// solved independently of maxent_solve.
inline std::vector<double> gibbs_distribution(const std::vector<double>& energies, double mean) {
  auto weights = [&](double beta) {
    const double e0 = *std::min_element(energies.begin(), energies.end());
    std::vector<double> w(energies.size());
    double z = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) z += (w[i] = std::exp(-beta * (energies[i] - e0)));
    for (double& x : w) x /= z;
    return w;
  };
  auto excess = [&](double beta) {
    const auto w = weights(beta);
    double m = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) m += w[i] * energies[i];
    return m - mean;
  };
  boost::math::tools::eps_tolerance<double> stop(std::numeric_limits<double>::digits - 1);
  std::uintmax_t iters = 200;
  const auto [lo, hi] = boost::math::tools::toms748_solve(excess, -50.0, 50.0, stop, iters);
  return weights(0.5 * (lo + hi));
}

}  // namespace detail

/// Runs every verification suite and reports one entry per check.
inline std::vector<Check> run_checks(const RunConfig& cfg) {
  std::vector<Check> checks;
  auto tol = [&](double fallback) { return cfg.tol.value_or(fallback); };
  auto add = [&](std::string name, double measured, double fallback, bool lower = false) {
    checks.push_back(detail::make_check(std::move(name), measured, tol(fallback), lower));
  };
  auto guarded = [&](const std::string& name, double fallback, const std::function<double()>& fn,
                     bool lower = false) {
    double measured = std::nan("");
    try {
      measured = fn();
    } catch (const std::exception&) {
      // Non-finite measurement marks the check as failed.
    }
    add(name, measured, fallback, lower);
  };

  const double zetas[] = {0.5 * cfg.zeta, cfg.zeta, 2.0 * cfg.zeta};

  for (double kv : cfg.kappas) {
    const KappaParameter kappa(kv);
    double products[3] = {};
    for (int iz = 0; iz < 3; ++iz) {
      const StateSpec spec(kappa, zetas[iz], cfg.hbar);
      guarded(detail::label("normalization", kv, zetas[iz]), 1e-8,
              [&] { return std::abs(quadrature_moment(0, spec) - 1.0); });
      guarded(detail::label("moment_agreement", kv, zetas[iz]), 1e-6,
              [&] { return moment_report(spec).max_rel_discrepancy; });
      products[iz] = delta_x(spec) * delta_p(spec);
    }
    const double half_hbar_f = 0.5 * cfg.hbar * f_expectation(kappa);
    add(detail::label("saturation_identity", kv), std::abs(products[1] / half_hbar_f - 1.0), 1e-12);
    double spread = 0.0;
    for (double p : products) spread = std::max(spread, std::abs(p / products[1] - 1.0));
    add(detail::label("zeta_independence", kv), spread, 1e-12);
    guarded(detail::label("f_expectation_quadrature", kv), 1e-6, [&] {
      const StateSpec spec(kappa, cfg.zeta, cfg.hbar);
      return std::abs(quadrature_f_expectation(spec) / f_expectation(kappa) - 1.0);
    });

    const StateSpec spec(kappa, cfg.zeta, cfg.hbar);
    const double dx = delta_x(spec);
    const double dp = delta_p(spec);
    auto worst_ode = [&](const DeformationProfile& profile) {
      double worst = 0.0;
      for (int i = 0; i < 200; ++i) {
        const double p = (-5.0 + 10.0 * i / 199.0) / std::sqrt(cfg.zeta);
        const auto r = ode_residual(p, kappa, cfg.zeta, dx, dp, cfg.hbar, profile);
        worst = std::max(worst, std::abs(r.normalized));
      }
      return worst;
    };
    add(detail::label("ode_residual", kv), worst_ode(DeformationProfile::canonical(kappa, cfg.zeta)),
        1e-9);
    add(detail::label("ode_residual_general_family", kv),
        worst_ode(DeformationProfile::general(kappa, cfg.zeta, dx, dp, cfg.hbar, 0.05)), 1e-9);
    if (!kappa.classical()) {
      add(detail::label("ode_residual_unit_profile_rejected", kv),
          worst_ode(DeformationProfile::unit()), 1e-3, true);
    }

    const double half_width = 20.0 / std::sqrt(cfg.zeta);
    guarded(detail::label("annihilation_convergence", kv), 12.0, [&] {
      return detail::min_refinement_ratio(
          [&](std::size_t n) {
            return annihilation_residual(spec, GridShape{-half_width, half_width, n});
          },
          201, 3);
    }, true);
    guarded(detail::label("commutator_convergence", kv), 12.0, [&] {
      return detail::min_refinement_ratio(
          [&](std::size_t n) {
            const auto g = GridFunction::sample(-half_width, half_width, n,
                                                [&](double p) { return Complex(psi(p, spec)); });
            return commutator_residual(g, kappa, cfg.zeta, cfg.hbar);
          },
          201, 3);
    }, true);
  }

  double kin_error = 0.0;
  double kin_spread = 0.0;
  for (double v : {0.1, 0.5, 0.9}) {
    const double gamma = 1.0 / std::sqrt((1.0 - v) * (1.0 + v));
    std::optional<PhysicalKinematics> first;
    for (double kv : {0.1, 0.3, 0.7}) {
      const auto r = physical_map(ParticleFrame(1.0, 1.0, KappaParameter(kv)), v);
      kin_error = std::max({kin_error, std::abs(r.momentum / (gamma * v) - 1.0),
                            std::abs(r.energy / gamma - 1.0)});
      if (!first) first = r;
      kin_spread = std::max({kin_spread, std::abs(r.momentum / first->momentum - 1.0),
                             std::abs(r.energy / first->energy - 1.0)});
    }
  }
  add("kinematics_lorentz", kin_error, 1e-12);
  add("kinematics_kappa_independence", kin_spread, 1e-12);

  const std::vector<double> levels{0.0, 1.0, 2.0, 3.0, 4.0};
  guarded("maxent_gibbs", 1e-10, [&] {
    const auto sol = maxent_solve({levels, 1.2, KappaParameter(0.0)});
    const auto gibbs = detail::gibbs_distribution(levels, 1.2);
    double worst = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      worst = std::max(worst, std::abs(sol.distribution[i] - gibbs[i]));
    }
    return worst;
  });
  guarded("maxent_kkt[kappa=0.2]", 1e-10,
          [&] { return maxent_solve({levels, 1.2, KappaParameter(0.2)}).kkt_residual; });
  return checks;
}

inline CommandResult cmd_verify(const RunConfig& cfg) {
  const auto checks = run_checks(cfg);
  CommandResult res;
  nlohmann::json list = nlohmann::json::array();
  std::vector<std::string> failed;
  for (const auto& c : checks) {
    list.push_back({{"check_name", c.name},
                    {"status", c.passed ? "pass" : "fail"},
                    {"measured", c.measured},
                    {"tolerance", c.tolerance},
                    {"comparison", c.comparison}});
    if (!c.passed) failed.push_back(c.name);
  }
  for (const auto& name : failed) res.diagnostics += "check failed: " + name + "\n";
  res.exit_code = failed.empty() ? kExitOk : kExitFailure;

  if (cfg.format == Format::csv) {
    report::CsvTable t(metadata(cfg), {"check_name", "status", "measured", "tolerance", "comparison"});
    for (const auto& c : checks) {
      t.add_row({c.name, c.passed ? "pass" : "fail", report::CsvTable::cell(c.measured),
                 report::CsvTable::cell(c.tolerance), c.comparison});
    }
    res.output = t.str();
  } else {
    res.output = detail::json_document(
        cfg, {{"checks", list},
              {"passed", failed.empty()},
              {"n_checks", checks.size()},
              {"n_failed", failed.size()}});
  }
  return res;
}

struct TableRow {
  double kappa = 0.0;
  std::string status = "ok";
  double N = NAN, p2_closed = NAN, p2_quad = NAN, delta_p = NAN, delta_x = NAN;
  double F_closed = NAN, F_quad = NAN, dxdp_over_halfhbar = NAN;
};

inline TableRow table_row(double kv, const RunConfig& cfg) {
  TableRow row;
  row.kappa = kv;
  try {
    const StateSpec spec(KappaParameter(kv), cfg.zeta, cfg.hbar);
    const double rel_tol = cfg.tol.value_or(1e-10);
    row.N = normalization_constant(spec);
    row.p2_closed = second_moment(spec);
    row.delta_p = delta_p(spec);
    row.delta_x = delta_x(spec);
    row.F_closed = f_expectation(spec.kappa);
    row.dxdp_over_halfhbar = row.delta_x * row.delta_p / (0.5 * cfg.hbar);
    row.p2_quad = quadrature_moment(2, spec, rel_tol);
    row.F_quad = quadrature_f_expectation(spec, rel_tol);
  } catch (const DivergenceError&) {
    row = TableRow{kv, "divergent"};
  } catch (const DomainError&) {
    row = TableRow{kv, "domain_error"};
  } catch (const ConvergenceError&) {
    row.status = "quadrature_inaccurate";
  }
  return row;
}

inline CommandResult cmd_table(const RunConfig& cfg) {
  std::vector<TableRow> rows;
  for (double k : cfg.kappas) rows.push_back(table_row(k, cfg));
  const std::vector<std::string> columns{"kappa",   "N",       "p2_closed", "p2_quad",
                                         "delta_p", "delta_x", "F_closed",  "F_quad",
                                         "dxdp_over_halfhbar", "status"};
  CommandResult res;
  if (cfg.format == Format::csv) {
    report::CsvTable t(metadata(cfg), columns);
    for (const auto& r : rows) {
      using report::CsvTable;
      t.add_row({CsvTable::cell(r.kappa), CsvTable::cell(r.N), CsvTable::cell(r.p2_closed),
                 CsvTable::cell(r.p2_quad), CsvTable::cell(r.delta_p), CsvTable::cell(r.delta_x),
                 CsvTable::cell(r.F_closed), CsvTable::cell(r.F_quad),
                 CsvTable::cell(r.dxdp_over_halfhbar), r.status});
    }
    res.output = t.str();
  } else {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& r : rows) {
      list.push_back({{"kappa", r.kappa}, {"N", r.N}, {"p2_closed", r.p2_closed},
                      {"p2_quad", r.p2_quad}, {"delta_p", r.delta_p}, {"delta_x", r.delta_x},
                      {"F_closed", r.F_closed}, {"F_quad", r.F_quad},
                      {"dxdp_over_halfhbar", r.dxdp_over_halfhbar}, {"status", r.status}});
    }
    res.output = detail::json_document(cfg, {{"rows", list}});
  }
  return res;
}

inline CommandResult cmd_plot_psi(const RunConfig& cfg) {
  std::vector<StateSpec> specs;
  std::vector<std::string> columns{"p"};
  for (std::size_t i = 0; i < cfg.kappas.size(); ++i) {
    specs.emplace_back(KappaParameter(cfg.kappas[i]), cfg.zeta, cfg.hbar);
    columns.push_back("psi_k" + std::to_string(i));
  }
  const int n = cfg.grid_n;
  auto point = [&](int i) {
    return i == n - 1 ? cfg.grid_max
                      : cfg.grid_min + (cfg.grid_max - cfg.grid_min) * i / (n - 1);
  };
  CommandResult res;
  if (cfg.format == Format::csv) {
    report::CsvTable t(metadata(cfg), columns);
    for (int i = 0; i < n; ++i) {
      const double p = point(i);
      std::vector<std::string> cells{report::CsvTable::cell(p)};
      for (const auto& s : specs) cells.push_back(report::CsvTable::cell(psi(p, s)));
      t.add_row(std::move(cells));
    }
    res.output = t.str();
  } else {
    nlohmann::json grid = nlohmann::json::array();
    nlohmann::json curves = nlohmann::json::array();
    for (int i = 0; i < n; ++i) grid.push_back(point(i));
    for (std::size_t k = 0; k < specs.size(); ++k) {
      nlohmann::json values = nlohmann::json::array();
      for (int i = 0; i < n; ++i) values.push_back(psi(point(i), specs[k]));
      curves.push_back({{"column", columns[k + 1]}, {"kappa", cfg.kappas[k]}, {"psi", values}});
    }
    res.output = detail::json_document(cfg, {{"p", grid}, {"curves", curves}});
  }
  return res;
}

inline CommandResult cmd_bound_alpha(const RunConfig& cfg) {
  const KappaBound b = kappa_bound(cfg.pheno);
  nlohmann::json result = {
      {"alpha_inverse", cfg.pheno.alpha_inverse},
      {"alpha_inverse_uncertainty", cfg.pheno.alpha_inverse_uncertainty},
      {"alpha", b.alpha},
      {"delta_alpha_exp", b.delta_alpha_exp},
      {"characteristic_momentum_mev", cfg.pheno.characteristic_momentum.value()},
      {"hbar_mev_fm", cfg.pheno.hbar.value()},
      {"bohr_radius_fm", b.bohr_radius.value()},
      {"bound_kappa_sqrt_zeta", b.bound_on_kappa_sqrt_zeta.value()},
      {"bound_kappa_sqrt_zeta_unit", "(MeV/c)^-1"},
      {"bound_kappa", b.bound_on_kappa},
      {"zeta_fixing", "characteristic_momentum"},
      {"method", "leading-order inversion of |delta alpha_kappa| < delta alpha_exp "
                 "(implementer choice; only the order of magnitude is meaningful)"}};
  CommandResult res;
  if (cfg.format == Format::csv) {
    report::CsvTable t(metadata(cfg), {"quantity", "value"});
    for (auto it = result.begin(); it != result.end(); ++it) {
      if (it->is_number()) t.add_row({it.key(), report::CsvTable::cell(it->get<double>())});
    }
    res.output = t.str();
  } else {
    res.output = detail::json_document(cfg, result);
  }
  return res;
}

inline CommandResult cmd_maxent_demo(const RunConfig& cfg) {
  const MaxEntProblem problem{cfg.maxent.energies, cfg.maxent.mean_energy,
                              KappaParameter(cfg.maxent.kappa)};
  CommandResult res;
  MaxEntSolution sol;
  try {
    sol = maxent_solve(problem, cfg.tol.value_or(1e-12));
  } catch (const ConvergenceError& e) {
    res.exit_code = kExitFailure;
    res.diagnostics = std::string(e.what()) + "\n";
    return res;
  }
  const KappaExponentialFit fit = fit_kappa_exponential(sol, problem.energies, problem.kappa);

  if (cfg.format == Format::csv) {
    report::CsvTable t(metadata(cfg), {"energy", "probability", "fit"});
    for (std::size_t i = 0; i < problem.energies.size(); ++i) {
      const double e = problem.energies[i];
      t.add_row({report::CsvTable::cell(e), report::CsvTable::cell(sol.distribution[i]),
                 report::CsvTable::cell(fit.amplitude *
                                        kappa_exp(-fit.beta_fit * e, problem.kappa))});
    }
    res.output = t.str();
  } else {
    res.output = detail::json_document(
        cfg, {{"problem",
               {{"energies", problem.energies},
                {"mean_energy", problem.mean_energy},
                {"kappa", problem.kappa.value()}}},
              {"solution",
               {{"distribution", sol.distribution},
                {"normalization_multiplier", sol.normalization_multiplier},
                {"energy_multiplier", sol.energy_multiplier},
                {"entropy", sol.entropy},
                {"kkt_residual", sol.kkt_residual},
                {"iterations", sol.iterations},
                {"temperature", sol.temperature}}},
              {"fit",
               {{"amplitude", fit.amplitude},
                {"beta_fit", fit.beta_fit},
                {"max_residual", fit.max_residual}}}});
  }
  return res;
}

inline CommandResult run(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::verify: return cmd_verify(cfg);
    case Command::table: return cmd_table(cfg);
    case Command::plot_psi: return cmd_plot_psi(cfg);
    case Command::bound_alpha: return cmd_bound_alpha(cfg);
    case Command::maxent_demo: return cmd_maxent_demo(cfg);
  }
  return {kExitConfig, "", "unknown command\n"};
}

}  // namespace kappa_rup::cli
