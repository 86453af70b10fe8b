#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "kappa_rup/cli.hpp"

namespace cli = kappa_rup::cli;

namespace {

template <class T>
void add_override(CLI::App& app, const std::string& flag, std::optional<T>& target,
          const std::string& help) {
  app.add_option_function<T>(flag, [&target](const T& v) { target = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kappa-deformed uncertainty toolkit: verification, tables and curve data"};
  app.set_version_flag("--version", cli::kVersion);

  cli::Overrides o;
  add_override(app, "--command", o.command, "verify | table | plot-psi | bound-alpha | maxent-demo");
  app.add_option_function<std::vector<double>>(
         "--kappa", [&o](const std::vector<double>& v) { o.kappas = v; },
         "Comma-separated kappa values")
      ->delimiter(',');
  add_override(app, "--zeta", o.zeta, "Inverse squared momentum scale (natural units)");
  add_override(app, "--hbar", o.hbar, "Action unit for the states (natural units)");
  add_override(app, "--grid-min", o.grid_min, "Lower end of the plot grid");
  add_override(app, "--grid-max", o.grid_max, "Upper end of the plot grid");
  add_override(app, "--grid-n", o.grid_n, "Number of plot grid points");
  add_override(app, "--tol", o.tol, "Tolerance override (all checks for verify)");
  add_override(app, "--config", o.config_path, "JSON config file (fallback: $KAPPA_RUP_CONFIG)");
  add_override(app, "--out", o.out, "Output path (default: stdout)");
  add_override(app, "--format", o.format, "csv | json");
  add_override(app, "--alpha-inverse", o.alpha_inverse, "Inverse fine-structure constant");
  add_override(app, "--alpha-inverse-uncertainty", o.alpha_inverse_uncertainty,
       "One-sigma uncertainty on the inverse fine-structure constant");
  add_override(app, "--characteristic-momentum", o.characteristic_momentum_mev,
       "1/sqrt(zeta) for the bound, in MeV/c");
  add_override(app, "--hbar-mev-fm", o.hbar_mev_fm, "hbar c in MeV fm for the bound");
  add_override(app, "--electron-mass", o.electron_mass_mev, "Electron mass in MeV/c^2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitConfig;
  }

  cli::CommandResult result;
  cli::RunConfig cfg;
  try {
    cfg = cli::resolve(o);
    result = cli::run(cfg);
  } catch (const kappa_rup::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return cli::kExitConfig;
  } catch (const kappa_rup::DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return cli::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitFailure;
  }

  std::cerr << result.diagnostics;
  if (!result.output.empty()) {
    if (cfg.out.empty()) {
      std::cout << result.output;
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      file << result.output;
      if (!file) {
        std::cerr << "error: cannot write '" << cfg.out << "'\n";
        return cli::kExitConfig;
      }
    }
  }
  return result.exit_code;
}
