// ns1d: command-line front end. See README.md for the config keys.
#include <iostream>
#include <string>
#include <variant>

#include <CLI11.hpp>

#include "ns1d/cli_io.hpp"

namespace {

ns1d::RunConfig load_run_config(const std::string& path, const std::string& outputs, const char* command) {
  ns1d::Config cfg = ns1d::parse_config(path);
  auto* run = std::get_if<ns1d::RunConfig>(&cfg);
  if (!run) throw ns1d::ConfigError(std::string(command) + " expects a config without sweep_axis");
  if (!outputs.empty()) run->outputs = outputs;
  return *run;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Staggered-grid solver and monitors for 1D compressible Navier-Stokes with density-dependent viscosity"};
  app.require_subcommand(1);

  std::string config_path, outputs;
  auto* run = app.add_subcommand("run", "integrate one configuration and write its outputs");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("--outputs", outputs, "override the outputs directory");

  auto* sweep = app.add_subcommand("sweep", "run every value of sweep_axis concurrently (NS1D_THREADS caps threads)");
  sweep->add_option("config", config_path, "config file with sweep_axis and sweep_values")->required();
  sweep->add_option("--outputs", outputs, "override the outputs directory");

  auto* conv = app.add_subcommand("convergence", "L1 self-convergence of rho over convergence_levels");
  conv->add_option("config", config_path, "config file")->required();
  conv->add_option("--outputs", outputs, "override the outputs directory");

  std::vector<double> a_values{0.75, 1.0, 1.5, 2.0};
  std::size_t family = 1000;
  std::uint64_t seed = 0;
  auto* ckn = app.add_subcommand("ckn-check", "weighted interpolation inequality checks");
  ckn->add_option("--a", a_values, "Hardy exponent(s), each > 1/2");
  ckn->add_option("--family", family, "size of the constant-probe family")->check(CLI::PositiveNumber);
  ckn->add_option("--seed", seed, "seed of the random Fourier test function");

  double alpha = 0.0;
  auto* alpha_cmd = app.add_subcommand("alpha-check", "admissibility of the weight exponent alpha");
  alpha_cmd->add_option("alpha", alpha, "exponent")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ns1d::kExitOk : ns1d::kExitConfig;
  }

  try {
    if (*run) return ns1d::cmd_run(load_run_config(config_path, outputs, "run"), std::cout);
    if (*conv) return ns1d::cmd_convergence(load_run_config(config_path, outputs, "convergence"), std::cout);
    if (*sweep) {
      ns1d::Config cfg = ns1d::parse_config(config_path);
      auto* s = std::get_if<ns1d::SweepConfig>(&cfg);
      if (!s) throw ns1d::ConfigError("sweep expects sweep_axis and sweep_values in the config");
      if (!outputs.empty()) s->base.outputs = outputs;
      return ns1d::cmd_sweep(*s, std::cout);
    }
    if (*ckn) {
      for (double a : a_values)
        if (!(a > 0.5)) throw ns1d::ConfigError("--a values must exceed 1/2");
      return ns1d::cmd_ckn_check(a_values, family, seed, std::cout);
    }
    if (*alpha_cmd) return ns1d::cmd_alpha_check(alpha, std::cout);
  } catch (const ns1d::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return ns1d::kExitConfig;
  } catch (const ns1d::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return ns1d::kExitConfig;
  } catch (const ns1d::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return ns1d::kExitConfig;
  } catch (const ns1d::QuadratureError& e) {
    std::cerr << "quadrature error: " << e.what() << '\n';
    return ns1d::kExitViolation;
  }
  return ns1d::kExitOk;
}
