// carma-spectral: spectral | simulate | mc | covcheck | convergence

#include <omp.h>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "carma/commands.hpp"
#include "carma/config.hpp"
#include "carma/error.hpp"

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kNumerical = 3, kIo = 4 };

struct Options {
  std::string config_file;
  std::string preset;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> format;
  std::optional<std::size_t> paths;
  std::vector<std::string> ladder;
  std::vector<std::string> drivers;
  bool dump_config = false;
};

carma::RunConfig resolve(const Options& o) {
  carma::RunConfig c = o.preset.empty() ? carma::RunConfig{} : carma::preset(o.preset);
  if (!o.config_file.empty()) c = carma::load_run_config(o.config_file, c);
  if (o.out) c.out_dir = *o.out;
  if (o.seed) c.seed = *o.seed;
  if (o.format) c.format = *o.format == "json" ? carma::OutputFormat::Json : carma::OutputFormat::Csv;
  if (o.paths) c.paths = *o.paths;
  if (!o.ladder.empty()) {
    nlohmann::json names = o.ladder;
    c = carma::run_config_from_json({{"grid", {{"ladder", names}}}}, c);
  }
  if (!o.drivers.empty()) {
    c.drivers.clear();
    for (const auto& d : o.drivers) c.drivers.push_back(carma::driver_from_json({{"type", d}}));
  }
  if (o.threads) {
    c.threads = *o.threads;
  } else if (const char* env = std::getenv("CARMA_SPECTRAL_THREADS")) {
    try {
      c.threads = std::stoi(env);
    } catch (const std::exception&) {
      throw carma::ConfigError("CARMA_SPECTRAL_THREADS must be an integer");
    }
  }
  if (c.threads < 0) throw carma::ConfigError("threads must be >= 0");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate Levy-driven CARMA processes on irregular grids and check the limit "
               "laws of their truncated Fourier transform."};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config_file, "TOML or JSON run configuration");
  app.add_option("--preset", o.preset, "paper-car1 | paper-carma21")
      ->check(CLI::IsMember({"paper-car1", "paper-carma21"}));
  app.add_option("--out", o.out, "output directory");
  app.add_option("--seed", o.seed, "master seed");
  app.add_option("--threads", o.threads, "OpenMP threads (default: $CARMA_SPECTRAL_THREADS)");
  app.add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--paths", o.paths, "Monte Carlo path count M");
  app.add_option("--ladder", o.ladder, "ladder levels, e.g. t10 t50 t100");
  app.add_option("--driver", o.drivers, "brownian | vg | poisson2 | zero (default parameters)");
  app.add_flag("--dump-config", o.dump_config,
               "print the resolved configuration (in --format; TOML for csv) and exit");

  const std::vector<std::pair<std::string, std::string>> commands{
      {"spectral", "spectral density and transfer function over an omega range"},
      {"simulate", "simulate paths and write path_<m> files"},
      {"mc", "Monte Carlo study with goodness-of-fit report and QQ data"},
      {"covcheck", "finite-T covariance formula check (Brownian driver)"},
      {"convergence", "RMS error against the fine-grid oracle along an h ladder"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    const carma::RunConfig config = resolve(o);
    if (o.dump_config) {
      std::cout << carma::dump_run_config(config, config.format);
      return kOk;
    }
    if (config.threads > 0) omp_set_num_threads(config.threads);

    const std::string cmd = app.get_subcommands().front()->get_name();
    carma::CommandResult result;
    if (cmd == "spectral") result = carma::cmd_spectral(config, std::cout);
    else if (cmd == "simulate") result = carma::cmd_simulate(config, std::cout);
    else if (cmd == "mc") result = carma::cmd_mc(config, std::cout);
    else if (cmd == "covcheck") result = carma::cmd_covcheck(config, std::cout);
    else result = carma::cmd_convergence(config, std::cout);
    return kOk;
  } catch (const carma::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const carma::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const carma::IoError& e) {
    std::cerr << "i/o failure: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}
