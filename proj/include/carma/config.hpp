#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "carma/carma_model.hpp"
#include "carma/levy_drivers.hpp"
#include "json.hpp"

namespace carma {

/// Model coefficients as configured. sigma2 is optional because in Monte
/// Carlo runs it follows from the driver.
struct ModelConfig {
  std::vector<double> a{2.0};
  std::vector<double> b{1.0};
  std::optional<int> p;
  std::optional<int> q;
  std::optional<double> sigma2;

  /// Validated spec with the given variance (or the configured one).
  CarmaSpec spec(std::optional<double> sigma2_override = std::nullopt) const;
  /// Validated spec whose variance is the driver's; rejects a configured
  /// sigma2 that disagrees with it.
  CarmaSpec spec_for(const DriverSpec& driver) const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

struct LadderLevel {
  std::string name;  // t10, t50, t100 or custom
  double horizon = 0.0;
  double h_max = 0.0;
  friend bool operator==(const LadderLevel&, const LadderLevel&) = default;
};

/// The (T, h_max) settings t10, t50, t100.
std::vector<LadderLevel> standard_ladder();

enum class OutputFormat { Csv, Json };

struct RunConfig {
  std::string label;  // preset name; empty -> hash-derived directory name
  ModelConfig model;
  std::vector<DriverSpec> drivers{Brownian{1.0}};
  std::vector<LadderLevel> ladder{{"t50", 50.0, 0.05}};
  double mesh = 0.001;

  // [mc]
  std::size_t paths = 2000;
  std::vector<double> frequencies{0.0, 0.1, 1.0, 10.0};
  double alpha = 0.01;
  bool freeze_grid = false;
  std::uint64_t seed = 1;

  // [spectral]
  double omega_min = -10.0;
  double omega_max = 10.0;
  double omega_step = 0.1;

  // [simulate]
  std::size_t simulate_paths = 1;
  bool write_states = false;

  // [convergence]
  double convergence_horizon = 10.0;
  std::vector<double> h_ladder{0.1, 0.05, 0.025};
  std::size_t convergence_paths = 200;

  // io
  std::string out_dir = "out";
  OutputFormat format = OutputFormat::Csv;
  int threads = 0;  // 0: OpenMP default

  /// Directory name for this configuration: the label, or cfg-<hash>.
  std::string directory_label() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// "paper-car1" or "paper-carma21": the published coefficient sets, all
/// three drivers, the t10/t50/t100 ladder, M = 2000.
RunConfig preset(const std::string& name);

nlohmann::json driver_to_json(const DriverSpec& driver);
DriverSpec driver_from_json(const nlohmann::json& j);

nlohmann::json spec_to_json(const CarmaSpec& spec);
CarmaSpec spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RunConfig& config);
/// Missing keys keep the values of `base`.
RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base = {});

/// Reads a .toml or .json file (JSON if the first non-blank char is '{').
RunConfig load_run_config(const std::string& path, RunConfig base = {});

std::string dump_run_config(const RunConfig& config, OutputFormat format);

}  // namespace carma
