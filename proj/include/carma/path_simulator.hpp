#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "carma/carma_model.hpp"
#include "carma/levy_drivers.hpp"
#include "carma/rng.hpp"
#include "carma/sampling_grid.hpp"

namespace carma {

using StateVector = std::vector<double>;

/// Euler output on a fine grid. `states` is row-major (times x p) and only
/// filled when requested.
struct FinePath {
  std::vector<double> y;
  std::vector<double> states;
};

struct PathMetadata {
  std::uint64_t spec_hash = 0;
  std::string driver;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  double mesh = 0.0;
  double burn_in = 0.0;
};

/// CARMA values at the observation times.
struct SamplePath {
  ObservationGrid grid;
  std::vector<double> y;
  PathMetadata metadata;
};

/// T_b = 20 / |max Re root of a(z)|, so the slowest mode is damped by e^{-20}.
double burn_in_horizon(const CarmaSpec& spec);

/// Euler evolution from the zero state over [-T_b, 0] on a regular grid of
/// spacing <= mesh; approximates a draw from the stationary state law.
StateVector sample_stationary_initial(const CarmaSpec& spec, IncrementSampler& noise,
                                      double mesh, RngStream& rng);
StateVector sample_stationary_initial(const CarmaSpec& spec, const DriverSpec& driver,
                                      double mesh, RngStream& rng);

/// X_{k+1} = X_k + dt_k A X_k + e dL_k, Y_k = b^T X_k on the fine grid.
FinePath euler_path(const CarmaSpec& spec, IncrementSampler& noise,
                    const std::vector<double>& times, const StateVector& x0,
                    RngStream& rng, bool keep_states = false);
FinePath euler_path(const CarmaSpec& spec, const DriverSpec& driver,
                    const FineGrid& fine, const StateVector& x0, RngStream& rng,
                    bool keep_states = false);

/// Exact lookup of the observation times inside the fine path (no
/// interpolation). Throws NumericalError if an observation time is missing.
SamplePath restrict_to_observations(const FineGrid& fine, const FinePath& path,
                                    const ObservationGrid& grid);

struct SimulationSettings {
  double horizon = 0.0;
  double h_max = 0.0;
  double mesh = 0.001;
  /// Use this grid instead of drawing one from the stream.
  std::optional<ObservationGrid> fixed_grid;
  bool keep_states = false;
};

struct SimulatedPath {
  SamplePath observed;
  FineGrid fine;
  FinePath fine_path;
};

/// Grid, burn-in, Euler, restriction; the stream is consumed in that order.
SimulatedPath simulate_path(const CarmaSpec& spec, const DriverSpec& driver,
                            const SimulationSettings& settings, RngStream& rng);

}  // namespace carma
