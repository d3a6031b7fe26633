#include "carma/path_simulator.hpp"

#include <cmath>

#include "carma/error.hpp"
#include "carma/linalg.hpp"

namespace carma {

namespace {

// One Euler step exploiting the companion structure of A:
// (A x)_i = x_{i+1} for i < p-1, (A x)_{p-1} = -sum_j a_{p-j} x_j.
inline void euler_step(std::span<const double> a, std::span<double> x, double dt,
                       double dl) {
  const std::size_t p = x.size();
  double last = 0.0;
  for (std::size_t j = 0; j < p; ++j) last -= a[p - 1 - j] * x[j];
  for (std::size_t i = 0; i + 1 < p; ++i) x[i] += dt * x[i + 1];
  x[p - 1] += dt * last + dl;
}

inline double observe(std::span<const double> b, std::span<const double> x) {
  double y = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) y += b[i] * x[i];
  return y;
}

}  // namespace

double burn_in_horizon(const CarmaSpec& spec) {
  return 20.0 / std::abs(spectral_abscissa(spec.a()));
}

StateVector sample_stationary_initial(const CarmaSpec& spec, IncrementSampler& noise,
                                      double mesh, RngStream& rng) {
  if (!(mesh > 0.0)) throw ConfigError("burn-in: mesh must be > 0");
  const double horizon = burn_in_horizon(spec);
  const auto steps = static_cast<std::size_t>(std::ceil(horizon / mesh - 1e-9));
  const double dt = horizon / static_cast<double>(steps);
  StateVector x(spec.a().size(), 0.0);
  for (std::size_t k = 0; k < steps; ++k) euler_step(spec.a(), x, dt, noise(dt, rng));
  return x;
}

StateVector sample_stationary_initial(const CarmaSpec& spec, const DriverSpec& driver,
                                      double mesh, RngStream& rng) {
  IncrementSampler noise(driver);
  return sample_stationary_initial(spec, noise, mesh, rng);
}

FinePath euler_path(const CarmaSpec& spec, IncrementSampler& noise,
                    const std::vector<double>& times, const StateVector& x0,
                    RngStream& rng, bool keep_states) {
  const std::size_t p = spec.a().size();
  if (x0.size() != p) throw std::invalid_argument("euler_path: state size != p");
  if (times.empty()) return {};

  FinePath out;
  out.y.resize(times.size());
  if (keep_states) out.states.resize(times.size() * p);

  StateVector x = x0;
  for (std::size_t k = 0;; ++k) {
    out.y[k] = observe(spec.b(), x);
    if (keep_states) std::copy(x.begin(), x.end(), out.states.begin() + k * p);
    if (k + 1 == times.size()) break;
    const double dt = times[k + 1] - times[k];
    euler_step(spec.a(), x, dt, noise(dt, rng));
  }
  return out;
}

FinePath euler_path(const CarmaSpec& spec, const DriverSpec& driver,
                    const FineGrid& fine, const StateVector& x0, RngStream& rng,
                    bool keep_states) {
  IncrementSampler noise(driver);
  return euler_path(spec, noise, fine.times, x0, rng, keep_states);
}

SamplePath restrict_to_observations(const FineGrid& fine, const FinePath& path,
                                    const ObservationGrid& grid) {
  if (fine.observation_index.size() != grid.size() || path.y.size() != fine.size())
    throw NumericalError("restrict: fine grid does not match the observation grid");
  SamplePath out;
  out.grid = grid;
  out.y.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const std::size_t idx = fine.observation_index[j];
    if (idx >= fine.size() || fine.times[idx] != grid.times[j])
      throw NumericalError("restrict: observation time missing from fine grid");
    out.y[j] = path.y[idx];
  }
  return out;
}

SimulatedPath simulate_path(const CarmaSpec& spec, const DriverSpec& driver,
                            const SimulationSettings& settings, RngStream& rng) {
  SimulatedPath sim;
  ObservationGrid grid = settings.fixed_grid
                             ? *settings.fixed_grid
                             : non_equidistant_grid(settings.horizon, settings.h_max, rng);
  sim.fine = joint_refinement(grid, settings.mesh);

  IncrementSampler noise(driver);
  const StateVector x0 = sample_stationary_initial(spec, noise, settings.mesh, rng);
  sim.fine_path = euler_path(spec, noise, sim.fine.times, x0, rng, settings.keep_states);
  sim.observed = restrict_to_observations(sim.fine, sim.fine_path, grid);
  sim.observed.metadata = {spec.hash(),         driver_tag(driver), rng.master_seed(),
                           rng.stream_index(), settings.mesh,      burn_in_horizon(spec)};
  return sim;
}

}  // namespace carma
