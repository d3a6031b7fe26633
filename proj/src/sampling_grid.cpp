#include "carma/sampling_grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "carma/error.hpp"

namespace carma {

ObservationGrid non_equidistant_grid(double horizon, double h_max, RngStream& rng) {
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw ConfigError("grid: T must be > 0");
  if (!(h_max > 0.0) || !std::isfinite(h_max))
    throw ConfigError("grid: h_max must be > 0");
  const double ratio = 2.0 * horizon / h_max;
  const double cells = std::round(ratio);
  if (std::abs(ratio - cells) > 1e-9 * std::max(1.0, ratio) || cells < 2.0)
    throw ConfigError("grid: 2T/h_max = " + std::to_string(ratio) +
                      " is not an integer >= 2");

  const auto n_cells = static_cast<std::size_t>(cells);
  const double half = 0.5 * h_max;
  ObservationGrid grid;
  grid.horizon = horizon;
  grid.h_max = h_max;
  grid.times.reserve(n_cells + 1);
  grid.times.push_back(0.0);
  rng.uniform();  // cell 0's draw is replaced by the left endpoint
  for (std::size_t i = 1; i < n_cells; ++i)
    grid.times.push_back((static_cast<double>(i) + rng.uniform()) * half);
  grid.times.push_back(horizon);
  return grid;
}

double max_gap(std::span<const double> times) {
  if (times.size() < 2) throw std::invalid_argument("max_gap: fewer than 2 points");
  double best = 0.0;
  for (std::size_t j = 1; j < times.size(); ++j)
    best = std::max(best, times[j] - times[j - 1]);
  return best;
}

FineGrid joint_refinement(const ObservationGrid& grid, double mesh) {
  if (!(mesh > 0.0) || !std::isfinite(mesh))
    throw ConfigError("refinement: mesh must be > 0");
  constexpr double kDuplicate = 1e-12;
  const double horizon = grid.times.empty() ? 0.0 : grid.times.back();
  const auto n_mesh =
      static_cast<std::size_t>(std::floor(horizon / mesh + 1e-9)) + 1;

  FineGrid fine;
  fine.mesh = mesh;
  fine.times.reserve(grid.size() + n_mesh);
  fine.observation_index.reserve(grid.size());

  std::size_t k = 0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.times[j];
    for (; k < n_mesh; ++k) {
      const double t = static_cast<double>(k) * mesh;
      if (t >= x - kDuplicate) break;
      fine.times.push_back(t);
    }
    // Mesh points colliding with x are absorbed by it.
    while (k < n_mesh && std::abs(static_cast<double>(k) * mesh - x) <= kDuplicate) ++k;
    fine.observation_index.push_back(fine.times.size());
    fine.times.push_back(x);
  }
  for (; k < n_mesh; ++k) {
    const double t = static_cast<double>(k) * mesh;
    if (t > horizon + kDuplicate) break;
    fine.times.push_back(t);
  }
  return fine;
}

double convergence_diagnostic(const ObservationGrid& grid) {
  return static_cast<double>(grid.size()) * grid.h_max * grid.h_max * grid.h_max;
}

}  // namespace carma
