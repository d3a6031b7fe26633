#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "carma/rng.hpp"

namespace carma {

/// Strictly increasing observation times on [0, T], times.front() == 0 and
/// times.back() == T, with every gap below the recorded h_max bound.
struct ObservationGrid {
  std::vector<double> times;
  double horizon = 0.0;
  double h_max = 0.0;

  std::size_t size() const { return times.size(); }
};

/// Observation grid joined with a regular mesh. `observation_index[j]` is the
/// position of observation time j inside `times`.
struct FineGrid {
  std::vector<double> times;
  double mesh = 0.0;
  std::vector<std::size_t> observation_index;

  std::size_t size() const { return times.size(); }
};

/// One uniform draw from each half-open cell [i h/2, (i+1) h/2),
/// i = 0 .. 2T/h - 1, with the first draw replaced by 0 and T appended:
/// N = 2T/h + 1 points. Throws ConfigError unless 2T/h is an integer >= 2.
ObservationGrid non_equidistant_grid(double horizon, double h_max, RngStream& rng);

/// Maximum consecutive spacing. Throws std::invalid_argument for < 2 points.
double max_gap(std::span<const double> times);

/// Sorted union of grid.times and {0, mesh, 2 mesh, ...} up to T; a mesh
/// point within 1e-12 of an observation time is dropped in favour of the
/// observation time.
FineGrid joint_refinement(const ObservationGrid& grid, double mesh);

/// N * h_max^3, the quantity that must vanish for the discretized transform
/// to converge.
double convergence_diagnostic(const ObservationGrid& grid);

}  // namespace carma
