#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "carma/carma_model.hpp"
#include "carma/fourier_transform.hpp"
#include "carma/mc_study.hpp"
#include "carma/path_simulator.hpp"
#include "carma/sampling_grid.hpp"

namespace carma {

/// Empty cells are monostate (written as "" in CSV, null in JSON).
using Cell = std::variant<std::monostate, double, std::uint64_t>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// 17 significant digits: parses back to the same double.
std::string format_double(double x);

/// Frequency as it appears in file and column names (shortest round-trip form).
std::string omega_tag(double omega);

void write_csv(std::ostream& os, const Table& table);
/// Array of {column: value} records.
void write_json(std::ostream& os, const Table& table);

Table grid_table(const ObservationGrid& grid);

/// t,y and, when `states` is non-empty (row-major N x p), x1..xp.
Table path_table(const SamplePath& path, std::span<const double> states = {},
                 std::size_t p = 0);

Table ft_table(std::span<const FtSample> samples);

/// Grid used by spectral_table: floor(range / step) + 1 points.
std::vector<double> omega_range(double omega_min, double omega_max, double step);

/// omega,f,re_h,im_h
Table spectral_table(const CarmaSpec& spec, double omega_min, double omega_max, double step);

Table qq_table(const std::vector<std::pair<double, double>>& qq);

/// h_max,N,rms_err_<w>...,ratio_<w>...
Table convergence_table(const std::vector<ConvergenceRow>& rows,
                        std::span<const double> frequencies);

/// Creates parent directories, then writes through `body`. Throws IoError.
void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& body);

}  // namespace carma
