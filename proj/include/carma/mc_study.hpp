#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "carma/carma_model.hpp"
#include "carma/fourier_transform.hpp"
#include "carma/goodness_of_fit.hpp"
#include "carma/levy_drivers.hpp"

namespace carma {

struct MCConfig {
  CarmaSpec spec;
  DriverSpec driver;
  double horizon = 0.0;
  double h_max = 0.0;
  double mesh = 0.001;
  std::size_t paths = 2000;
  std::vector<double> frequencies{0.0, 0.1, 1.0, 10.0};
  std::uint64_t master_seed = 0;
  /// Path m draws from stream (master_seed, stream_base + m).
  std::uint64_t stream_base = 0;
  /// Reuse one grid realization for every path.
  bool freeze_grid = false;
};

/// Throws ConfigError on M < 2, non-finite frequencies, mesh > h_max, an
/// invalid driver, or a spec variance that disagrees with the driver's.
void validate(const MCConfig& config);

/// M x F transform values, row-major by path.
struct SampleMatrix {
  std::size_t paths = 0;
  std::vector<double> frequencies;
  std::vector<FtSample> values;

  const FtSample& at(std::size_t path, std::size_t freq) const {
    return values[path * frequencies.size() + freq];
  }
  std::vector<Complex> column(std::size_t freq) const;
};

/// Transform values at every configured frequency for `paths` independent
/// paths; each path has its own stream, grid and burn-in. Paths run in
/// parallel (OpenMP); results do not depend on the thread count.
SampleMatrix run_mc(const MCConfig& config);

/// Single-threaded reference for run_mc; bitwise identical output.
SampleMatrix run_mc_serial(const MCConfig& config);

/// Transform values of path m (the per-path kernel shared by both drivers).
std::vector<FtSample> simulate_row(const MCConfig& config, std::size_t m,
                                   const std::optional<ObservationGrid>& frozen_grid);

/// Grid used for every path when config.freeze_grid is set.
ObservationGrid frozen_grid(const MCConfig& config);

struct GofEntry {
  std::string statistic;  // re, im, mod2, mod2_mean, zero, zero_chisq
  ScalarLaw law;
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  std::optional<double> ks_d;
  std::optional<double> ks_critical;
  std::optional<double> z;  // mean checks only
  bool pass = false;
};

struct SuiteReport {
  double omega = 0.0;
  std::vector<GofEntry> entries;
  bool all_pass() const;
};

/// KS tests of the samples at `omega` against the limit laws (Re, Im, |.|^2
/// and a mean check for omega > 0; value and squared standardized value for
/// omega = 0). Throws ConfigError for omega < 0.
SuiteReport distribution_suite(std::span<const Complex> samples, const CarmaSpec& spec,
                               double omega, double alpha = 0.01);

/// The values a suite entry tests: re, im, mod2 = |.|^2, zero = Re and
/// zero_chisq = Re^2. Throws ConfigError for other names.
std::vector<double> statistic_values(std::span<const Complex> samples,
                                     const std::string& statistic);

struct CorrelationPair {
  std::string a;
  std::string b;
  std::optional<double> corr;  // empty if either coordinate has zero variance
};

struct CorrelationReport {
  std::vector<std::string> labels;  // re(w), im(w) for each w > 0
  std::vector<std::vector<std::optional<double>>> matrix;
  std::vector<CorrelationPair> tested;  // distinct w, plus Re-vs-Im at one w
  double standard_error = 0.0;          // 1 / sqrt(M)
  std::optional<double> max_abs;        // over `tested`
};

/// Pairwise correlations among the Re/Im coordinates at positive
/// frequencies. Throws ConfigError with fewer than two positive frequencies.
CorrelationReport cross_frequency_independence(const SampleMatrix& samples);

struct CovarianceCheck {
  double horizon = 0.0;
  double omega = 0.0;
  double theoretical = 0.0;
  double empirical = 0.0;
  double standard_error = 0.0;
  double z = 0.0;
  double theoretical_as_printed = 0.0;
  double z_as_printed = 0.0;
  bool pass = false;  // |z| <= 4
};

/// Sample mean of |T_T(w)|^2 against sigma2 |H(w)|^2 + K(T, w, -w)/T.
/// Requires a Brownian driver.
CovarianceCheck covariance_check(const MCConfig& config, const SampleMatrix& samples,
                                 double omega);
CovarianceCheck covariance_check(const MCConfig& config, double omega);

struct ConvergenceSettings {
  CarmaSpec spec;
  DriverSpec driver;
  double horizon = 10.0;
  std::vector<double> h_ladder{0.1, 0.05, 0.025};
  double mesh = 0.001;
  std::size_t paths = 200;
  std::vector<double> frequencies{0.0, 1.0};
  std::uint64_t master_seed = 0;
};

struct ConvergenceRow {
  double h_max = 0.0;
  std::size_t n_points = 0;
  double n_h3 = 0.0;
  std::vector<double> rms;                  // per frequency
  std::vector<std::optional<double>> ratio;  // rms(previous h) / rms(this h)
};

/// RMS over paths of |T_T - fine oracle| for each h. Each level uses its own
/// block of streams. Throws ConfigError unless the ladder strictly decreases
/// and mesh < min h.
std::vector<ConvergenceRow> convergence_study(const ConvergenceSettings& settings);

struct MCReport {
  double horizon = 0.0;
  double h_max = 0.0;
  double mesh = 0.0;
  std::size_t paths = 0;
  std::size_t n_points = 0;
  double n_h3 = 0.0;
  double alpha = 0.01;
  std::uint64_t master_seed = 0;
  std::string driver;
  std::vector<SuiteReport> suites;
  std::optional<CorrelationReport> correlations;
  std::vector<CovarianceCheck> covariance;
  std::vector<ConvergenceRow> convergence;
};

/// Distribution suite per frequency, correlations when there are >= 2
/// positive frequencies, covariance checks when the driver is Brownian.
MCReport build_report(const MCConfig& config, const SampleMatrix& samples,
                      double alpha = 0.01);

}  // namespace carma
