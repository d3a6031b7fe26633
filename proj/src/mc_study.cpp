#include "carma/mc_study.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include "carma/error.hpp"
#include "carma/path_simulator.hpp"

namespace carma {

namespace {

constexpr std::uint64_t kFrozenGridStream = 1ull << 63;

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
};

Moments moments(std::span<const double> x) {
  Moments m;
  if (x.empty()) return m;
  for (double v : x) m.mean += v;
  m.mean /= static_cast<double>(x.size());
  if (x.size() < 2) return m;
  double ss = 0.0;
  for (double v : x) ss += (v - m.mean) * (v - m.mean);
  m.variance = ss / static_cast<double>(x.size() - 1);
  return m;
}

std::optional<double> correlation(std::span<const double> x, std::span<const double> y) {
  const Moments mx = moments(x);
  const Moments my = moments(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx.mean) * (y[i] - my.mean);
    sxx += (x[i] - mx.mean) * (x[i] - mx.mean);
    syy += (y[i] - my.mean) * (y[i] - my.mean);
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

GofEntry ks_entry(std::string name, std::span<const double> x, const ScalarLaw& law,
                  double alpha) {
  GofEntry e;
  e.statistic = std::move(name);
  e.law = law;
  e.n = x.size();
  const Moments m = moments(x);
  e.mean = m.mean;
  e.variance = m.variance;
  e.ks_d = ks_statistic(x, law.cdf());
  e.ks_critical = ks_critical(alpha, x.size());
  e.pass = *e.ks_d <= *e.ks_critical;
  return e;
}

std::string coordinate_label(const char* part, double omega) {
  std::ostringstream os;
  os << part << '(' << omega << ')';
  return os.str();
}

std::size_t grid_points(double horizon, double h_max) {
  return static_cast<std::size_t>(std::llround(2.0 * horizon / h_max)) + 1;
}

}  // namespace

void validate(const MCConfig& config) {
  if (config.paths < 2) throw ConfigError("mc: M must be >= 2");
  if (!(config.horizon > 0.0)) throw ConfigError("mc: T must be > 0");
  if (!(config.h_max > 0.0)) throw ConfigError("mc: h_max must be > 0");
  if (!(config.mesh > 0.0) || config.mesh > config.h_max)
    throw ConfigError("mc: mesh must be in (0, h_max]");
  if (config.frequencies.empty()) throw ConfigError("mc: no frequencies");
  for (double w : config.frequencies)
    if (!std::isfinite(w)) throw ConfigError("mc: non-finite frequency");
  validate(config.driver);
  if (!std::holds_alternative<ZeroDriver>(config.driver)) {
    const double rate = variance_rate(config.driver);
    if (std::abs(rate - config.spec.sigma2()) > 1e-12 * rate) {
      std::ostringstream os;
      os << "mc: model sigma2 = " << config.spec.sigma2()
         << " disagrees with the driver variance " << rate;
      throw ConfigError(os.str());
    }
  }
}

std::vector<Complex> SampleMatrix::column(std::size_t freq) const {
  std::vector<Complex> out(paths);
  for (std::size_t m = 0; m < paths; ++m) out[m] = at(m, freq).value;
  return out;
}

ObservationGrid frozen_grid(const MCConfig& config) {
  RngStream rng(config.master_seed, kFrozenGridStream | config.stream_base);
  return non_equidistant_grid(config.horizon, config.h_max, rng);
}

std::vector<FtSample> simulate_row(const MCConfig& config, std::size_t m,
                                   const std::optional<ObservationGrid>& frozen) {
  RngStream rng(config.master_seed, config.stream_base + m);
  SimulationSettings settings;
  settings.horizon = config.horizon;
  settings.h_max = config.h_max;
  settings.mesh = config.mesh;
  settings.fixed_grid = frozen;
  const SimulatedPath sim = simulate_path(config.spec, config.driver, settings, rng);

  std::vector<FtSample> row;
  row.reserve(config.frequencies.size());
  for (double w : config.frequencies) row.push_back(truncated_ft(sim.observed, w));
  return row;
}

SampleMatrix run_mc_serial(const MCConfig& config) {
  validate(config);
  std::optional<ObservationGrid> grid;
  if (config.freeze_grid) grid = frozen_grid(config);

  SampleMatrix out{config.paths, config.frequencies, {}};
  out.values.reserve(config.paths * config.frequencies.size());
  for (std::size_t m = 0; m < config.paths; ++m) {
    const auto row = simulate_row(config, m, grid);
    out.values.insert(out.values.end(), row.begin(), row.end());
  }
  return out;
}

SampleMatrix run_mc(const MCConfig& config) {
  validate(config);
  std::optional<ObservationGrid> grid;
  if (config.freeze_grid) grid = frozen_grid(config);

  const std::size_t n_freq = config.frequencies.size();
  SampleMatrix out{config.paths, config.frequencies, {}};
  out.values.resize(config.paths * n_freq);

  std::exception_ptr failure;
  const auto n_paths = static_cast<std::int64_t>(config.paths);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t m = 0; m < n_paths; ++m) {
    try {
      const auto row = simulate_row(config, static_cast<std::size_t>(m), grid);
      std::copy(row.begin(), row.end(), out.values.begin() + m * n_freq);
    } catch (...) {
#pragma omp critical(carma_mc_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

bool SuiteReport::all_pass() const {
  for (const auto& e : entries)
    if (!e.pass) return false;
  return true;
}

SuiteReport distribution_suite(std::span<const Complex> samples, const CarmaSpec& spec,
                               double omega, double alpha) {
  if (omega < 0.0) throw ConfigError("distribution_suite: omega must be >= 0");
  SuiteReport report;
  report.omega = omega;
  const std::size_t n = samples.size();

  if (omega == 0.0) {
    const LimitLaw law = limit_law(spec, 0.0, Statistic::ZeroFreq);
    std::vector<double> x(n), x2(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = samples[i].real();
      x2[i] = x[i] * x[i];
    }
    report.entries.push_back(ks_entry("zero", x, coordinate_law(law), alpha));
    const LimitLaw chi = limit_law(spec, 0.0, Statistic::ZeroFreqChiSq);
    report.entries.push_back(ks_entry("zero_chisq", x2, coordinate_law(chi), alpha));
    return report;
  }

  const LimitLaw reim = limit_law(spec, omega, Statistic::ReIm);
  const LimitLaw mod = limit_law(spec, omega, Statistic::ModulusSquared);
  std::vector<double> re(n), im(n), m2(n);
  for (std::size_t i = 0; i < n; ++i) {
    re[i] = samples[i].real();
    im[i] = samples[i].imag();
    m2[i] = std::norm(samples[i]);
  }
  report.entries.push_back(ks_entry("re", re, coordinate_law(reim), alpha));
  report.entries.push_back(ks_entry("im", im, coordinate_law(reim), alpha));
  report.entries.push_back(ks_entry("mod2", m2, coordinate_law(mod), alpha));

  GofEntry mean_check;
  mean_check.statistic = "mod2_mean";
  mean_check.law = coordinate_law(mod);
  mean_check.n = n;
  const Moments mm = moments(m2);
  mean_check.mean = mm.mean;
  mean_check.variance = mm.variance;
  const double se = std::sqrt(mm.variance / static_cast<double>(n));
  mean_check.z = se > 0.0 ? (mm.mean - mod.parameter) / se
                          : std::numeric_limits<double>::infinity();
  mean_check.pass = std::abs(*mean_check.z) <= 4.0;
  report.entries.push_back(mean_check);
  return report;
}

std::vector<double> statistic_values(std::span<const Complex> samples,
                                     const std::string& statistic) {
  double (*pick)(const Complex&) = nullptr;
  if (statistic == "re" || statistic == "zero")
    pick = [](const Complex& z) { return z.real(); };
  else if (statistic == "im")
    pick = [](const Complex& z) { return z.imag(); };
  else if (statistic == "mod2")
    pick = [](const Complex& z) { return std::norm(z); };
  else if (statistic == "zero_chisq")
    pick = [](const Complex& z) { return z.real() * z.real(); };
  else
    throw ConfigError("unknown statistic '" + statistic + "'");
  std::vector<double> out(samples.size());
  std::transform(samples.begin(), samples.end(), out.begin(), pick);
  return out;
}

CorrelationReport cross_frequency_independence(const SampleMatrix& samples) {
  struct Coordinate {
    std::string label;
    double omega;
    std::vector<double> values;
  };
  std::vector<Coordinate> coords;
  for (std::size_t f = 0; f < samples.frequencies.size(); ++f) {
    const double w = samples.frequencies[f];
    if (!(w > 0.0)) continue;
    Coordinate re{coordinate_label("re", w), w, std::vector<double>(samples.paths)};
    Coordinate im{coordinate_label("im", w), w, std::vector<double>(samples.paths)};
    for (std::size_t m = 0; m < samples.paths; ++m) {
      re.values[m] = samples.at(m, f).value.real();
      im.values[m] = samples.at(m, f).value.imag();
    }
    coords.push_back(std::move(re));
    coords.push_back(std::move(im));
  }
  if (coords.size() < 4)
    throw ConfigError("independence check needs >= 2 positive frequencies");

  CorrelationReport report;
  report.standard_error = 1.0 / std::sqrt(static_cast<double>(samples.paths));
  const std::size_t k = coords.size();
  report.matrix.assign(k, std::vector<std::optional<double>>(k));
  for (const auto& c : coords) report.labels.push_back(c.label);

  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      const auto r = i == j ? correlation(coords[i].values, coords[i].values)
                            : correlation(coords[i].values, coords[j].values);
      report.matrix[i][j] = report.matrix[j][i] = (i == j && r) ? std::optional(1.0) : r;
      if (i == j) continue;
      report.tested.push_back({coords[i].label, coords[j].label, r});
      if (r && (!report.max_abs || std::abs(*r) > *report.max_abs))
        report.max_abs = std::abs(*r);
    }
  return report;
}

CovarianceCheck covariance_check(const MCConfig& config, const SampleMatrix& samples,
                                 double omega) {
  if (!std::holds_alternative<Brownian>(config.driver))
    throw ConfigError("covariance check requires the Brownian driver");
  std::size_t col = samples.frequencies.size();
  for (std::size_t f = 0; f < samples.frequencies.size(); ++f)
    if (samples.frequencies[f] == omega) col = f;
  if (col == samples.frequencies.size())
    throw ConfigError("covariance check: frequency not in the sample matrix");

  std::vector<double> m2(samples.paths);
  for (std::size_t m = 0; m < samples.paths; ++m) m2[m] = std::norm(samples.at(m, col).value);
  const Moments mm = moments(m2);

  CovarianceCheck c;
  c.horizon = config.horizon;
  c.omega = omega;
  c.empirical = mm.mean;
  c.standard_error = std::sqrt(mm.variance / static_cast<double>(samples.paths));
  c.theoretical = theoretical_product_mean(config.spec, config.horizon, omega, -omega).real();
  c.theoretical_as_printed =
      theoretical_product_mean(config.spec, config.horizon, omega, -omega, KFormula::AsPrinted)
          .real();
  c.z = (c.empirical - c.theoretical) / c.standard_error;
  c.z_as_printed = (c.empirical - c.theoretical_as_printed) / c.standard_error;
  c.pass = std::abs(c.z) <= 4.0;
  return c;
}

CovarianceCheck covariance_check(const MCConfig& config, double omega) {
  MCConfig single = config;
  single.frequencies = {omega};
  if (!std::holds_alternative<Brownian>(config.driver))
    throw ConfigError("covariance check requires the Brownian driver");
  return covariance_check(single, run_mc(single), omega);
}

std::vector<ConvergenceRow> convergence_study(const ConvergenceSettings& s) {
  if (s.h_ladder.empty()) throw ConfigError("convergence: empty h ladder");
  for (std::size_t i = 1; i < s.h_ladder.size(); ++i)
    if (!(s.h_ladder[i] < s.h_ladder[i - 1]))
      throw ConfigError("convergence: h ladder is not strictly decreasing");
  if (!(s.mesh > 0.0) || !(s.mesh < s.h_ladder.back()))
    throw ConfigError("convergence: mesh must be below the smallest h");
  if (s.paths < 1) throw ConfigError("convergence: M must be >= 1");
  validate(s.driver);

  const std::size_t n_freq = s.frequencies.size();
  std::vector<ConvergenceRow> rows;
  for (std::size_t level = 0; level < s.h_ladder.size(); ++level) {
    const double h = s.h_ladder[level];
    std::vector<double> sq(s.paths * n_freq);
    std::exception_ptr failure;
    const auto n_paths = static_cast<std::int64_t>(s.paths);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t m = 0; m < n_paths; ++m) {
      try {
        RngStream rng(s.master_seed, (static_cast<std::uint64_t>(level) << 40) +
                                         static_cast<std::uint64_t>(m));
        SimulationSettings settings;
        settings.horizon = s.horizon;
        settings.h_max = h;
        settings.mesh = s.mesh;
        const SimulatedPath sim = simulate_path(s.spec, s.driver, settings, rng);
        for (std::size_t f = 0; f < n_freq; ++f) {
          const double w = s.frequencies[f];
          const Complex diff = truncated_ft(sim.observed, w).value -
                               fine_ft_oracle(sim.fine, sim.fine_path, w).value;
          sq[m * n_freq + f] = std::norm(diff);
        }
      } catch (...) {
#pragma omp critical(carma_conv_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);

    ConvergenceRow row;
    row.h_max = h;
    row.n_points = grid_points(s.horizon, h);
    row.n_h3 = static_cast<double>(row.n_points) * h * h * h;
    for (std::size_t f = 0; f < n_freq; ++f) {
      double acc = 0.0;
      for (std::size_t m = 0; m < s.paths; ++m) acc += sq[m * n_freq + f];
      row.rms.push_back(std::sqrt(acc / static_cast<double>(s.paths)));
      if (rows.empty() || !(row.rms.back() > 0.0))
        row.ratio.push_back(std::nullopt);
      else
        row.ratio.push_back(rows.back().rms[f] / row.rms.back());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

MCReport build_report(const MCConfig& config, const SampleMatrix& samples, double alpha) {
  MCReport r;
  r.horizon = config.horizon;
  r.h_max = config.h_max;
  r.mesh = config.mesh;
  r.paths = samples.paths;
  r.n_points = grid_points(config.horizon, config.h_max);
  r.n_h3 = static_cast<double>(r.n_points) * config.h_max * config.h_max * config.h_max;
  r.alpha = alpha;
  r.master_seed = config.master_seed;
  r.driver = driver_tag(config.driver);

  std::size_t positive = 0;
  for (std::size_t f = 0; f < samples.frequencies.size(); ++f) {
    const double w = samples.frequencies[f];
    if (w < 0.0) continue;
    if (w > 0.0) ++positive;
    const auto col = samples.column(f);
    r.suites.push_back(distribution_suite(col, config.spec, w, alpha));
    if (std::holds_alternative<Brownian>(config.driver))
      r.covariance.push_back(covariance_check(config, samples, w));
  }
  if (positive >= 2) r.correlations = cross_frequency_independence(samples);
  return r;
}

}  // namespace carma
