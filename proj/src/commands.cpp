#include "carma/commands.hpp"

#include <ostream>

#include "carma/csv.hpp"
#include "carma/error.hpp"
#include "carma/mc_study.hpp"
#include "carma/path_simulator.hpp"
#include "carma/report.hpp"

namespace carma {

namespace fs = std::filesystem;

namespace {

const char* table_extension(OutputFormat f) { return f == OutputFormat::Json ? ".json" : ".csv"; }

fs::path write_table(const fs::path& stem, const Table& table, OutputFormat format) {
  fs::path path = stem;
  path += table_extension(format);
  write_file(path, [&](std::ostream& os) {
    if (format == OutputFormat::Json)
      write_json(os, table);
    else
      write_csv(os, table);
  });
  return path;
}

fs::path write_json_doc(const fs::path& path, const nlohmann::json& doc) {
  write_file(path, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  return path;
}

MCConfig mc_config(const RunConfig& c, const LadderLevel& level, const DriverSpec& driver,
                   std::size_t level_index, std::size_t driver_index) {
  MCConfig mc{c.model.spec_for(driver), driver};
  mc.horizon = level.horizon;
  mc.h_max = level.h_max;
  mc.mesh = c.mesh;
  mc.paths = c.paths;
  mc.frequencies = c.frequencies;
  mc.master_seed = c.seed;
  mc.stream_base = setting_stream_base(level_index, driver_index);
  mc.freeze_grid = c.freeze_grid;
  validate(mc);
  return mc;
}

}  // namespace

fs::path output_root(const RunConfig& config) {
  return fs::path(config.out_dir) / config.directory_label();
}

std::string level_directory(const LadderLevel& level) {
  return omega_tag(level.horizon) + "_" + omega_tag(level.h_max);
}

std::uint64_t setting_stream_base(std::size_t level, std::size_t driver) {
  return (static_cast<std::uint64_t>(level) << 48) | (static_cast<std::uint64_t>(driver) << 40);
}

CommandResult cmd_spectral(const RunConfig& c, std::ostream& log) {
  const CarmaSpec spec = c.model.spec();
  CommandResult r;
  const Table t = spectral_table(spec, c.omega_min, c.omega_max, c.omega_step);
  r.files.push_back(write_table(output_root(c) / "spectral", t, c.format));
  log << "spectral: " << t.rows.size() << " rows -> " << r.files.back().string() << '\n';
  return r;
}

CommandResult cmd_simulate(const RunConfig& c, std::ostream& log) {
  CommandResult r;
  for (std::size_t li = 0; li < c.ladder.size(); ++li) {
    const LadderLevel& level = c.ladder[li];
    for (std::size_t di = 0; di < c.drivers.size(); ++di) {
      const DriverSpec& driver = c.drivers[di];
      const CarmaSpec spec = c.model.spec_for(driver);
      const fs::path dir = output_root(c) / level_directory(level) / driver_tag(driver);
      SimulationSettings settings{level.horizon, level.h_max, c.mesh, std::nullopt,
                                  c.write_states};
      for (std::size_t m = 0; m < c.simulate_paths; ++m) {
        RngStream rng(c.seed, setting_stream_base(li, di) + m);
        const SimulatedPath sim = simulate_path(spec, driver, settings, rng);
        std::vector<double> states;
        if (c.write_states) {
          const std::size_t p = static_cast<std::size_t>(spec.p());
          states.reserve(sim.fine.observation_index.size() * p);
          for (std::size_t idx : sim.fine.observation_index)
            states.insert(states.end(), sim.fine_path.states.begin() + idx * p,
                          sim.fine_path.states.begin() + (idx + 1) * p);
        }
        const Table t = path_table(sim.observed, states, static_cast<std::size_t>(spec.p()));
        r.files.push_back(write_table(dir / ("path_" + std::to_string(m)), t, c.format));
      }
      log << "simulate " << level_directory(level) << ' ' << driver_tag(driver) << ": "
          << c.simulate_paths << " path(s) -> " << dir.string() << '\n';
    }
  }
  return r;
}

CommandResult cmd_mc(const RunConfig& c, std::ostream& log) {
  CommandResult r;
  for (std::size_t li = 0; li < c.ladder.size(); ++li) {
    const LadderLevel& level = c.ladder[li];
    for (std::size_t di = 0; di < c.drivers.size(); ++di) {
      const MCConfig mc = mc_config(c, level, c.drivers[di], li, di);
      const fs::path dir = output_root(c) / level_directory(level) / driver_tag(mc.driver);
      const SampleMatrix samples = run_mc(mc);
      const MCReport report = build_report(mc, samples, c.alpha);

      r.files.push_back(write_json_doc(dir / "report.json", to_json(report)));
      r.files.push_back(write_table(dir / "ft", ft_table(samples.values), c.format));
      for (std::size_t f = 0; f < samples.frequencies.size(); ++f) {
        const std::vector<Complex> col = samples.column(f);
        for (const GofEntry& e : report.suites[f].entries) {
          if (!e.ks_d) continue;
          const auto qq = qq_data(statistic_values(col, e.statistic), e.law);
          const std::string name =
              "qq_" + e.statistic + "_omega" + omega_tag(samples.frequencies[f]);
          r.files.push_back(write_table(dir / name, qq_table(qq), c.format));
        }
      }

      log << "mc " << level_directory(level) << ' ' << driver_tag(mc.driver) << " (M=" << mc.paths
          << ", N=" << report.n_points << ")\n";
      for (const auto& suite : report.suites) {
        log << "  omega=" << omega_tag(suite.omega) << ':';
        for (const auto& e : suite.entries) log << ' ' << e.statistic << (e.pass ? "=ok" : "=FAIL");
        log << '\n';
        r.all_pass = r.all_pass && suite.all_pass();
      }
      if (report.correlations && report.correlations->max_abs)
        log << "  max |corr| = " << *report.correlations->max_abs << '\n';
    }
  }
  return r;
}

CommandResult cmd_covcheck(const RunConfig& c, std::ostream& log) {
  for (const auto& d : c.drivers)
    if (!std::holds_alternative<Brownian>(d))
      throw ConfigError("covcheck: driver '" + driver_tag(d) +
                        "' rejected; the covariance check needs a Brownian (Gaussian) driver "
                        "so that the finite-T formula has a clean Monte Carlo reference");
  CommandResult r;
  for (std::size_t li = 0; li < c.ladder.size(); ++li) {
    const LadderLevel& level = c.ladder[li];
    for (std::size_t di = 0; di < c.drivers.size(); ++di) {
      const MCConfig mc = mc_config(c, level, c.drivers[di], li, di);
      const SampleMatrix samples = run_mc(mc);
      MCReport report;
      report.horizon = mc.horizon;
      report.h_max = mc.h_max;
      report.mesh = mc.mesh;
      report.paths = mc.paths;
      report.n_points = samples.values.empty() ? 0 : samples.values.front().n_points;
      report.alpha = c.alpha;
      report.master_seed = mc.master_seed;
      report.driver = driver_tag(mc.driver);
      for (double w : mc.frequencies) {
        if (w < 0.0) continue;
        report.covariance.push_back(covariance_check(mc, samples, w));
      }
      const fs::path dir = output_root(c) / level_directory(level) / driver_tag(mc.driver);
      r.files.push_back(write_json_doc(dir / "covcheck.json", to_json(report)));
      log << "covcheck " << level_directory(level) << ":\n";
      for (const auto& cc : report.covariance) {
        log << "  omega=" << omega_tag(cc.omega) << " theory=" << cc.theoretical
            << " empirical=" << cc.empirical << " z=" << cc.z << (cc.pass ? " ok" : " FAIL")
            << '\n';
        r.all_pass = r.all_pass && cc.pass;
      }
    }
  }
  return r;
}

CommandResult cmd_convergence(const RunConfig& c, std::ostream& log) {
  for (std::size_t i = 1; i < c.h_ladder.size(); ++i)
    if (!(c.h_ladder[i] < c.h_ladder[i - 1]))
      throw ConfigError("convergence: h ladder must be strictly decreasing");
  CommandResult r;
  for (std::size_t di = 0; di < c.drivers.size(); ++di) {
    const DriverSpec& driver = c.drivers[di];
    ConvergenceSettings s{c.model.spec_for(driver), driver};
    s.horizon = c.convergence_horizon;
    s.h_ladder = c.h_ladder;
    s.mesh = c.mesh;
    s.paths = c.convergence_paths;
    s.frequencies = c.frequencies;
    s.master_seed = c.seed;
    const auto rows = convergence_study(s);
    const fs::path dir =
        output_root(c) / ("convergence_T" + omega_tag(s.horizon)) / driver_tag(driver);
    r.files.push_back(
        write_table(dir / "convergence", convergence_table(rows, s.frequencies), c.format));
    log << "convergence " << driver_tag(driver) << " -> " << r.files.back().string() << '\n';
    for (const auto& row : rows) {
      log << "  h=" << row.h_max << " N=" << row.n_points;
      for (std::size_t f = 0; f < row.rms.size(); ++f) {
        log << "  rms(" << omega_tag(s.frequencies[f]) << ")=" << row.rms[f];
        if (row.ratio[f]) log << " ratio=" << *row.ratio[f];
      }
      log << '\n';
    }
  }
  return r;
}

}  // namespace carma
