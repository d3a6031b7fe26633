// Acceptance run: one PASS/FAIL line per criterion. Seeds are 42 + criterion
// number, fixed in advance.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "carma/carma_model.hpp"
#include "carma/fourier_transform.hpp"
#include "carma/goodness_of_fit.hpp"
#include "carma/linalg.hpp"
#include "carma/mc_study.hpp"
#include "carma/rng.hpp"
#include "carma/sampling_grid.hpp"
#include "test_support.hpp"

using namespace carma;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int k, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!out.pass) ++failures;
  std::printf("CRITERION %2d: %s  (%.2f s)  %s\n", k, out.pass ? "PASS" : "FAIL", secs,
              out.detail.c_str());
  std::fflush(stdout);
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::uint64_t seed_for(int k) { return 42 + static_cast<std::uint64_t>(k); }

MCConfig study(const CarmaSpec& spec, DriverSpec driver, double horizon, double h_max,
               std::size_t paths, std::vector<double> frequencies, std::uint64_t seed) {
  MCConfig c{.spec = spec, .driver = driver};
  c.horizon = horizon;
  c.h_max = h_max;
  c.mesh = 0.001;
  c.paths = paths;
  c.frequencies = std::move(frequencies);
  c.master_seed = seed;
  return c;
}

const GofEntry& entry(const MCReport& report, double omega, const std::string& statistic) {
  for (const auto& s : report.suites)
    if (s.omega == omega)
      for (const auto& e : s.entries)
        if (e.statistic == statistic) return e;
  throw std::logic_error("missing entry " + statistic);
}

std::string describe(const GofEntry& e, double omega) {
  std::ostringstream os;
  os.precision(4);
  os << e.statistic << "@" << omega << ":";
  if (e.ks_d) os << "D=" << *e.ks_d << "/" << *e.ks_critical;
  if (e.z) os << "z=" << *e.z;
  os << (e.pass ? "" : "!");
  return os.str();
}

/// The checks of criteria 5-7 on one report.
Outcome limit_checks(const MCReport& report, bool ks, bool modulus, bool zero) {
  std::vector<std::pair<double, std::string>> wanted;
  if (ks)
    for (double w : {1.0, 10.0})
      for (const char* s : {"re", "im"}) wanted.emplace_back(w, s);
  if (modulus) {
    wanted.emplace_back(1.0, "mod2");
    wanted.emplace_back(1.0, "mod2_mean");
  }
  if (zero) {
    wanted.emplace_back(0.0, "zero");
    wanted.emplace_back(0.0, "zero_chisq");
  }
  Outcome out{true, ""};
  for (const auto& [w, s] : wanted) {
    const GofEntry& e = entry(report, w, s);
    out.pass = out.pass && e.pass;
    out.detail += describe(e, w) + " ";
  }
  return out;
}

}  // namespace

int main() {
  const CarmaSpec car1 = testing::car1();

  criterion(1, [] {
    // 2T/h must be an integer, so the cell width is pi/63 (< 0.05).
    const double horizon = std::numbers::pi;
    const double h = horizon / 63.0;
    RngStream rng(seed_for(1), 0);
    double worst = 0.0;
    bool ok = true;
    for (int g = 0; g < 1000; ++g) {
      const ObservationGrid grid = non_equidistant_grid(horizon, h, rng);
      std::vector<double> f(grid.size());
      std::transform(grid.times.begin(), grid.times.end(), f.begin(),
                     [](double t) { return std::sin(t); });
      const double err = std::abs(integrate_trapezoid(grid.times, f) - 2.0);
      const double bound = trapezoid_error_bound(grid.size(), max_gap(grid.times), 1.0);
      ok = ok && err <= bound && max_gap(grid.times) <= 0.05;
      worst = std::max(worst, err / bound);
    }
    return Outcome{ok, "1000 grids, N=127, max |E|/bound = " + std::to_string(worst)};
  });

  criterion(2, [] {
    std::mt19937_64 gen(seed_for(2));
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const CarmaSpec spec = testing::random_spec(gen, 4);
      const RealMatrix& a = spec.state_matrix();
      const RealMatrix p = lyapunov_solve(a, spec.sigma2());
      RealMatrix r = a * p + p * a.transpose();
      r(spec.p() - 1, spec.p() - 1) += spec.sigma2();
      worst = std::max(worst, max_abs(r) / spec.sigma2());
    }
    return Outcome{worst <= 1e-10, "100 specs, max residual/sigma2 = " + sci(worst)};
  });

  criterion(3, [] {
    std::mt19937_64 gen(seed_for(3));
    std::uniform_real_distribution<double> freq(-20.0, 20.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const CarmaSpec spec = testing::random_spec(gen, 4);
      for (int k = 0; k < 20; ++k) {
        const double w = freq(gen);
        // (A - i w I)^{-1} = -(i w I - A)^{-1}
        const ComplexMatrix r = resolvent(spec.state_matrix(), w);
        Complex lhs = 0.0;
        for (int j = 0; j < spec.p(); ++j) lhs -= spec.b()[j] * r(j, spec.p() - 1);
        const Complex iw(0.0, w);
        const Complex rhs = -poly_b(spec, iw) / poly_a(spec, iw);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
    return Outcome{worst <= 1e-10, "2000 evaluations, max |diff| = " + sci(worst)};
  });

  criterion(4, [&] {
    const MCConfig c = study(car1, Brownian{}, 50.0, 0.05, 2000, {1.0}, seed_for(4));
    const auto col = run_mc(c).column(0);
    const auto re = statistic_values(col, "re");
    const auto im = statistic_values(col, "im");
    auto var = [](const std::vector<double>& x) {
      double m = 0.0, s = 0.0;
      for (double v : x) m += v;
      m /= static_cast<double>(x.size());
      for (double v : x) s += (v - m) * (v - m);
      return s / static_cast<double>(x.size() - 1);
    };
    const double lo = 0.1 * (1.0 - 4.0 * std::sqrt(2.0 / 2000.0));
    const double hi = 0.1 * (1.0 + 4.0 * std::sqrt(2.0 / 2000.0));
    const double vr = var(re), vi = var(im);
    return Outcome{lo <= vr && vr <= hi && lo <= vi && vi <= hi,
                   "var(Re)=" + std::to_string(vr) + " var(Im)=" + std::to_string(vi) +
                       " band [" + std::to_string(lo) + ", " + std::to_string(hi) + "]"};
  });

  // Criteria 5-8 share one Gaussian CAR(1) study at (T=100, h=0.01, M=2000).
  std::optional<MCReport> t100;
  auto t100_report = [&]() -> const MCReport& {
    if (!t100) {
      const MCConfig c =
          study(car1, Brownian{}, 100.0, 0.01, 2000, {0.0, 0.1, 1.0, 10.0}, seed_for(5));
      t100 = build_report(c, run_mc(c));
    }
    return *t100;
  };

  criterion(5, [&] { return limit_checks(t100_report(), true, false, false); });
  criterion(6, [&] { return limit_checks(t100_report(), false, true, false); });
  criterion(7, [&] { return limit_checks(t100_report(), false, false, true); });

  criterion(8, [&] {
    const CorrelationReport& c = *t100_report().correlations;
    double worst = 0.0;
    std::string at;
    bool defined = true;
    for (std::size_t i = 0; i < c.labels.size(); ++i)
      for (std::size_t j = i + 1; j < c.labels.size(); ++j) {
        if (!c.matrix[i][j]) {
          defined = false;
          continue;
        }
        if (std::abs(*c.matrix[i][j]) > worst) {
          worst = std::abs(*c.matrix[i][j]);
          at = c.labels[i] + "~" + c.labels[j];
        }
      }
    return Outcome{defined && worst <= 0.1,
                   std::to_string(c.labels.size()) + " coordinates, max |corr| = " +
                       std::to_string(worst) + " (" + at + ")"};
  });

  criterion(9, [&] {
    const MCConfig c = study(car1, Brownian{}, 50.0, 0.05, 2000, {0.0, 1.0}, seed_for(9));
    const SampleMatrix s = run_mc(c);
    Outcome out{true, ""};
    for (double w : {0.0, 1.0}) {
      const CovarianceCheck chk = covariance_check(c, s, w);
      out.pass = out.pass && chk.pass;
      out.detail += "w=" + std::to_string(w) + ": theory=" + std::to_string(chk.theoretical) +
                    " mc=" + std::to_string(chk.empirical) + " z=" + std::to_string(chk.z) +
                    " (as printed z=" + std::to_string(chk.z_as_printed) + ") ";
    }
    return out;
  });

  criterion(10, [&] {
    ConvergenceSettings s{.spec = car1, .driver = Brownian{}};
    s.horizon = 10.0;
    s.h_ladder = {0.1, 0.05, 0.025};
    s.mesh = 0.001;
    s.paths = 200;
    s.frequencies = {0.0, 1.0};
    s.master_seed = seed_for(10);
    const auto rows = convergence_study(s);
    Outcome out{true, "ratios:"};
    for (const auto& row : rows)
      for (std::size_t f = 0; f < row.ratio.size(); ++f)
        if (row.ratio[f]) {
          out.pass = out.pass && *row.ratio[f] >= 3.0;
          out.detail += " h=" + std::to_string(row.h_max) + ",w=" +
                        std::to_string(s.frequencies[f]) + ":" + std::to_string(*row.ratio[f]);
        }
    return out;
  });

  criterion(11, [&] {
    const MCConfig c = study(car1, Brownian{}, 10.0, 0.1, 2000, {0.1}, seed_for(11));
    const auto col = run_mc(c).column(0);
    const ScalarLaw limit = coordinate_law(limit_law(car1, 0.1, Statistic::ReIm));
    Outcome out{true, ""};
    for (const char* stat : {"re", "im"}) {
      const auto x = statistic_values(col, stat);
      const double m = static_cast<double>(x.size());
      const double slope = qq_slope(qq_data(x, limit));
      const double band = 2.0 * slope / std::sqrt(2.0 * (m - 1.0));
      double mean = 0.0, var = 0.0;
      for (double v : x) mean += v / m;
      for (double v : x) var += (v - mean) * (v - mean) / (m - 1.0);
      const double d = ks_statistic(x, [var](double t) { return normal_cdf(t, var); });
      const double crit = ks_critical(0.01, x.size());
      out.pass = out.pass && std::abs(slope - 1.0) > band && d <= crit;
      out.detail += std::string(stat) + ": slope=" + std::to_string(slope) + " (band " +
                    std::to_string(band) + ") D=" + std::to_string(d) + "/" +
                    std::to_string(crit) + " ";
    }
    return out;
  });

  criterion(12, [&] {
    // Criteria 5-7 with M = 500 per setting.
    struct Setting {
      std::string name;
      CarmaSpec spec;
      DriverSpec driver;
    };
    const CarmaSpec c21 = testing::carma21();
    const std::vector<Setting> settings{
        {"car1/vg", car1.with_sigma2(32.0), VarianceGamma{}},
        {"car1/poisson2", car1.with_sigma2(20.0), TwoSidedPoisson{}},
        {"carma21/brownian", c21, Brownian{}},
        {"carma21/vg", c21.with_sigma2(32.0), VarianceGamma{}},
        {"carma21/poisson2", c21.with_sigma2(20.0), TwoSidedPoisson{}},
    };
    Outcome out{true, ""};
    for (std::size_t i = 0; i < settings.size(); ++i) {
      MCConfig c = study(settings[i].spec, settings[i].driver, 100.0, 0.01, 500,
                         {0.0, 1.0, 10.0}, seed_for(12));
      c.stream_base = static_cast<std::uint64_t>(i) << 40;
      const Outcome o = limit_checks(build_report(c, run_mc(c)), true, true, true);
      out.pass = out.pass && o.pass;
      out.detail += "\n    " + settings[i].name + (o.pass ? " ok: " : " FAILED: ") + o.detail;
    }
    return out;
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
