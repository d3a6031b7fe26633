#include <cmath>
#include <random>

#include "carma/goodness_of_fit.hpp"
#include "doctest.h"

using namespace carma;
using doctest::Approx;

// Reference values below come from scipy.stats / scipy.special.

TEST_CASE("reference distribution functions") {
  CHECK(normal_cdf(0.0, 3.7) == 0.5);
  CHECK(normal_cdf(1.3, 2.0) == Approx(0.8210146636778359).epsilon(1e-13));
  CHECK(normal_cdf(-40.0, 1.0) >= 0.0);
  CHECK(exp_cdf(2.0, 2.0) == Approx(1 - std::exp(-1.0)).epsilon(1e-15));
  CHECK(exp_cdf(2.0, 2.0) == Approx(0.632121).epsilon(1e-6));
  CHECK(exp_cdf(-1.0, 2.0) == 0.0);
  CHECK(chisq1_cdf(0.0) == 0.0);
  CHECK(chisq1_cdf(-3.0) == 0.0);
  CHECK(chisq1_cdf(2.5) == Approx(0.8861537019933423).epsilon(1e-13));
}

TEST_CASE("quantiles invert the distribution functions") {
  CHECK(normal_quantile(0.975, 3.0) == Approx(3.394757202228515).epsilon(1e-13));
  CHECK(chisq1_quantile(0.9) == Approx(2.705543454095404).epsilon(1e-12));
  CHECK(exp_quantile(0.5, 0.2) == Approx(0.2 * std::log(2.0)).epsilon(1e-15));
  for (double p : {1e-6, 0.01, 0.3, 0.5, 0.77, 0.999}) {
    CHECK(normal_cdf(normal_quantile(p, 0.4), 0.4) == Approx(p).epsilon(1e-12));
    CHECK(exp_cdf(exp_quantile(p, 1.5), 1.5) == Approx(p).epsilon(1e-12));
    CHECK(chisq1_cdf(chisq1_quantile(p)) == Approx(p).epsilon(1e-11));
  }
}

TEST_CASE("KS statistic") {
  const auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
  CHECK(ks_statistic(std::vector<double>{0.5}, uniform) == 0.5);
  for (std::size_t n : {1u, 7u, 100u}) {
    std::vector<double> grid(n);
    for (std::size_t k = 0; k < n; ++k) grid[k] = (k + 0.5) / static_cast<double>(n);
    CHECK(ks_statistic(grid, uniform) == Approx(0.5 / static_cast<double>(n)).epsilon(1e-12));
  }
  std::vector<double> x{0.3, 0.1, 0.7, 0.5, 0.5};
  const auto ecdf = [&](double t) {
    double c = 0;
    for (double v : x) c += v <= t;
    return c / 5.0;
  };
  CHECK(ks_statistic(x, ecdf) == 0.0);
  CHECK_THROWS(ks_statistic(std::vector<double>{}, uniform));

  std::mt19937_64 gen(3);
  std::normal_distribution<double> nd;
  std::vector<double> s(500);
  for (auto& v : s) v = nd(gen);
  const double d = ks_statistic(s, [](double t) { return normal_cdf(t, 1.0); });
  CHECK(d >= 0.0);
  CHECK(d <= 1.0);
}

TEST_CASE("Kolmogorov distribution and critical values") {
  CHECK(kolmogorov_cdf(1.0) == Approx(0.7300003283226455).epsilon(1e-12));
  CHECK(kolmogorov_cdf(0.2) == Approx(5.050404539019837e-13).epsilon(1e-8));
  CHECK(kolmogorov_cdf(0.0) == 0.0);
  // Both branches agree where they meet.
  CHECK(kolmogorov_cdf(0.3 - 1e-12) == Approx(kolmogorov_cdf(0.3 + 1e-12)).epsilon(1e-9));

  CHECK(ks_critical(0.01, 1) == Approx(1.6276236115189504).epsilon(1e-10));
  CHECK(ks_critical(0.05, 1) == Approx(1.3580986393225507).epsilon(1e-10));
  CHECK(ks_critical(0.01, 2000) == Approx(0.0364).epsilon(1e-3));
  CHECK(ks_critical(0.01, 400) == Approx(ks_critical(0.01, 100) / 2).epsilon(1e-12));
  CHECK_THROWS(ks_critical(0.0, 10));
  CHECK_THROWS(ks_critical(0.01, 0));
}

TEST_CASE("QQ data") {
  const ScalarLaw std_normal{LawKind::RealNormal, 1.0};
  const auto one = qq_data(std::vector<double>{0.0}, std_normal);
  REQUIRE(one.size() == 1);
  CHECK(one[0].first == Approx(0.0).scale(1));
  CHECK(one[0].second == 0.0);

  std::vector<double> grid(50);
  for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = normal_quantile((k + 0.5) / 50.0, 1.0);
  std::vector<double> shuffled(grid.rbegin(), grid.rend());
  const auto qq = qq_data(shuffled, std_normal);
  for (const auto& [t, e] : qq) CHECK(e == Approx(t).epsilon(1e-12));
  CHECK(qq_slope(qq) == Approx(1.0).epsilon(1e-12));

  std::vector<double> doubled;
  for (double v : grid) doubled.push_back(2.0 * v);
  CHECK(qq_slope(qq_data(doubled, std_normal)) == Approx(2.0).epsilon(1e-12));

  const ScalarLaw ex{LawKind::ExponentialModulus, 0.2};
  CHECK(ex.quantile()(0.5) == Approx(0.2 * std::log(2.0)));
  const ScalarLaw chi{LawKind::ChiSquare1, 0.25};
  CHECK(chi.cdf()(0.25 * 2.5) == Approx(chisq1_cdf(2.5)));
}

TEST_CASE("coordinate laws") {
  CHECK(coordinate_law({1.0, LawKind::ComplexIsotropicNormal, 0.1}).parameter == 0.1);
  CHECK(coordinate_law({1.0, LawKind::ExponentialModulus, 0.2}).kind ==
        LawKind::ExponentialModulus);
}
