#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "carma/carma_model.hpp"

namespace carma {

using Cdf = std::function<double(double)>;
using Quantile = std::function<double(double)>;

double normal_cdf(double x, double variance);
double exp_cdf(double x, double mean);
double chisq1_cdf(double x);

double normal_quantile(double prob, double variance);
double exp_quantile(double prob, double mean);
double chisq1_quantile(double prob);

/// One-sample Kolmogorov-Smirnov distance sup_x |F_n(x) - F(x)|, evaluated on
/// both sides of every jump of the empirical cdf.
double ks_statistic(std::span<const double> samples, const Cdf& cdf);

/// Asymptotic Kolmogorov distribution P(sqrt(n) D <= c) =
/// 1 - 2 sum_{k>=1} (-1)^{k-1} e^{-2 k^2 c^2}.
double kolmogorov_cdf(double c);

/// c(alpha) / sqrt(n) with kolmogorov_cdf(c(alpha)) = 1 - alpha.
double ks_critical(double alpha, std::size_t n);

/// Reference distribution for one scalar statistic.
struct ScalarLaw {
  LawKind kind = LawKind::RealNormal;
  double parameter = 1.0;  // variance (normal), mean (exponential), scale (chi^2)

  Cdf cdf() const;
  Quantile quantile() const;
};

/// Scalar law of one coordinate (Re or Im) of a complex isotropic normal law,
/// or the law itself otherwise.
ScalarLaw coordinate_law(const LimitLaw& law);

/// Pairs (Q((k - 0.5)/n), x_(k)), k = 1..n.
std::vector<std::pair<double, double>> qq_data(std::span<const double> samples,
                                               const ScalarLaw& law);

/// Least-squares slope of empirical on theoretical quantiles.
double qq_slope(const std::vector<std::pair<double, double>>& qq);

}  // namespace carma
