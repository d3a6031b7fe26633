#include "carma/goodness_of_fit.hpp"

#include <algorithm>
#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace carma {

double normal_cdf(double x, double variance) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0 * variance));
}

double exp_cdf(double x, double mean) { return x <= 0.0 ? 0.0 : -std::expm1(-x / mean); }

double chisq1_cdf(double x) {
  // 2 Phi(sqrt x) - 1 = erf(sqrt(x / 2))
  return x <= 0.0 ? 0.0 : std::erf(std::sqrt(0.5 * x));
}

double normal_quantile(double prob, double variance) {
  if (!(prob > 0.0 && prob < 1.0)) throw std::invalid_argument("quantile: prob not in (0,1)");
  return -std::sqrt(2.0 * variance) * boost::math::erfc_inv(2.0 * prob);
}

double exp_quantile(double prob, double mean) {
  if (!(prob >= 0.0 && prob < 1.0)) throw std::invalid_argument("quantile: prob not in [0,1)");
  return -mean * std::log1p(-prob);
}

double chisq1_quantile(double prob) {
  if (!(prob >= 0.0 && prob < 1.0)) throw std::invalid_argument("quantile: prob not in [0,1)");
  const double z = boost::math::erf_inv(prob);
  return 2.0 * z * z;
}

double ks_statistic(std::span<const double> samples, const Cdf& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    // F(x-) below the jump, so that step references are handled exactly too.
    const double f = cdf(sorted[i]);
    const double f_left = cdf(std::nextafter(sorted[i], -INFINITY));
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f,
                  f_left - static_cast<double>(i) / n});
  }
  return d;
}

double kolmogorov_cdf(double c) {
  if (c <= 0.0) return 0.0;
  // The alternating series converges fast for c >~ 0.3; below that the
  // dual theta-function form is used.
  if (c < 0.3) {
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double acc = 0.0;
    for (int k = 1; k <= 50; ++k) {
      const double odd = 2.0 * k - 1.0;
      acc += std::exp(-odd * odd * pi2 / (8.0 * c * c));
    }
    return std::sqrt(2.0 * std::numbers::pi) / c * acc;
  }
  double acc = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * c * c);
    acc += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return 1.0 - 2.0 * acc;
}

double ks_critical(double alpha, std::size_t n) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("ks_critical: alpha");
  if (n == 0) throw std::invalid_argument("ks_critical: n must be >= 1");
  double lo = 0.0;
  double hi = 5.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (kolmogorov_cdf(mid) < 1.0 - alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi) / std::sqrt(static_cast<double>(n));
}

Cdf ScalarLaw::cdf() const {
  const double param = parameter;
  switch (kind) {
    case LawKind::RealNormal:
    case LawKind::ComplexIsotropicNormal:
      return [param](double x) { return normal_cdf(x, param); };
    case LawKind::ExponentialModulus:
      return [param](double x) { return exp_cdf(x, param); };
    case LawKind::ChiSquare1:
      return [param](double x) { return chisq1_cdf(x / param); };
  }
  throw std::logic_error("unknown law");
}

Quantile ScalarLaw::quantile() const {
  const double param = parameter;
  switch (kind) {
    case LawKind::RealNormal:
    case LawKind::ComplexIsotropicNormal:
      return [param](double p) { return normal_quantile(p, param); };
    case LawKind::ExponentialModulus:
      return [param](double p) { return exp_quantile(p, param); };
    case LawKind::ChiSquare1:
      return [param](double p) { return param * chisq1_quantile(p); };
  }
  throw std::logic_error("unknown law");
}

ScalarLaw coordinate_law(const LimitLaw& law) {
  if (law.kind == LawKind::ComplexIsotropicNormal)
    return {LawKind::RealNormal, law.parameter};
  return {law.kind, law.parameter};
}

std::vector<std::pair<double, double>> qq_data(std::span<const double> samples,
                                               const ScalarLaw& law) {
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto q = law.quantile();
  const double n = static_cast<double>(sorted.size());
  std::vector<std::pair<double, double>> out;
  out.reserve(sorted.size());
  for (std::size_t k = 0; k < sorted.size(); ++k)
    out.emplace_back(q((static_cast<double>(k) + 0.5) / n), sorted[k]);
  return out;
}

double qq_slope(const std::vector<std::pair<double, double>>& qq) {
  if (qq.size() < 2) throw std::invalid_argument("qq_slope: need >= 2 points");
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : qq) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(qq.size());
  my /= static_cast<double>(qq.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [x, y] : qq) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxy / sxx;
}

}  // namespace carma
