#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "carma/carma_model.hpp"
#include "carma/linalg.hpp"
#include "carma/path_simulator.hpp"
#include "carma/sampling_grid.hpp"

namespace carma {

/// Normalized trapezoidal Fourier transform value at one frequency.
struct FtSample {
  double omega = 0.0;
  Complex value;
  double horizon = 0.0;
  std::size_t n_points = 0;
  double h_max = 0.0;
  std::uint64_t seed = 0;
};

/// Non-equidistant trapezoid weights with F(x) = e^{-i w x} folded in:
/// alpha_0 = (x_1 - x_0)/2 F(x_0), alpha_{N-1} = (x_{N-1} - x_{N-2})/2 F(x_{N-1}),
/// alpha_j = (x_{j+1} - x_{j-1})/2 F(x_j).
std::vector<Complex> trapezoid_weights(std::span<const double> times, double omega);

/// (1 / sqrt(T)) sum_j alpha_j y_j with T = times.back() - times.front().
Complex weighted_transform(std::span<const double> times, std::span<const double> y,
                           double omega);

/// Trapezoidal approximation of (1/sqrt(T)) int_0^T Y(t) e^{-i w t} dt from
/// the observed values.
FtSample truncated_ft(const SamplePath& path, double omega);

/// The same trapezoid on the full fine grid; stands in for the continuous
/// transform in convergence studies.
FtSample fine_ft_oracle(const FineGrid& fine, const FinePath& path, double omega);

/// Composite trapezoid on an arbitrary partition.
double integrate_trapezoid(std::span<const double> times, std::span<const double> f);

/// N ||f''||_inf h_max^3 / 12.
double trapezoid_error_bound(std::size_t n_points, double h_max, double f2_sup);

enum class KFormula {
  Derived,    // re-derived from the I_1..I_4 decomposition; exact
  AsPrinted,  // literal published display (sign/transposes differ)
};

/// Bounded finite-T correction K(T, w1, w2).
Complex k_correction(const CarmaSpec& spec, double horizon, double omega1, double omega2,
                     KFormula formula = KFormula::Derived);

/// E[F_T(w1) F_T(w2)] for the stationary process:
/// sigma2 |H(w1)|^2 + K(T, w1, -w1)/T when w2 = -w1, else K_1(T, w1, w2)/T.
Complex theoretical_product_mean(const CarmaSpec& spec, double horizon, double omega1,
                                 double omega2, KFormula formula = KFormula::Derived);

/// Exact second moments of (Re F_T(w), Im F_T(w)) at finite T.
struct FiniteMoments {
  double mean_modulus2 = 0.0;
  double var_re = 0.0;
  double var_im = 0.0;
  double cov_re_im = 0.0;
};
FiniteMoments finite_t_moments(const CarmaSpec& spec, double horizon, double omega);

}  // namespace carma
