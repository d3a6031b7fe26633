#include "carma/fourier_transform.hpp"

#include <cmath>
#include <stdexcept>

namespace carma {

namespace {

// e^{-i w x}, written so that flipping the sign of w conjugates exactly.
inline Complex kernel(double omega, double x) {
  const double arg = omega * x;
  return {std::cos(arg), -std::sin(arg)};
}

inline Complex cexp_neg_i(double phase) { return {std::cos(phase), -std::sin(phase)}; }

ComplexMatrix scaled(const RealMatrix& m, Complex s) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = s * m(i, j);
  return out;
}

// u^T M v for complex row u and column v.
Complex bilinear(const std::vector<Complex>& u, const ComplexMatrix& m,
                 const std::vector<Complex>& v) {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    Complex row = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) row += m(i, j) * v[j];
    acc += u[i] * row;
  }
  return acc;
}

bool is_conjugate_pair(double omega1, double omega2) {
  const double scale = std::max({1.0, std::abs(omega1), std::abs(omega2)});
  return std::abs(omega1 + omega2) <= 1e-12 * scale;
}

struct ResolventVectors {
  std::vector<Complex> left;   // b^T (i w1 I - A)^{-1}
  std::vector<Complex> right;  // (i w2 I - A^T)^{-1} b
};

ResolventVectors resolvent_vectors(const CarmaSpec& spec, double omega1,
                                   double omega2) {
  const RealMatrix& a = spec.state_matrix();
  const auto& b = spec.b();
  const std::size_t p = b.size();
  const ComplexMatrix r1 = resolvent(a, omega1);
  const ComplexMatrix r2 = resolvent(a, omega2);
  ResolventVectors out{std::vector<Complex>(p), std::vector<Complex>(p)};
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t i = 0; i < p; ++i) {
      out.left[j] += b[i] * r1(i, j);
      // (r2^T b)_j = sum_i r2(i, j) b_i
      out.right[j] += r2(i, j) * b[i];
    }
  return out;
}

}  // namespace

std::vector<Complex> trapezoid_weights(std::span<const double> times, double omega) {
  const std::size_t n = times.size();
  if (n < 2) throw std::invalid_argument("trapezoid_weights: fewer than 2 points");
  std::vector<Complex> w(n);
  w[0] = 0.5 * (times[1] - times[0]) * kernel(omega, times[0]);
  for (std::size_t j = 1; j + 1 < n; ++j)
    w[j] = 0.5 * (times[j + 1] - times[j - 1]) * kernel(omega, times[j]);
  w[n - 1] = 0.5 * (times[n - 1] - times[n - 2]) * kernel(omega, times[n - 1]);
  return w;
}

Complex weighted_transform(std::span<const double> times, std::span<const double> y,
                           double omega) {
  const std::size_t n = times.size();
  if (n < 2 || y.size() != n)
    throw std::invalid_argument("weighted_transform: need matching values, N >= 2");
  const double horizon = times[n - 1] - times[0];
  if (!(horizon > 0.0)) throw std::invalid_argument("weighted_transform: T must be > 0");

  // Same weights as trapezoid_weights, fused to avoid the temporary.
  double re = 0.0;
  double im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = times[j == 0 ? 0 : j - 1];
    const double hi = times[j + 1 == n ? n - 1 : j + 1];
    const double wy = 0.5 * (hi - lo) * y[j];
    const double arg = omega * times[j];
    re += wy * std::cos(arg);
    im -= wy * std::sin(arg);
  }
  const double norm = 1.0 / std::sqrt(horizon);
  return {re * norm, im * norm};
}

FtSample truncated_ft(const SamplePath& path, double omega) {
  FtSample s;
  s.omega = omega;
  s.value = weighted_transform(path.grid.times, path.y, omega);
  s.horizon = path.grid.times.back() - path.grid.times.front();
  s.n_points = path.grid.size();
  s.h_max = path.grid.h_max;
  s.seed = path.metadata.seed;
  return s;
}

FtSample fine_ft_oracle(const FineGrid& fine, const FinePath& path, double omega) {
  FtSample s;
  s.omega = omega;
  s.value = weighted_transform(fine.times, path.y, omega);
  s.horizon = fine.times.back() - fine.times.front();
  s.n_points = fine.size();
  s.h_max = max_gap(fine.times);
  return s;
}

double integrate_trapezoid(std::span<const double> times, std::span<const double> f) {
  if (times.size() < 2 || f.size() != times.size())
    throw std::invalid_argument("integrate_trapezoid: need matching values, N >= 2");
  double acc = 0.0;
  for (std::size_t j = 1; j < times.size(); ++j)
    acc += 0.5 * (times[j] - times[j - 1]) * (f[j] + f[j - 1]);
  return acc;
}

double trapezoid_error_bound(std::size_t n_points, double h_max, double f2_sup) {
  return static_cast<double>(n_points) * f2_sup * h_max * h_max * h_max / 12.0;
}

Complex k_correction(const CarmaSpec& spec, double horizon, double omega1,
                     double omega2, KFormula formula) {
  const RealMatrix& a = spec.state_matrix();
  const RealMatrix& cov = spec.stationary_covariance();
  const std::size_t p = a.rows();
  const double sigma2 = spec.sigma2();
  const RealMatrix expa = mat_exp(a, horizon);
  const RealMatrix expa_t = expa.transpose();
  const RealMatrix eye = RealMatrix::identity(p);
  const ComplexMatrix ceye = ComplexMatrix::identity(p);

  // (i w1 I + A^T)^{-1} (e^{(i w1 I + A^T) T} - I) with
  // (i w I + A^T)^{-1} = -resolvent(A, -w)^T and e^{(cI + M)T} = e^{cT} e^{MT}.
  const ComplexMatrix inv1 = resolvent(a, -omega1).transpose() * Complex(-1.0);
  const ComplexMatrix g1 =
      inv1 * (scaled(expa_t, std::conj(cexp_neg_i(omega1 * horizon))) - ceye);
  const ComplexMatrix inv2 = resolvent(a, -omega2) * Complex(-1.0);
  const ComplexMatrix g2 =
      inv2 * (scaled(expa, std::conj(cexp_neg_i(omega2 * horizon))) - ceye);

  // e e^T G1 keeps only the last row of G1; G2 e e^T only its last column.
  ComplexMatrix noise_part(p, p);
  for (std::size_t j = 0; j < p; ++j) noise_part(p - 1, j) += g1(p - 1, j);
  for (std::size_t i = 0; i < p; ++i) noise_part(i, p - 1) += g2(i, p - 1);

  const Complex ph1 = cexp_neg_i(omega1 * horizon);
  const Complex ph2 = cexp_neg_i(omega2 * horizon);
  const Complex ph12 = cexp_neg_i((omega1 + omega2) * horizon);

  const double sign = formula == KFormula::Derived ? -1.0 : 1.0;
  ComplexMatrix bracket = noise_part * (sign * sigma2 * ph12);
  if (formula == KFormula::Derived) {
    bracket += scaled((eye - expa) * cov, ph1);
    bracket += scaled(cov * (eye - expa_t), ph2);
  } else {
    bracket += scaled(cov * (eye - expa_t), ph1);
    bracket += scaled((eye - expa) * cov, ph2);
  }
  bracket += scaled(cov, 1.0 - ph1 - ph2 + ph12);

  const ResolventVectors rv = resolvent_vectors(spec, omega1, omega2);
  return bilinear(rv.left, bracket, rv.right);
}

Complex theoretical_product_mean(const CarmaSpec& spec, double horizon, double omega1,
                                 double omega2, KFormula formula) {
  if (!(horizon > 0.0)) throw std::invalid_argument("product mean: T must be > 0");
  const Complex k = k_correction(spec, horizon, omega1, omega2, formula);
  if (is_conjugate_pair(omega1, omega2))
    return spec.sigma2() * std::norm(transfer(spec, omega1)) + k / horizon;

  // K_1 = K + b^T (i w1 I - A)^{-1} sigma2 phi e e^T (i w2 I - A^T)^{-1} b,
  // phi = (1 - e^{-i (w1 + w2) T}) / (i (w1 + w2)).
  const double s = omega1 + omega2;
  const Complex phi = (1.0 - cexp_neg_i(s * horizon)) / Complex(0.0, s);
  const ResolventVectors rv = resolvent_vectors(spec, omega1, omega2);
  const std::size_t last = rv.left.size() - 1;
  const Complex k1 = k + spec.sigma2() * phi * rv.left[last] * rv.right[last];
  return k1 / horizon;
}

FiniteMoments finite_t_moments(const CarmaSpec& spec, double horizon, double omega) {
  const double m2 = theoretical_product_mean(spec, horizon, omega, -omega).real();
  FiniteMoments out;
  out.mean_modulus2 = m2;
  if (omega == 0.0) {
    out.var_re = m2;
    return out;
  }
  const Complex same = theoretical_product_mean(spec, horizon, omega, omega);
  out.var_re = 0.5 * (m2 + same.real());
  out.var_im = 0.5 * (m2 - same.real());
  out.cov_re_im = 0.5 * same.imag();
  return out;
}

}  // namespace carma
