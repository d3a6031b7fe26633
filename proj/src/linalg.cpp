#include "carma/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "carma/error.hpp"

namespace carma {

namespace {

template <typename T>
Matrix<T> solve_impl(Matrix<T> a, Matrix<T> b) {
  if (!a.is_square() || a.rows() != b.rows())
    throw std::invalid_argument("solve: dimension mismatch");
  const std::size_t n = a.rows();
  const std::size_t m = b.cols();

  double scale = 0.0;
  for (const auto& v : a.data()) scale = std::max(scale, std::abs(v));
  const double tiny = scale * 1e-14 * static_cast<double>(n);

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (!(std::abs(a(piv, col)) > tiny))
      throw NumericalError("singular linear system (pivot " +
                           std::to_string(std::abs(a(piv, col))) + ")");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
      for (std::size_t j = 0; j < m; ++j) std::swap(b(col, j), b(piv, j));
    }
    const T inv = T{1} / a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const T f = a(r, col) * inv;
      if (f == T{}) continue;
      a(r, col) = T{};
      for (std::size_t j = col + 1; j < n; ++j) a(r, j) -= f * a(col, j);
      for (std::size_t j = 0; j < m; ++j) b(r, j) -= f * b(col, j);
    }
  }
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = 0; j < m; ++j) {
      T acc = b(ii, j);
      for (std::size_t k = ii + 1; k < n; ++k) acc -= a(ii, k) * b(k, j);
      b(ii, j) = acc / a(ii, ii);
    }
  }
  return b;
}

double inf_norm(const RealMatrix& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) row += std::abs(m(i, j));
    best = std::max(best, row);
  }
  return best;
}

// Horner evaluation of a monic polynomial given highest degree first.
Complex horner(std::span<const double> coeffs, Complex z) {
  Complex acc = coeffs[0];
  for (std::size_t k = 1; k < coeffs.size(); ++k) acc = acc * z + coeffs[k];
  return acc;
}

double horner_abs_bound(std::span<const double> coeffs, double r) {
  double acc = std::abs(coeffs[0]);
  for (std::size_t k = 1; k < coeffs.size(); ++k)
    acc = acc * r + std::abs(coeffs[k]);
  return acc;
}

std::vector<double> monic(std::span<const double> a_coeffs) {
  std::vector<double> c;
  c.reserve(a_coeffs.size() + 1);
  c.push_back(1.0);
  c.insert(c.end(), a_coeffs.begin(), a_coeffs.end());
  return c;
}

}  // namespace

ComplexMatrix to_complex(const RealMatrix& m) {
  ComplexMatrix c(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = m(i, j);
  return c;
}

double max_abs(const RealMatrix& m) {
  double best = 0.0;
  for (double v : m.data()) best = std::max(best, std::abs(v));
  return best;
}

double max_abs(const ComplexMatrix& m) {
  double best = 0.0;
  for (const Complex& v : m.data()) best = std::max(best, std::abs(v));
  return best;
}

RealMatrix companion(std::span<const double> a_coeffs) {
  const std::size_t p = a_coeffs.size();
  if (p == 0) throw std::invalid_argument("companion: empty coefficient list");
  RealMatrix a(p, p);
  for (std::size_t i = 0; i + 1 < p; ++i) a(i, i + 1) = 1.0;
  for (std::size_t j = 0; j < p; ++j) a(p - 1, j) = -a_coeffs[p - 1 - j];
  return a;
}

RealMatrix mat_exp(const RealMatrix& a, double t) {
  if (!a.is_square()) throw std::invalid_argument("mat_exp: non-square input");
  if (!std::isfinite(t)) throw std::invalid_argument("mat_exp: non-finite t");
  const std::size_t n = a.rows();

  RealMatrix x = a * t;
  const double norm = inf_norm(x);
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    x *= std::ldexp(1.0, -squarings);
  }

  // [6/6] Pade coefficients (12-k)! 6! / (12! k! (6-k)!).
  constexpr std::array<double, 7> c = {1.0,         1.0 / 2.0,    5.0 / 44.0,
                                       1.0 / 66.0,  1.0 / 792.0,  1.0 / 15840.0,
                                       1.0 / 665280.0};
  RealMatrix power = RealMatrix::identity(n);
  RealMatrix num = RealMatrix::identity(n);
  RealMatrix den = RealMatrix::identity(n);
  for (std::size_t k = 1; k < c.size(); ++k) {
    power = power * x;
    num += power * c[k];
    den += power * ((k % 2 == 0) ? c[k] : -c[k]);
  }
  RealMatrix r = solve(std::move(den), std::move(num));
  for (int s = 0; s < squarings; ++s) r = r * r;
  return r;
}

RealMatrix solve(RealMatrix a, RealMatrix b) {
  return solve_impl(std::move(a), std::move(b));
}

ComplexMatrix solve(ComplexMatrix a, ComplexMatrix b) {
  return solve_impl(std::move(a), std::move(b));
}

std::vector<Complex> poly_roots(std::span<const double> coeffs) {
  if (coeffs.size() < 2)
    throw std::invalid_argument("poly_roots: degree must be >= 1");
  if (coeffs[0] != 1.0)
    throw std::invalid_argument("poly_roots: polynomial must be monic");
  const std::size_t p = coeffs.size() - 1;
  if (p == 1) return {Complex(-coeffs[1], 0.0)};

  constexpr int kMaxIterations = 500;
  constexpr double kStepTolerance = 1e-12;
  constexpr double kEps = 2.220446049250313e-16;

  // Start on a circle of radius |a_p|^{1/p}, rotated off the real axis.
  const double radius = std::max(std::pow(std::abs(coeffs[p]), 1.0 / p), 0.5);
  std::vector<Complex> roots(p);
  for (std::size_t k = 0; k < p; ++k)
    roots[k] = std::polar(radius, 2.0 * std::numbers::pi * k / p + 0.4);

  bool converged = false;
  for (int it = 0; it < kMaxIterations && !converged; ++it) {
    bool small_steps = true;
    bool at_noise_floor = true;
    for (std::size_t k = 0; k < p; ++k) {
      const Complex value = horner(coeffs, roots[k]);
      if (std::abs(value) >
          8.0 * kEps * p * horner_abs_bound(coeffs, std::abs(roots[k])))
        at_noise_floor = false;
      Complex denom = 1.0;
      for (std::size_t j = 0; j < p; ++j)
        if (j != k) denom *= roots[k] - roots[j];
      if (denom == Complex{}) denom = Complex(kEps, kEps);
      const Complex step = value / denom;
      roots[k] -= step;
      if (std::abs(step) > kStepTolerance * (1.0 + std::abs(roots[k])))
        small_steps = false;
    }
    converged = small_steps || at_noise_floor;
  }

  for (const Complex& r : roots) {
    const double resid = std::abs(horner(coeffs, r));
    if (!(resid <= 1e-10 * std::pow(1.0 + std::abs(r), static_cast<double>(p))))
      throw NumericalError("poly_roots: Durand-Kerner did not converge");
  }
  return roots;
}

double spectral_abscissa(std::span<const double> a_coeffs) {
  const auto roots = poly_roots(monic(a_coeffs));
  double best = -std::numeric_limits<double>::infinity();
  for (const Complex& r : roots) best = std::max(best, r.real());
  return best;
}

bool is_stable(std::span<const double> a_coeffs) {
  if (a_coeffs.empty()) return false;
  for (double v : a_coeffs)
    if (!std::isfinite(v)) return false;
  return spectral_abscissa(a_coeffs) < -1e-9;
}

ComplexMatrix resolvent(const RealMatrix& a, double omega) {
  if (!a.is_square()) throw std::invalid_argument("resolvent: non-square input");
  const std::size_t n = a.rows();
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = Complex(-a(i, j), i == j ? omega : 0.0);
  return solve(std::move(m), ComplexMatrix::identity(n));
}

RealMatrix lyapunov_solve(const RealMatrix& a, double sigma2) {
  if (!a.is_square()) throw std::invalid_argument("lyapunov: non-square input");
  const std::size_t p = a.rows();
  const std::size_t n = p * p;
  // vec index i*p + j holds P(i, j); (A P)(i,j) = sum_k A(i,k) P(k,j) and
  // (P A^T)(i,j) = sum_k A(j,k) P(i,k).
  RealMatrix kron(n, n);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      const std::size_t row = i * p + j;
      for (std::size_t k = 0; k < p; ++k) {
        kron(row, k * p + j) += a(i, k);
        kron(row, i * p + k) += a(j, k);
      }
    }
  RealMatrix rhs(n, 1);
  rhs(n - 1, 0) = -sigma2;
  const RealMatrix v = solve(std::move(kron), std::move(rhs));

  RealMatrix out(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      out(i, j) = 0.5 * (v(i * p + j, 0) + v(j * p + i, 0));
  return out;
}

}  // namespace carma
