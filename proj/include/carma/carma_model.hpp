#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "carma/linalg.hpp"

namespace carma {

/// CARMA(p, q) model: a(z) = z^p + a_1 z^{p-1} + ... + a_p,
/// b(z) = b_0 + b_1 z + ... + b_{p-1} z^{p-1}, driver variance sigma2 per
/// unit time. Validated eagerly; an instance always satisfies p > q >= 0,
/// b_q != 0, b_j = 0 for j > q, stability of a(z) and sigma2 > 0.
class CarmaSpec {
 public:
  /// b may be shorter than p; it is zero-padded to length p. q is inferred
  /// as the index of the last nonzero entry of b.
  CarmaSpec(std::vector<double> a, std::vector<double> b, double sigma2);

  /// Same, but q is checked against the declared (p, q) pair.
  static CarmaSpec with_orders(int p, int q, std::vector<double> a,
                               std::vector<double> b, double sigma2);

  int p() const { return static_cast<int>(a_.size()); }
  int q() const { return q_; }
  const std::vector<double>& a() const { return a_; }
  const std::vector<double>& b() const { return b_; }
  double sigma2() const { return sigma2_; }

  /// A matrix (companion of a(z)).
  const RealMatrix& state_matrix() const { return state_matrix_; }
  /// Stationary state covariance P_X.
  const RealMatrix& stationary_covariance() const { return stationary_cov_; }

  /// Same model with a different driver variance.
  CarmaSpec with_sigma2(double sigma2) const;

  /// Stable 64-bit FNV-1a hash of (p, q, a, b, sigma2).
  std::uint64_t hash() const;

  friend bool operator==(const CarmaSpec& l, const CarmaSpec& r) {
    return l.a_ == r.a_ && l.b_ == r.b_ && l.sigma2_ == r.sigma2_;
  }

 private:
  std::vector<double> a_;
  std::vector<double> b_;
  double sigma2_ = 0.0;
  int q_ = 0;
  RealMatrix state_matrix_;
  RealMatrix stationary_cov_;
};

Complex poly_a(const CarmaSpec& spec, Complex z);
Complex poly_b(const CarmaSpec& spec, Complex z);

/// H(w) = b(iw) / a(iw).
Complex transfer(const CarmaSpec& spec, double omega);

/// f_Y(w) = sigma2 / (2 pi) |H(w)|^2.
double spectral_density(const CarmaSpec& spec, double omega);

/// P_X, the solution of A P + P A^T + sigma2 e e^T = 0.
RealMatrix stationary_covariance(const CarmaSpec& spec);

/// gamma_Y(h) = b^T e^{A|h|} P_X b.
double autocovariance(const CarmaSpec& spec, double lag);

enum class Statistic { ReIm, ModulusSquared, ZeroFreq, ZeroFreqChiSq };

enum class LawKind {
  RealNormal,              // N(0, parameter)
  ComplexIsotropicNormal,  // Re, Im iid N(0, parameter)
  ExponentialModulus,      // Exp with mean = parameter
  ChiSquare1,              // x^2 / parameter ~ chi^2(1)
};

struct LimitLaw {
  double frequency = 0.0;
  LawKind kind = LawKind::RealNormal;
  double parameter = 0.0;
};

/// Large-T law of the normalized truncated Fourier transform at `omega`.
/// ReIm and ModulusSquared need omega > 0; the ZeroFreq kinds need omega == 0.
LimitLaw limit_law(const CarmaSpec& spec, double omega, Statistic statistic);

std::string to_string(Statistic s);
std::string to_string(LawKind k);

}  // namespace carma
