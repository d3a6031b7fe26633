#include "carma/carma_model.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "carma/error.hpp"

namespace carma {

namespace {

void fnv_mix(std::uint64_t& h, std::uint64_t word) {
  for (int byte = 0; byte < 8; ++byte) {
    h ^= (word >> (8 * byte)) & 0xffu;
    h *= 0x100000001b3ull;
  }
}

}  // namespace

CarmaSpec::CarmaSpec(std::vector<double> a, std::vector<double> b,
                     double sigma2)
    : a_(std::move(a)), b_(std::move(b)), sigma2_(sigma2) {
  const std::size_t p = a_.size();
  if (p == 0) throw ConfigError("CARMA spec: p must be >= 1 (empty a)");
  if (b_.size() > p)
    throw ConfigError("CARMA spec: p > q violated (b has more than p entries)");
  b_.resize(p, 0.0);
  for (double v : a_)
    if (!std::isfinite(v)) throw ConfigError("CARMA spec: non-finite a");
  for (double v : b_)
    if (!std::isfinite(v)) throw ConfigError("CARMA spec: non-finite b");

  int last = -1;
  for (std::size_t j = 0; j < p; ++j)
    if (b_[j] != 0.0) last = static_cast<int>(j);
  if (last < 0) throw ConfigError("CARMA spec: b_q != 0 violated (b is zero)");
  q_ = last;

  if (!(sigma2_ > 0.0) || !std::isfinite(sigma2_))
    throw ConfigError("CARMA spec: sigma2 > 0 violated (finite variance)");

  bool stable = false;
  try {
    stable = is_stable(a_);
  } catch (const NumericalError&) {
    stable = false;
  }
  if (!stable)
    throw ConfigError(
        "CARMA spec: stability violated (a root of a(z) has real part >= 0)");

  state_matrix_ = companion(a_);
  stationary_cov_ = lyapunov_solve(state_matrix_, sigma2_);
}

CarmaSpec CarmaSpec::with_orders(int p, int q, std::vector<double> a,
                                 std::vector<double> b, double sigma2) {
  if (p < 1 || static_cast<std::size_t>(p) != a.size())
    throw ConfigError("CARMA spec: p does not match the length of a");
  if (!(q >= 0 && q < p)) throw ConfigError("CARMA spec: p > q >= 0 violated");
  CarmaSpec spec(std::move(a), std::move(b), sigma2);
  if (spec.q() != q) {
    std::ostringstream os;
    os << "CARMA spec: b_q != 0 violated (declared q = " << q
       << ", last nonzero b index = " << spec.q() << ")";
    throw ConfigError(os.str());
  }
  return spec;
}

CarmaSpec CarmaSpec::with_sigma2(double sigma2) const {
  return CarmaSpec(a_, b_, sigma2);
}

std::uint64_t CarmaSpec::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  fnv_mix(h, static_cast<std::uint64_t>(p()));
  fnv_mix(h, static_cast<std::uint64_t>(q_));
  for (double v : a_) fnv_mix(h, std::bit_cast<std::uint64_t>(v));
  for (double v : b_) fnv_mix(h, std::bit_cast<std::uint64_t>(v));
  fnv_mix(h, std::bit_cast<std::uint64_t>(sigma2_));
  return h;
}

Complex poly_a(const CarmaSpec& spec, Complex z) {
  Complex acc = 1.0;
  for (double c : spec.a()) acc = acc * z + c;
  return acc;
}

Complex poly_b(const CarmaSpec& spec, Complex z) {
  const auto& b = spec.b();
  Complex acc = 0.0;
  for (std::size_t k = b.size(); k-- > 0;) acc = acc * z + b[k];
  return acc;
}

Complex transfer(const CarmaSpec& spec, double omega) {
  const Complex iw(0.0, omega);
  return poly_b(spec, iw) / poly_a(spec, iw);
}

double spectral_density(const CarmaSpec& spec, double omega) {
  return spec.sigma2() / (2.0 * std::numbers::pi) *
         std::norm(transfer(spec, omega));
}

RealMatrix stationary_covariance(const CarmaSpec& spec) {
  return spec.stationary_covariance();
}

double autocovariance(const CarmaSpec& spec, double lag) {
  const RealMatrix e = mat_exp(spec.state_matrix(), std::abs(lag));
  const RealMatrix m = e * spec.stationary_covariance();
  const auto& b = spec.b();
  double acc = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) acc += b[i] * m(i, j) * b[j];
  return acc;
}

LimitLaw limit_law(const CarmaSpec& spec, double omega, Statistic statistic) {
  const double gain = spec.sigma2() * std::norm(transfer(spec, omega));
  switch (statistic) {
    case Statistic::ReIm:
      if (!(omega > 0.0)) throw ConfigError("limit_law: ReIm needs omega > 0");
      return {omega, LawKind::ComplexIsotropicNormal, 0.5 * gain};
    case Statistic::ModulusSquared:
      if (!(omega > 0.0))
        throw ConfigError("limit_law: ModulusSquared needs omega > 0");
      return {omega, LawKind::ExponentialModulus, gain};
    case Statistic::ZeroFreq:
      if (omega != 0.0) throw ConfigError("limit_law: ZeroFreq needs omega = 0");
      return {omega, LawKind::RealNormal, gain};
    case Statistic::ZeroFreqChiSq:
      if (omega != 0.0)
        throw ConfigError("limit_law: ZeroFreqChiSq needs omega = 0");
      return {omega, LawKind::ChiSquare1, gain};
  }
  throw ConfigError("limit_law: unknown statistic");
}

std::string to_string(Statistic s) {
  switch (s) {
    case Statistic::ReIm: return "reim";
    case Statistic::ModulusSquared: return "mod2";
    case Statistic::ZeroFreq: return "zero";
    case Statistic::ZeroFreqChiSq: return "zero_chisq";
  }
  return "?";
}

std::string to_string(LawKind k) {
  switch (k) {
    case LawKind::RealNormal: return "normal";
    case LawKind::ComplexIsotropicNormal: return "complex_normal";
    case LawKind::ExponentialModulus: return "exponential";
    case LawKind::ChiSquare1: return "chisq1";
  }
  return "?";
}

}  // namespace carma
