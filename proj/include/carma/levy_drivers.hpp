#pragma once

#include <random>
#include <string>
#include <variant>

#include "carma/rng.hpp"

namespace carma {

struct Brownian {
  double volatility = 1.0;
  friend bool operator==(const Brownian&, const Brownian&) = default;
};

/// Difference of two independent Gamma processes, each with shape
/// `shape_rate` per unit time and scale `scale`.
struct VarianceGamma {
  double shape_rate = 1.0;
  double scale = 4.0;
  friend bool operator==(const VarianceGamma&, const VarianceGamma&) = default;
};

/// Difference of two independent Poisson processes of intensity `rate_each`,
/// i.e. compound Poisson with rate 2 * rate_each and jumps +-jump_size.
struct TwoSidedPoisson {
  double rate_each = 10.0;
  double jump_size = 1.0;
  friend bool operator==(const TwoSidedPoisson&, const TwoSidedPoisson&) =
      default;
};

/// L = 0. Turns the Euler scheme into a deterministic ODE solver.
struct ZeroDriver {
  friend bool operator==(const ZeroDriver&, const ZeroDriver&) = default;
};

using DriverSpec = std::variant<Brownian, VarianceGamma, TwoSidedPoisson, ZeroDriver>;

/// Throws ConfigError unless every rate/scale parameter is finite and > 0.
void validate(const DriverSpec& driver);

/// Var(L(1)).
double variance_rate(const DriverSpec& driver);

/// Config tag: "brownian", "vg", "poisson2" or "zero".
std::string driver_tag(const DriverSpec& driver);

/// Draws increments L(t + dt) - L(t). Holds the distribution objects so that
/// cached state (e.g. the second Box-Muller normal) stays with one stream.
/// Single owner; one sampler per RngStream.
class IncrementSampler {
 public:
  explicit IncrementSampler(DriverSpec driver);

  double operator()(double dt, RngStream& rng);

  const DriverSpec& driver() const { return driver_; }

 private:
  DriverSpec driver_;
  std::normal_distribution<double> normal_;
  std::gamma_distribution<double> gamma_;
  std::poisson_distribution<long long> poisson_;
};

/// One increment with a fresh sampler. Throws std::invalid_argument on dt < 0.
double sample_increment(const DriverSpec& driver, double dt, RngStream& rng);

}  // namespace carma
