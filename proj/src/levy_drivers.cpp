#include "carma/levy_drivers.hpp"

#include <cmath>
#include <stdexcept>

#include "carma/error.hpp"

namespace carma {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw ConfigError(std::string("driver: ") + what + " must be > 0");
}

}  // namespace

void validate(const DriverSpec& driver) {
  std::visit(Overloaded{
                 [](const Brownian& d) { require_positive(d.volatility, "volatility"); },
                 [](const VarianceGamma& d) {
                   require_positive(d.shape_rate, "shape_rate");
                   require_positive(d.scale, "scale");
                 },
                 [](const TwoSidedPoisson& d) {
                   require_positive(d.rate_each, "rate_each");
                   require_positive(d.jump_size, "jump_size");
                 },
                 [](const ZeroDriver&) {},
             },
             driver);
}

double variance_rate(const DriverSpec& driver) {
  return std::visit(
      Overloaded{
          [](const Brownian& d) { return d.volatility * d.volatility; },
          [](const VarianceGamma& d) { return 2.0 * d.shape_rate * d.scale * d.scale; },
          [](const TwoSidedPoisson& d) {
            return 2.0 * d.rate_each * d.jump_size * d.jump_size;
          },
          [](const ZeroDriver&) { return 0.0; },
      },
      driver);
}

std::string driver_tag(const DriverSpec& driver) {
  return std::visit(Overloaded{
                        [](const Brownian&) { return std::string("brownian"); },
                        [](const VarianceGamma&) { return std::string("vg"); },
                        [](const TwoSidedPoisson&) { return std::string("poisson2"); },
                        [](const ZeroDriver&) { return std::string("zero"); },
                    },
                    driver);
}

IncrementSampler::IncrementSampler(DriverSpec driver) : driver_(std::move(driver)) {
  validate(driver_);
}

double IncrementSampler::operator()(double dt, RngStream& rng) {
  if (dt < 0.0) throw std::invalid_argument("increment: negative dt");
  if (dt == 0.0) return 0.0;
  return std::visit(
      Overloaded{
          [&](const Brownian& d) {
            return d.volatility * std::sqrt(dt) * normal_(rng);
          },
          [&](const VarianceGamma& d) {
            // Shapes here are ~1e-3; libstdc++ boosts shape < 1 via
            // Gamma(a) = Gamma(a + 1) * U^{1/a}.
            const std::gamma_distribution<double>::param_type shape(d.shape_rate * dt,
                                                                    d.scale);
            const double up = gamma_(rng, shape);
            const double down = gamma_(rng, shape);
            return up - down;
          },
          [&](const TwoSidedPoisson& d) {
            const std::poisson_distribution<long long>::param_type mean(d.rate_each * dt);
            const long long up = poisson_(rng, mean);
            const long long down = poisson_(rng, mean);
            return d.jump_size * static_cast<double>(up - down);
          },
          [](const ZeroDriver&) { return 0.0; },
      },
      driver_);
}

double sample_increment(const DriverSpec& driver, double dt, RngStream& rng) {
  IncrementSampler sampler(driver);
  return sampler(dt, rng);
}

}  // namespace carma
