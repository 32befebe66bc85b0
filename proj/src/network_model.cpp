#include "scnet/network_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "scnet/special_functions.hpp"

namespace scnet::model {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

void NetworkParams::validate() const {
  require(alpha > 2.0, "alpha: must exceed 2 (got " + std::to_string(alpha) + ")");
  require(c_pathloss > 0.0,
          "c: must be positive (got " + std::to_string(c_pathloss) + ")");
  require(delta > 0.0 && delta < 1.0,
          "delta: must lie in (0, 1) (got " + std::to_string(delta) + ")");
  require(p_r_min > 0.0,
          "p_r_min: must be positive (got " + std::to_string(p_r_min) + ")");
  require(noise_power > 0.0, "noise_power: must be positive (got " +
                                 std::to_string(noise_power) + ")");
  require(p0_circuit > 0.0,
          "p0: must be positive (got " + std::to_string(p0_circuit) + ")");
  require(delta_slope >= 0.0, "delta_slope: must be nonnegative (got " +
                                  std::to_string(delta_slope) + ")");
  require(p_off > 0.0,
          "p_off: must be positive (got " + std::to_string(p_off) + ")");
  require(p0_circuit > p_off, "p0: must exceed p_off (got p0 = " +
                                  std::to_string(p0_circuit) + ", p_off = " +
                                  std::to_string(p_off) + ")");
}

std::string mode_name(Mode mode) {
  return mode == Mode::AllOn ? "all-on" : "on-off";
}

void Scenario::validate() const {
  require(lambda_b > 0.0, "lambda_b: must be positive (got " +
                              std::to_string(lambda_b) + ")");
  require(lambda_u > 0.0, "lambda_u: must be positive (got " +
                              std::to_string(lambda_u) + ")");
}

double received_power_scale(const NetworkParams& params) {
  const double g = sf::gamma_fn(1.0 + 2.0 / params.alpha);
  const double base = -std::log(params.delta) / (std::numbers::pi * g);
  return std::pow(base, 0.5 * params.alpha) * params.p_r_min;
}

double min_transmit_power(double lambda_b, const NetworkParams& params) {
  if (!(lambda_b > 0.0)) {
    throw std::invalid_argument("min_transmit_power: lambda_b must be positive");
  }
  return received_power_scale(params) /
         (params.c_pathloss * std::pow(lambda_b, 0.5 * params.alpha));
}

double void_probability(double mu) {
  if (!(mu >= 0.0)) {
    throw std::invalid_argument("void_probability: mu must be nonnegative");
  }
  // exp/log1p form stays accurate for tiny mu.
  return std::exp(-3.5 * std::log1p(mu / 3.5));
}

double user_count_pmf(std::int64_t n, double mu) {
  if (n < 0) throw std::invalid_argument("user_count_pmf: n must be >= 0");
  if (!(mu > 0.0)) throw std::invalid_argument("user_count_pmf: mu must be positive");
  const double nd = static_cast<double>(n);
  const double log_p = 3.5 * std::log(3.5) + sf::log_gamma(nd + 3.5) -
                       sf::log_gamma(3.5) - sf::log_gamma(nd + 1.0) +
                       nd * std::log(mu) - (nd + 3.5) * std::log(mu + 3.5);
  return std::exp(log_p);
}

double active_density(const Scenario& scenario) {
  scenario.validate();
  if (scenario.mode == Mode::AllOn) return scenario.lambda_b;
  return (1.0 - void_probability(scenario.mu())) * scenario.lambda_b;
}

double load_sharing_factor(double mu) {
  if (!(mu >= 0.0)) {
    throw std::invalid_argument("load_sharing_factor: mu must be nonnegative");
  }
  if (mu == 0.0) return 1.0;
  return -std::expm1(-3.5 * std::log1p(mu / 3.5)) / mu;
}

double convert_units(double value, Unit from, Unit to) {
  if (from == to) return value;
  if (from == Unit::Dbm && to == Unit::Watt) {
    return std::pow(10.0, (value - 30.0) / 10.0);
  }
  if (from == Unit::Watt && to == Unit::Dbm) {
    return 10.0 * std::log10(value) + 30.0;
  }
  if (from == Unit::PerKm2 && to == Unit::PerM2) return value * 1e-6;
  if (from == Unit::PerM2 && to == Unit::PerKm2) return value * 1e6;
  throw std::invalid_argument("convert_units: unsupported unit pair");
}

}  // namespace scnet::model
