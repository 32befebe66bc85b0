#pragma once

// Physical-layer and point-process model: transmit-power rule, received
// power scale, cell-load pmf, void probability, active-BS density, unit
// conversions. All quantities are SI internally (watts, meters, per m^2);
// dBm and per-km^2 exist only at the CLI boundary.

#include <cstdint>
#include <string>

namespace scnet::model {

struct NetworkParams {
  double alpha = 0.0;         // path-loss exponent, > 2
  double c_pathloss = 0.0;    // channel constant C, m^alpha
  double delta = 0.0;         // received-power outage tolerance, (0,1)
  double p_r_min = 0.0;       // minimum received power, W
  double noise_power = 0.0;   // sigma_n^2, W
  double p0_circuit = 0.0;    // static on-power P0, W
  double delta_slope = 0.0;   // amplifier slope
  double p_off = 0.0;         // sleep power, W; must stay below P0

  // Throws std::invalid_argument naming the offending field and bound.
  void validate() const;
};

enum class Mode { AllOn, OnOff };

std::string mode_name(Mode mode);

struct Scenario {
  double lambda_b = 0.0;  // BS density, per m^2
  double lambda_u = 0.0;  // user density, per m^2
  Mode mode = Mode::AllOn;

  double mu() const { return lambda_u / lambda_b; }  // cell load
  void validate() const;
};

// P_r0 = (-ln(delta) / (pi Gamma(1 + 2/alpha)))^(alpha/2) * P_r_min.
double received_power_scale(const NetworkParams& params);

// P_t = P_r0 / (C lambda_b^(alpha/2)).
double min_transmit_power(double lambda_b, const NetworkParams& params);

// p0(mu) = (1 + mu/3.5)^(-3.5), the void-cell probability.
double void_probability(double mu);

// P[N_b = n] = 3.5^3.5 Gamma(n+3.5) mu^n / (Gamma(3.5) n! (mu+3.5)^(n+3.5)),
// evaluated in log space.
double user_count_pmf(std::int64_t n, double mu);

// Density of transmitting BSs: lambda_b under AllOn, (1-p0(mu)) lambda_b
// under OnOff.
double active_density(const Scenario& scenario);

// (1 - p0(mu)) / mu, extended continuously with value 1 at mu = 0.
// Strictly decreasing, bounded above by 1.
double load_sharing_factor(double mu);

enum class Unit { Dbm, Watt, PerKm2, PerM2 };

// dBm <-> W and per-km^2 <-> per-m^2; any other pair throws
// std::invalid_argument.
double convert_units(double value, Unit from, Unit to);

}  // namespace scnet::model
