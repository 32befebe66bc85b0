#pragma once

#include <cmath>

#include "scnet/network_model.hpp"
#include "scnet/special_functions.hpp"

namespace scnet::testref {

// Default picocell parameter set used throughout the tests.
inline model::NetworkParams section5_params() {
  model::NetworkParams p;
  p.alpha = 3.67;
  p.c_pathloss = 4.33e-6;
  p.delta = 0.01;
  p.p_r_min = 1e-13;                    // -100 dBm
  p.noise_power = std::pow(10.0, -12.5);  // -95 dBm
  p.p0_circuit = 6.8;
  p.delta_slope = 4.0;
  p.p_off = 4.3;
  return p;
}

inline constexpr double kLambdaU = 370e-6;  // per m^2

}  // namespace scnet::testref
