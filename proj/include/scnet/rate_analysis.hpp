#pragma once

// Analytical rate layer: average maximum achievable rate, outage
// probability, average cell rate and average user rate, all via adaptive
// double quadrature of the coverage integrand
//
//   pi * exp(-(sigma_n^2 T / P_r0) x^(alpha/2) - pi x (kappa rho(T,alpha) + 1))
//
// with kappa = 1 (all-on) or 1 - p0(mu) (on-off).

#include <stdexcept>

#include "scnet/network_model.hpp"
#include "scnet/quadrature.hpp"

namespace scnet::rate {

struct RateResult {
  double value = 0.0;               // bits/s/Hz, or a probability for outage
  double abs_error_estimate = 0.0;  // quadrature + truncation estimate
  double t_truncation = 0.0;        // outer integral cutoff used (0 if n/a)
  double x_truncation = 0.0;        // largest inner cutoff used
};

// Raised when the quadrature error budget cannot be met; carries the
// partial result.
struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, const RateResult& r)
      : std::runtime_error(what), partial(r) {}
  RateResult partial;
};

// Average maximum achievable rate C_k for the scenario's power-control
// mode. The all-on value depends on neither density.
RateResult avg_rate(const model::Scenario& scenario,
                    const model::NetworkParams& params,
                    const quad::QuadratureConfig& config);

// Outage probability P[SINR < T] = 1 - coverage(T), a single integral
// over x at fixed threshold.
RateResult outage(const model::Scenario& scenario, double threshold,
                  const model::NetworkParams& params,
                  const quad::QuadratureConfig& config);

// (1 - p0(mu)) * C_k.
RateResult cell_rate(const model::Scenario& scenario,
                     const model::NetworkParams& params,
                     const quad::QuadratureConfig& config);

// (1 - p0(mu)) / mu * C_k; equals cell_rate / mu identically.
RateResult user_rate(const model::Scenario& scenario,
                     const model::NetworkParams& params,
                     const quad::QuadratureConfig& config);

namespace detail {

// kappa = lambda_k / lambda_b for the scenario's mode.
double interferer_fraction(const model::Scenario& scenario);

// coverage(T) = P[SINR >= T] for a given interferer fraction; noise_ratio
// is sigma_n^2 / P_r0.
struct CoverageResult {
  double value = 0.0;
  double error = 0.0;
  double x_max = 0.0;
};
CoverageResult coverage(double threshold, double kappa, double noise_ratio,
                        double alpha, const quad::QuadratureConfig& config);

// C_k for a given interferer fraction (mode-independent core).
RateResult avg_rate_kernel(double kappa, double noise_ratio, double alpha,
                           const quad::QuadratureConfig& config);

}  // namespace detail

}  // namespace scnet::rate
