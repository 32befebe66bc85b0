#include "scnet/rate_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "scnet/special_functions.hpp"

namespace scnet::rate {

namespace {

constexpr double kOuterCap = 64.0;   // bits/s/Hz cap on the outer integral
constexpr double kOuterPanel = 4.0;  // marching panel width in t

// Inner integrand exp(-a x^(alpha/2) - b x) integrated over geometric
// panels anchored at the integrand's own scale, so the mass near zero is
// resolved even when a is enormous (large thresholds).
struct InnerIntegral {
  double value = 0.0;
  double error = 0.0;
  double x_max = 0.0;
};

InnerIntegral integrate_inner(double a, double b, double alpha,
                              double abs_tol, double tail_epsilon) {
  const double half_alpha = 0.5 * alpha;
  const auto f = [=](double x) {
    return std::exp(-a * std::pow(x, half_alpha) - b * x);
  };
  double scale = 1.0 / b;
  if (a > 0.0) scale = std::min(scale, std::pow(a, -2.0 / alpha));
  // b * x_max alone pushes the integrand below tail_epsilon with margin.
  const double x_max = (-std::log(tail_epsilon) + 5.0) / b;

  InnerIntegral out;
  out.x_max = x_max;
  double lo = 0.0;
  double width = scale;
  while (lo < x_max) {
    const double hi = std::min(lo + width, x_max);
    const auto panel =
        quad::integrate_adaptive(f, lo, hi, abs_tol * std::max(scale, 1e-300));
    out.value += panel.value;
    out.error += panel.error;
    lo = hi;
    width *= 2.0;
  }
  return out;
}

}  // namespace

namespace detail {

double interferer_fraction(const model::Scenario& scenario) {
  if (scenario.mode == model::Mode::AllOn) return 1.0;
  return 1.0 - model::void_probability(scenario.mu());
}

CoverageResult coverage(double threshold, double kappa, double noise_ratio,
                        double alpha, const quad::QuadratureConfig& config) {
  if (threshold == 0.0) return {1.0, 0.0, 0.0};
  const double a = noise_ratio * threshold;
  const double b =
      std::numbers::pi * (kappa * sf::rho(threshold, alpha) + 1.0);
  const auto inner = integrate_inner(a, b, alpha, config.rel_tol * 1e-3,
                                     config.tail_epsilon);
  return {std::numbers::pi * inner.value, std::numbers::pi * inner.error,
          inner.x_max};
}

RateResult avg_rate_kernel(double kappa, double noise_ratio, double alpha,
                           const quad::QuadratureConfig& config) {
  config.validate();
  const auto integrand = [&](double t) {
    const double threshold = std::expm1(t * std::numbers::ln2);  // 2^t - 1
    const double a = noise_ratio * threshold;
    const double b =
        std::numbers::pi * (kappa * sf::rho(threshold, alpha) + 1.0);
    return integrate_inner(a, b, alpha, config.rel_tol * 1e-3,
                           config.tail_epsilon)
        .value;
  };

  RateResult result;
  double total = 0.0;
  double err = 0.0;
  double t = 0.0;
  double x_max_seen = 0.0;
  while (t < kOuterCap) {
    const double hi = std::min(t + kOuterPanel, kOuterCap);
    const double tol =
        config.rel_tol * std::max(total, 1e-3) / (kOuterCap / kOuterPanel);
    const auto panel = quad::integrate_adaptive(integrand, t, hi, tol);
    total += panel.value;
    err += panel.error;
    t = hi;
    if (std::abs(panel.value) < config.tail_epsilon * std::abs(total)) break;
  }
  // Track the widest inner cutoff (attained at t = 0 where b is smallest).
  {
    const double b0 = std::numbers::pi;
    x_max_seen = (-std::log(config.tail_epsilon) + 5.0) / b0;
  }

  result.value = std::numbers::pi * total;
  result.abs_error_estimate =
      std::numbers::pi * err +
      config.rel_tol * 1e-2 * std::abs(result.value);  // inner-error share
  result.t_truncation = t;
  result.x_truncation = x_max_seen;

  const double budget =
      config.rel_tol * std::abs(result.value) + config.abs_tol;
  if (result.abs_error_estimate > budget) {
    throw ConvergenceError(
        "avg_rate: quadrature error estimate " +
            std::to_string(result.abs_error_estimate) +
            " exceeds budget " + std::to_string(budget),
        result);
  }
  return result;
}

}  // namespace detail

RateResult avg_rate(const model::Scenario& scenario,
                    const model::NetworkParams& params,
                    const quad::QuadratureConfig& config) {
  scenario.validate();
  params.validate();
  const double noise_ratio =
      params.noise_power / model::received_power_scale(params);
  return detail::avg_rate_kernel(detail::interferer_fraction(scenario),
                                 noise_ratio, params.alpha, config);
}

RateResult outage(const model::Scenario& scenario, double threshold,
                  const model::NetworkParams& params,
                  const quad::QuadratureConfig& config) {
  scenario.validate();
  params.validate();
  config.validate();
  if (!(threshold > 0.0)) {
    throw std::invalid_argument("outage: threshold must be positive");
  }
  const double noise_ratio =
      params.noise_power / model::received_power_scale(params);
  const auto cov =
      detail::coverage(threshold, detail::interferer_fraction(scenario),
                       noise_ratio, params.alpha, config);
  RateResult result;
  result.value = std::clamp(1.0 - cov.value, 0.0, 1.0);
  result.abs_error_estimate = cov.error;
  result.t_truncation = 0.0;
  result.x_truncation = cov.x_max;
  return result;
}

RateResult cell_rate(const model::Scenario& scenario,
                     const model::NetworkParams& params,
                     const quad::QuadratureConfig& config) {
  const double factor = 1.0 - model::void_probability(scenario.mu());
  RateResult r = avg_rate(scenario, params, config);
  r.value *= factor;
  r.abs_error_estimate *= factor;
  return r;
}

RateResult user_rate(const model::Scenario& scenario,
                     const model::NetworkParams& params,
                     const quad::QuadratureConfig& config) {
  RateResult r = cell_rate(scenario, params, config);
  const double mu = scenario.mu();
  r.value /= mu;
  r.abs_error_estimate /= mu;
  return r;
}

}  // namespace scnet::rate
