#include "scnet/energy_efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scnet::energy {

namespace {

// Tolerance for "beyond noise" when judging grid unimodality: coarse-grid
// wiggles below this fraction of the peak are ignored.
constexpr double kNoiseFraction = 1e-6;

}  // namespace

double power_on(double lambda_b, const model::NetworkParams& params) {
  return params.p0_circuit +
         params.delta_slope * model::min_transmit_power(lambda_b, params);
}

EfficiencyResult efficiency(const model::Scenario& scenario,
                            const model::NetworkParams& params,
                            const quad::QuadratureConfig& config) {
  const auto cr = rate::cell_rate(scenario, params, config);
  const double p_on = power_on(scenario.lambda_b, params);

  EfficiencyResult out;
  out.mode = scenario.mode;
  out.cell_rate = cr.value;
  out.quad_error = cr.abs_error_estimate;
  if (scenario.mode == model::Mode::AllOn) {
    out.power_draw = p_on;
  } else {
    const double p0 = model::void_probability(scenario.mu());
    out.power_draw = (1.0 - p0) * p_on + p0 * params.p_off;
  }
  out.eta = out.cell_rate / out.power_draw;
  return out;
}

Optimum maximize_scalar(const std::function<double(double)>& objective,
                        double lower, double upper,
                        const SearchConfig& search) {
  if (!(lower > 0.0) || !(upper > lower)) {
    throw std::invalid_argument("maximize_scalar: need 0 < lower < upper");
  }
  const int n = std::max(search.grid_points, 4);

  Optimum out;
  auto eval = [&](double x) {
    const double y = objective(x);
    out.trace.push_back({x, y});
    return y;
  };

  // Coarse log-spaced scan, endpoints included.
  std::vector<double> xs(n), ys(n);
  const double log_lo = std::log(lower);
  const double log_hi = std::log(upper);
  for (int i = 0; i < n; ++i) {
    xs[i] = std::exp(log_lo + (log_hi - log_lo) * i / (n - 1));
    ys[i] = eval(xs[i]);
  }
  xs[n - 1] = upper;  // guard against exp/log roundoff at the boundary

  int best = 0;
  for (int i = 1; i < n; ++i) {
    if (ys[i] >= ys[best]) best = i;  // ties resolve to the larger abscissa
  }

  // Single-peaked up to noise? Walk outward from the best point.
  const double eps = kNoiseFraction * std::max(std::abs(ys[best]), 1e-300);
  out.unimodal_grid = true;
  for (int i = 0; i + 1 <= best; ++i) {
    if (ys[i] > ys[i + 1] + eps) out.unimodal_grid = false;
  }
  for (int i = best; i + 1 < n; ++i) {
    if (ys[i + 1] > ys[i] + eps) out.unimodal_grid = false;
  }

  // Golden-section refinement inside the bracketing neighbours.
  double a = xs[std::max(best - 1, 0)];
  double b = xs[std::min(best + 1, n - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while ((b - a) > search.rel_width_tol * b) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
  }

  // The reported maximizer is the best evaluated point; exact ties go to
  // the largest abscissa (flat objectives resolve to the upper boundary).
  const TracePoint* winner = &out.trace.front();
  for (const auto& p : out.trace) {
    if (p.eta > winner->eta || (p.eta == winner->eta && p.lambda_b > winner->lambda_b)) {
      winner = &p;
    }
  }
  out.lambda_b_star = winner->lambda_b;
  out.eta_star = winner->eta;
  return out;
}

Optimum optimize_density(double lambda_u, model::Mode mode,
                         const model::NetworkParams& params,
                         const quad::QuadratureConfig& config,
                         const SearchConfig& search) {
  if (!(lambda_u > 0.0)) {
    throw std::invalid_argument("optimize_density: lambda_u must be positive");
  }
  const double lower =
      search.lambda_b_min > 0.0 ? search.lambda_b_min : lambda_u / 100.0;
  if (!(lower < lambda_u)) {
    throw std::invalid_argument(
        "optimize_density: search interval is empty (lambda_b_min >= lambda_u)");
  }
  auto objective = [&](double lambda_b) {
    return efficiency({lambda_b, lambda_u, mode}, params, config).eta;
  };
  Optimum out = maximize_scalar(objective, lower, lambda_u, search);
  out.mu_star = lambda_u / out.lambda_b_star;
  return out;
}

AppendixObjectives appendix_objectives(double mu, double lambda_u,
                                       const model::NetworkParams& params) {
  if (!(mu > 0.0)) {
    throw std::invalid_argument("appendix_objectives: mu must be positive");
  }
  const double p_r0 = model::received_power_scale(params);
  const double lu_pow = std::pow(lambda_u, 0.5 * params.alpha);
  const double mu_pow = std::pow(mu, 0.5 * params.alpha);
  const double p0v = model::void_probability(mu);

  AppendixObjectives out;
  out.g = params.p0_circuit +
          params.delta_slope * p_r0 * mu_pow / (lu_pow * params.c_pathloss);
  out.q = 1.0 - p0v;
  const double on_term =
      lu_pow * params.p0_circuit +
      params.delta_slope * p_r0 * mu_pow / params.c_pathloss;
  out.v = on_term - p0v * (on_term - lu_pow * params.p_off);
  return out;
}

std::vector<CurvePoint> optimal_density_curve(
    const std::vector<double>& lambda_u_grid, model::Mode mode,
    const model::NetworkParams& params, const quad::QuadratureConfig& config,
    const SearchConfig& search) {
  std::vector<CurvePoint> curve;
  curve.reserve(lambda_u_grid.size());
  for (double lu : lambda_u_grid) {
    CurvePoint point;
    point.lambda_u = lu;
    try {
      point.optimum = optimize_density(lu, mode, params, config, search);
      point.ok = true;
    } catch (const std::exception& e) {
      point.ok = false;
      point.message = e.what();
    }
    curve.push_back(std::move(point));
  }
  return curve;
}

}  // namespace scnet::energy
