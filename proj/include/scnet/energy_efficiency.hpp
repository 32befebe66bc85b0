#pragma once

// Energy-efficiency objectives eta_1 / eta_2 and the optimal-BS-density
// search: coarse log-spaced grid scan followed by golden-section
// refinement, with a unimodality flag from the grid.

#include <functional>
#include <string>
#include <vector>

#include "scnet/network_model.hpp"
#include "scnet/rate_analysis.hpp"

namespace scnet::energy {

struct EfficiencyResult {
  double eta = 0.0;         // bits/s/Hz per watt
  double cell_rate = 0.0;   // bits/s/Hz
  double power_draw = 0.0;  // average watts per BS
  model::Mode mode = model::Mode::AllOn;
  double quad_error = 0.0;  // propagated from the rate quadrature
};

struct SearchConfig {
  double lambda_b_min = 0.0;      // 0 -> defaults to lambda_u / 100
  int grid_points = 64;           // coarse log-spaced scan
  double rel_width_tol = 1e-4;    // golden-section stopping width
};

struct TracePoint {
  double lambda_b = 0.0;
  double eta = 0.0;
};

struct Optimum {
  double lambda_b_star = 0.0;
  double eta_star = 0.0;
  double mu_star = 0.0;
  bool unimodal_grid = true;  // single-peaked coarse scan
  std::vector<TracePoint> trace;
};

// P_on = P0 + Delta * P_t(lambda_b).
double power_on(double lambda_b, const model::NetworkParams& params);

// eta_1 = (1-p0) C_1 / P_on;
// eta_2 = (1-p0) C_2 / ((1-p0) P_on + p0 P_off).
EfficiencyResult efficiency(const model::Scenario& scenario,
                            const model::NetworkParams& params,
                            const quad::QuadratureConfig& config);

// Generic scalar maximizer over (lower, upper]: grid scan + golden-section
// refinement. Flat objectives resolve to the largest feasible abscissa.
Optimum maximize_scalar(const std::function<double(double)>& objective,
                        double lower, double upper, const SearchConfig& search);

// Solves max eta_k(lambda_b) s.t. lambda_b <= lambda_u over
// (search.lambda_b_min, lambda_u].
Optimum optimize_density(double lambda_u, model::Mode mode,
                         const model::NetworkParams& params,
                         const quad::QuadratureConfig& config,
                         const SearchConfig& search = {});

// Transformed objective pieces used by the diagnostic monotonicity tests;
// the solver does not consume them.
struct AppendixObjectives {
  double g = 0.0;  // P0 + Delta P_r0 mu^(alpha/2) / (lambda_u^(alpha/2) C)
  double q = 0.0;  // 1 - p0(mu)
  double v = 0.0;  // on-off counterpart of g scaled by lambda_u^(alpha/2)
};
AppendixObjectives appendix_objectives(double mu, double lambda_u,
                                       const model::NetworkParams& params);

struct CurvePoint {
  double lambda_u = 0.0;
  bool ok = false;
  Optimum optimum;
  std::string message;  // set when the point failed
};

// optimize_density per grid point; failures are recorded and the curve
// continues.
std::vector<CurvePoint> optimal_density_curve(
    const std::vector<double>& lambda_u_grid, model::Mode mode,
    const model::NetworkParams& params, const quad::QuadratureConfig& config,
    const SearchConfig& search = {});

}  // namespace scnet::energy
