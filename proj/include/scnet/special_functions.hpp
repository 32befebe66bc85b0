#pragma once

// Gamma, the Gauss hypergeometric function 2F1 restricted to nonpositive
// real arguments, and the interference kernel rho(T, alpha) used by the
// coverage integrals.

namespace scnet::sf {

struct Hyp2F1Args {
  double a;
  double b;
  double c;
  double z;  // z <= 0 in every supported use
};

// Gamma function for x > 0. Throws std::domain_error otherwise.
double gamma_fn(double x);

// log Gamma for x > 0.
double log_gamma(double x);

// 2F1(a, b; c; z) for z <= 0. Power series on (-1, 0], Pfaff
// transformation z -> z/(z-1) for z <= -1. c must not be zero or a
// negative integer. Throws std::domain_error outside the supported
// regime, std::runtime_error if the series fails to converge.
double hyp2f1(const Hyp2F1Args& args);

struct RhoArgs {
  double threshold;  // SINR threshold T >= 0, linear scale
  double alpha;      // path-loss exponent, > 2
};

// rho(T, alpha) = (2T/(alpha-2)) * 2F1(1, 1-2/alpha; 2-2/alpha; -T).
// Strictly increasing in T, rho(0, alpha) = 0. Valid for any T >= 0,
// including very large thresholds. Throws std::domain_error for
// alpha <= 2 or T < 0.
double rho(const RhoArgs& args);
double rho(double threshold, double alpha);

namespace detail {

// Defining power series; requires |z| < 1.
double hyp2f1_series(double a, double b, double c, double z);

// Pfaff-transformed evaluation, stable for z <= -0.5 down to moderately
// large |z|.
double hyp2f1_transformed(double a, double b, double c, double z);

// Large-threshold expansion of rho: analytic continuation valid for T > 1,
// used for T above the series switch point.
double rho_large_threshold(double threshold, double alpha);

}  // namespace detail

}  // namespace scnet::sf
