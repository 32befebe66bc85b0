#pragma once

// Adaptive Gauss-Kronrod (G7/K15) panels. The rate integrals drive panel
// placement themselves (geometric panels anchored at the integrand scale),
// so the primitive here is a plain adaptive integrator over one interval
// with an error estimate.

#include <cmath>
#include <stdexcept>

namespace scnet::quad {

struct QuadratureConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  double tail_epsilon = 1e-12;  // governs outer/inner truncation

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(tail_epsilon > 0.0)) {
      throw std::invalid_argument(
          "QuadratureConfig: rel_tol, abs_tol and tail_epsilon must be "
          "strictly positive");
    }
  }
};

struct PanelResult {
  double value = 0.0;
  double error = 0.0;
};

namespace detail {

// Kronrod-15 abscissae on [0,1) plus the midpoint, with K15 and embedded G7
// weights.
inline constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
inline constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                                  0.381830050505119, 0.417959183673469};

template <class F>
PanelResult gk15(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(mid);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(mid - dx);
    const double f2 = f(mid + dx);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  return {resk * half, std::abs(resk - resg) * std::abs(half)};
}

template <class F>
PanelResult adaptive_impl(F&& f, double a, double b, double abs_tol,
                          int depth) {
  const PanelResult whole = gk15(f, a, b);
  if (whole.error <= abs_tol || depth <= 0 || !((b - a) > 1e-300)) {
    return whole;
  }
  const double mid = 0.5 * (a + b);
  const PanelResult left = adaptive_impl(f, a, mid, 0.5 * abs_tol, depth - 1);
  const PanelResult right = adaptive_impl(f, mid, b, 0.5 * abs_tol, depth - 1);
  return {left.value + right.value, left.error + right.error};
}

}  // namespace detail

// Integrates f over [a, b] to the requested absolute tolerance, bisecting
// panels until the K15-vs-G7 error estimate is met (or max_depth is hit,
// in which case the returned error reflects the shortfall).
template <class F>
PanelResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                               int max_depth = 30) {
  if (!(b > a)) return {0.0, 0.0};
  return detail::adaptive_impl(f, a, b, abs_tol, max_depth);
}

}  // namespace scnet::quad
