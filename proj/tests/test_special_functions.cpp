#include "scnet/special_functions.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "reference_values.hpp"

using namespace scnet;
using doctest::Approx;

namespace {

// Test-local adaptive Simpson, independent of the library's quadrature.
double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double simpson(const std::function<double(double)>& f, double a, double b,
               double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 40);
}

// rho via its integral representation, as an oracle independent of the
// series implementation:
//   rho(T, alpha) = T^(2/alpha) * Int_{T^(-2/alpha)}^inf du / (1 + u^(alpha/2))
double rho_by_quadrature(double T, double alpha) {
  const double lo = std::pow(T, -2.0 / alpha);
  const auto f = [&](double u) { return 1.0 / (1.0 + std::pow(u, 0.5 * alpha)); };
  const double hi = std::max(8.0, 4.0 * lo);
  const double head = simpson(f, lo, hi, 1e-14);
  // Tail integrated term by term: 1/(1+u^p) = sum (-1)^(k+1) u^(-kp) for
  // u^p > 1, so Int_hi^inf = sum (-1)^(k+1) hi^(1-kp)/(kp-1).
  const double p = 0.5 * alpha;
  double tail = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double term =
        (k % 2 ? 1.0 : -1.0) * std::pow(hi, 1.0 - k * p) / (k * p - 1.0);
    tail += term;
    if (std::abs(term) < 1e-16 * std::abs(tail)) break;
  }
  return std::pow(T, 2.0 / alpha) * (head + tail);
}

}  // namespace

TEST_CASE("gamma_fn: fixtures") {
  CHECK(sf::gamma_fn(1.0) == Approx(1.0).epsilon(1e-14));
  CHECK(sf::gamma_fn(3.5) ==
        Approx(15.0 * std::sqrt(std::numbers::pi) / 8.0).epsilon(1e-13));
  CHECK(sf::gamma_fn(3.5) == Approx(testref::kGamma3p5).epsilon(1e-13));
  CHECK(sf::gamma_fn(1.0 + 2.0 / 3.67) ==
        Approx(testref::kGamma1p2OverAlpha).epsilon(1e-13));
  CHECK(sf::gamma_fn(15.25) == Approx(testref::kGamma15p25).epsilon(1e-12));
  CHECK(sf::gamma_fn(0.123) == Approx(testref::kGamma0p123).epsilon(1e-12));
}

TEST_CASE("gamma_fn: recurrence Gamma(x+1) = x Gamma(x)") {
  for (double x = 0.5; x <= 20.0; x += 0.25) {
    CHECK(sf::gamma_fn(x + 1.0) == Approx(x * sf::gamma_fn(x)).epsilon(1e-12));
  }
}

TEST_CASE("gamma_fn: rejects nonpositive arguments") {
  CHECK_THROWS_AS(sf::gamma_fn(0.0), std::domain_error);
  CHECK_THROWS_AS(sf::gamma_fn(-2.5), std::domain_error);
  CHECK_THROWS_AS(sf::log_gamma(-1.0), std::domain_error);
}

TEST_CASE("hyp2f1: fixtures") {
  CHECK(sf::hyp2f1({0.3, 0.7, 1.1, 0.0}) == 1.0);
  // classical identity 2F1(1,1;2;z) = -ln(1-z)/z
  CHECK(sf::hyp2f1({1.0, 1.0, 2.0, -1.0}) ==
        Approx(std::numbers::ln2).epsilon(1e-12));
  CHECK(sf::hyp2f1({1.0, 0.5, 1.5, -4.0}) ==
        Approx(testref::kHyp_1_05_15_m4).epsilon(1e-11));
  const double b = 1.0 - 2.0 / 3.67;
  const double c = 2.0 - 2.0 / 3.67;
  CHECK(sf::hyp2f1({1.0, b, c, -std::sqrt(10.0)}) ==
        Approx(testref::kHypFamilyAtMSqrt10).epsilon(1e-11));
  CHECK(sf::hyp2f1({1.0, b, c, -0.75}) ==
        Approx(testref::kHypFamilyAtM075).epsilon(1e-11));
}

TEST_CASE("hyp2f1: series and transformed routes agree on the overlap") {
  const double b = 1.0 - 2.0 / 3.67;
  const double c = 2.0 - 2.0 / 3.67;
  for (double z = -0.999; z <= -0.5; z += 0.0331) {
    const double s = sf::detail::hyp2f1_series(1.0, b, c, z);
    const double t = sf::detail::hyp2f1_transformed(1.0, b, c, z);
    CHECK(s == Approx(t).epsilon(1e-9));
  }
}

TEST_CASE("hyp2f1: domain errors") {
  CHECK_THROWS_AS(sf::hyp2f1({1.0, 0.5, 1.5, 0.25}), std::domain_error);
  CHECK_THROWS_AS(sf::hyp2f1({1.0, 0.5, 0.0, -1.0}), std::domain_error);
  CHECK_THROWS_AS(sf::hyp2f1({1.0, 0.5, -3.0, -1.0}), std::domain_error);
}

TEST_CASE("rho: fixtures and closed forms") {
  CHECK(sf::rho(0.0, 3.67) == 0.0);
  CHECK(sf::rho(1.0, 4.0) == Approx(std::numbers::pi / 4.0).epsilon(1e-11));
  const double T = std::sqrt(10.0);
  CHECK(sf::rho(T, 4.0) ==
        Approx(std::sqrt(T) * std::atan(std::sqrt(T))).epsilon(1e-11));
  CHECK(sf::rho(T, 3.67) == Approx(testref::kRhoSqrt10Alpha367).epsilon(1e-11));
  CHECK(sf::rho(0.25, 3.67) == Approx(testref::kRho025Alpha367).epsilon(1e-11));
  CHECK(sf::rho(std::pow(2.0, 40), 3.67) ==
        Approx(testref::kRho2p40Alpha367).epsilon(1e-11));
}

TEST_CASE("rho: agrees with its integral representation") {
  for (double T : {0.1, 0.4, 0.9, 2.0, std::sqrt(10.0), 7.0, 25.0, 400.0}) {
    CHECK(sf::rho(T, 3.67) == Approx(rho_by_quadrature(T, 3.67)).epsilon(1e-9));
  }
  CHECK(sf::rho(2.0, 5.2) == Approx(rho_by_quadrature(2.0, 5.2)).epsilon(1e-9));
}

TEST_CASE("rho: evaluation routes agree at the switch points") {
  const double ba = 1.0 - 2.0 / 3.67;
  const double ca = 2.0 - 2.0 / 3.67;
  // series vs transformed near T = 0.5
  const double front05 = 2.0 * 0.5 / (3.67 - 2.0);
  CHECK(front05 * sf::detail::hyp2f1_series(1.0, ba, ca, -0.5) ==
        Approx(front05 * sf::detail::hyp2f1_transformed(1.0, ba, ca, -0.5))
            .epsilon(1e-10));
  // transformed vs large-threshold expansion around T = 8
  for (double T : {6.0, 8.0, 12.0}) {
    const double front = 2.0 * T / (3.67 - 2.0);
    CHECK(front * sf::detail::hyp2f1_transformed(1.0, ba, ca, -T) ==
          Approx(sf::detail::rho_large_threshold(T, 3.67)).epsilon(1e-10));
  }
}

TEST_CASE("rho: monotone nondecreasing in T") {
  for (double alpha : {2.5, 3.0, 3.67, 4.0, 6.0}) {
    double prev = sf::rho(std::pow(10.0, -2.0), alpha);
    for (int k = -7; k <= 8; ++k) {
      const double T = std::pow(10.0, k / 4.0);
      const double r = sf::rho(T, alpha);
      CHECK(r >= prev);
      prev = r;
    }
  }
}

TEST_CASE("rho: monotone nonincreasing in alpha") {
  for (double T : {0.1, 1.0, 10.0}) {
    double prev = sf::rho(T, 2.5);
    for (double alpha = 2.6; alpha <= 6.0; alpha += 0.1) {
      const double r = sf::rho(T, alpha);
      CHECK(r <= prev + 1e-14);
      prev = r;
    }
  }
}

TEST_CASE("rho: domain errors") {
  CHECK_THROWS_AS(sf::rho(1.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(sf::rho(1.0, 1.5), std::domain_error);
  CHECK_THROWS_AS(sf::rho(-0.5, 3.67), std::domain_error);
}
