#include "scnet/network_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "reference_values.hpp"
#include "test_params.hpp"

using namespace scnet;
using doctest::Approx;

TEST_CASE("received_power_scale: unit base and vanishing limits") {
  auto p = testref::section5_params();
  // delta chosen so the exponent base equals one
  p.delta = std::exp(-std::numbers::pi * sf::gamma_fn(1.0 + 2.0 / p.alpha));
  CHECK(model::received_power_scale(p) == Approx(p.p_r_min).epsilon(1e-12));

  p.delta = 1.0 - 1e-12;
  CHECK(model::received_power_scale(p) < 1e-30);
}

TEST_CASE("received_power_scale: default parameter fixture") {
  const auto p = testref::section5_params();
  CHECK(model::received_power_scale(p) == Approx(testref::kPr0).epsilon(1e-12));
}

TEST_CASE("min_transmit_power: scaling law and identity") {
  const auto p = testref::section5_params();
  const double lb = 333e-6;
  const double pt = model::min_transmit_power(lb, p);
  CHECK(pt == Approx(testref::kPt333PerKm2).epsilon(1e-12));
  // doubling the density scales by 2^(-alpha/2)
  CHECK(model::min_transmit_power(2.0 * lb, p) ==
        Approx(pt * std::pow(2.0, -0.5 * p.alpha)).epsilon(1e-13));
  // unit denominator: C lambda^(alpha/2) = 1
  const double lb_unit = std::pow(1.0 / p.c_pathloss, 2.0 / p.alpha);
  CHECK(model::min_transmit_power(lb_unit, p) ==
        Approx(model::received_power_scale(p)).epsilon(1e-12));
  // algebraic identity, machine precision
  for (double l : {50e-6, 333e-6, 2000e-6}) {
    CHECK(model::min_transmit_power(l, p) * p.c_pathloss *
              std::pow(l, 0.5 * p.alpha) ==
          Approx(model::received_power_scale(p)).epsilon(1e-14));
  }
}

TEST_CASE("void_probability: fixtures and monotonicity") {
  CHECK(model::void_probability(0.0) == 1.0);
  CHECK(model::void_probability(3.5) ==
        Approx(std::pow(2.0, -3.5)).epsilon(1e-14));
  CHECK(model::void_probability(1.0) == Approx(testref::kVoidAt1).epsilon(1e-14));
  double prev = 1.0;
  for (double mu = 0.05; mu < 40.0; mu *= 1.37) {
    const double v = model::void_probability(mu);
    CHECK(v < prev);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    prev = v;
  }
}

TEST_CASE("user_count_pmf: ties to the void probability at n = 0") {
  for (double mu : {0.5, 1.0, 2.0}) {
    CHECK(model::user_count_pmf(0, mu) ==
          Approx(model::void_probability(mu)).epsilon(1e-13));
  }
}

TEST_CASE("user_count_pmf: normalization and mean") {
  for (double mu : {0.5, 1.0, 4.0}) {
    double mass = 0.0;
    std::int64_t n = 0;
    while (mass < 1.0 - 1e-12 && n < 10000) {
      mass += model::user_count_pmf(n, mu);
      ++n;
    }
    CHECK(mass == Approx(1.0).epsilon(1e-10));
  }
  double mean = 0.0;
  for (std::int64_t n = 0; n < 4000; ++n) {
    mean += static_cast<double>(n) * model::user_count_pmf(n, 2.0);
  }
  CHECK(mean == Approx(2.0).epsilon(1e-8));
}

TEST_CASE("user_count_pmf: spot values and large-n stability") {
  CHECK(model::user_count_pmf(3, 2.0) == Approx(testref::kPmf3At2).epsilon(1e-12));
  CHECK(model::user_count_pmf(7, 0.5) == Approx(testref::kPmf7At05).epsilon(1e-12));
  const double tail = model::user_count_pmf(500, 8.0);
  CHECK(std::isfinite(tail));
  CHECK(tail < 1e-60);
}

TEST_CASE("active_density") {
  const double lb = 3.7e-4;
  CHECK(model::active_density({lb, 1e-4, model::Mode::AllOn}) == lb);
  CHECK(model::active_density({lb, lb * 1e-9, model::Mode::OnOff}) ==
        Approx(0.0).epsilon(1e-8));
  const double expected = (1.0 - model::void_probability(1.0)) * lb;
  CHECK(model::active_density({lb, lb, model::Mode::OnOff}) ==
        Approx(expected).epsilon(1e-13));
  // strictly below the all-on density, ratio 1 - p0(mu)
  for (double mu : {0.2, 1.0, 5.0}) {
    const model::Scenario s{lb, mu * lb, model::Mode::OnOff};
    CHECK(model::active_density(s) < lb);
    CHECK(model::active_density(s) / lb ==
          Approx(1.0 - model::void_probability(mu)).epsilon(1e-13));
  }
}

TEST_CASE("load_sharing_factor: decreasing, bounded by 1, limit 1") {
  CHECK(model::load_sharing_factor(0.0) == 1.0);
  CHECK(model::load_sharing_factor(1e-12) == Approx(1.0).epsilon(1e-9));
  double prev = model::load_sharing_factor(1e-4);
  CHECK(prev <= 1.0);
  for (double mu = 0.01; mu <= 8.0; mu += 0.07) {
    const double f = model::load_sharing_factor(mu);
    CHECK(f < prev);
    CHECK(f <= 1.0);
    prev = f;
  }
}

TEST_CASE("convert_units") {
  using model::Unit;
  CHECK(model::convert_units(-100.0, Unit::Dbm, Unit::Watt) ==
        Approx(1e-13).epsilon(1e-13));
  CHECK(model::convert_units(0.0, Unit::Dbm, Unit::Watt) ==
        Approx(1e-3).epsilon(1e-13));
  CHECK(model::convert_units(370.0, Unit::PerKm2, Unit::PerM2) ==
        Approx(3.7e-4).epsilon(1e-14));
  for (double v : {-100.0, -30.0, 10.0}) {
    const double w = model::convert_units(v, Unit::Dbm, Unit::Watt);
    CHECK(model::convert_units(w, Unit::Watt, Unit::Dbm) ==
          Approx(v).epsilon(1e-12));
  }
  for (double v : {1e-6, 3.7e-4, 2.0}) {
    const double k = model::convert_units(v, Unit::PerM2, Unit::PerKm2);
    CHECK(model::convert_units(k, Unit::PerKm2, Unit::PerM2) ==
          Approx(v).epsilon(1e-12));
  }
  CHECK_THROWS_AS(model::convert_units(1.0, Unit::Dbm, Unit::PerKm2),
                  std::invalid_argument);
}

TEST_CASE("NetworkParams: validation names the offending field") {
  auto check_message = [](model::NetworkParams p, const std::string& field) {
    try {
      p.validate();
      FAIL_CHECK("expected validation failure for " << field);
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find(field) != std::string::npos);
    }
  };
  auto p = testref::section5_params();
  p.alpha = 2.0;
  check_message(p, "alpha");
  p = testref::section5_params();
  p.delta = 1.0;
  check_message(p, "delta");
  p = testref::section5_params();
  p.p_off = 7.0;  // above p0
  check_message(p, "p0");
  p = testref::section5_params();
  p.noise_power = 0.0;
  check_message(p, "noise_power");
}
