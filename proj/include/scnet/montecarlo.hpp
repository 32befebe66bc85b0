#pragma once

// Monte Carlo sampler of the spatial model: Poisson BS/user patterns on a
// finite window, nearest-BS association, per-link Rayleigh fading, and
// empirical estimators for every analytical quantity.
//
// Reproducibility contract: every random draw comes from a substream
// derived from (seed, realization index, purpose), so identical configs
// give identical results no matter how realizations are scheduled across
// threads.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "scnet/network_model.hpp"

namespace scnet::mc {

struct Boundary {
  enum class Kind { Torus, Guard };
  Kind kind = Kind::Torus;
  double guard_width = 0.0;  // meters; only meaningful for Guard
};

struct SimConfig {
  double window_side = 0.0;  // meters
  std::uint64_t seed = 1;
  int n_realizations = 1;
  Boundary boundary{};
  int threads = 0;  // 0 -> hardware concurrency

  // Window must be large enough for an expected BS count of at least 500.
  void validate(double lambda_b) const;
};

// Side length giving the requested expected BS count.
double window_side_for_expected_bs(double lambda_b, double expected_bs);

struct PointPattern {
  double lambda_b = 0.0;  // intensities the pattern was drawn from
  double lambda_u = 0.0;
  double window_side = 0.0;
  Boundary boundary{};
  std::uint64_t seed = 0;
  std::uint64_t realization_index = 0;
  std::vector<double> bs_x, bs_y;
  std::vector<double> user_x, user_y;
  std::vector<std::int32_t> association;   // user -> nearest BS (ties: lowest index)
  std::vector<std::int32_t> bs_load;       // users per BS
  std::vector<std::uint8_t> active_onoff;  // bs_load > 0
  int resample_count = 0;                  // zero-BS redraws
};

// Deterministic RNG with hand-rolled transforms (the standard library does
// not pin distribution algorithms).
struct Rng {
  explicit Rng(std::uint64_t s) : eng(s) {}
  double uniform();      // [0, 1)
  double exponential();  // unit mean
  std::int64_t poisson(double mean);
  std::mt19937_64 eng;
};

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t realization,
                             std::uint64_t purpose);

PointPattern sample_network(double lambda_b, double lambda_u,
                            const SimConfig& config,
                            std::uint64_t realization_index = 0);

// All realizations of a config, sampled concurrently, indexed by
// realization.
std::vector<PointPattern> sample_patterns(double lambda_b, double lambda_u,
                                          const SimConfig& config);

struct EstimatorOutput {
  double mean = 0.0;
  double half_width_95 = 0.0;  // infinite when fewer than two samples
  std::int64_t n_samples = 0;
};

// Mean and 95% confidence half-width (Kahan-compensated, order-independent).
EstimatorOutput reduce_samples(std::span<const double> samples);

// Typical-user estimators (probe at the window center, one SINR draw per
// realization).
EstimatorOutput estimate_sinr_rate(std::span<const PointPattern> patterns,
                                   model::Mode mode,
                                   const model::NetworkParams& params);
EstimatorOutput estimate_outage(std::span<const PointPattern> patterns,
                                model::Mode mode, double threshold,
                                const model::NetworkParams& params);

// Fraction of BSs with no associated users (interior BSs only under a
// guard boundary).
EstimatorOutput estimate_void_fraction(std::span<const PointPattern> patterns);

// (cell rate, user rate): per-cell average of (1/N_b) sum_i log2(1+SINR_i)
// with void cells contributing zero, and per-user log2(1+SINR)/N_b.
std::pair<EstimatorOutput, EstimatorOutput> estimate_cell_and_user_rate(
    std::span<const PointPattern> patterns, model::Mode mode,
    const model::NetworkParams& params);

// Fraction of probe links whose long-term received power H C P_t R^-alpha
// falls at or below p_r_min.
EstimatorOutput estimate_received_power_outage(
    std::span<const PointPattern> patterns,
    const model::NetworkParams& params);

// Streaming drivers: generate realizations on the fly (nothing retained),
// evaluating both power-control modes from shared fading draws.
struct ProbeEstimates {
  EstimatorOutput rate_all_on, rate_on_off;
  EstimatorOutput outage_all_on, outage_on_off;
  EstimatorOutput received_power_outage;
};
ProbeEstimates run_probe_estimators(double lambda_b, double lambda_u,
                                    const SimConfig& config, double threshold,
                                    const model::NetworkParams& params);

struct RateComparison {
  EstimatorOutput cell_all_on, user_all_on;
  EstimatorOutput cell_on_off, user_on_off;
  EstimatorOutput void_fraction;
};
RateComparison run_rate_estimators(double lambda_b, double lambda_u,
                                   const SimConfig& config,
                                   const model::NetworkParams& params);

// CSV dump (x, y, kind, serving_index, active) for scatter plots.
void dump_pattern_csv(const PointPattern& pattern, std::ostream& out);

namespace detail {

double distance2(const PointPattern& p, double ax, double ay, double bx,
                 double by);
bool bs_interior(const PointPattern& p, std::int32_t bs);

// Per-BS fading draws for the probe link set, fixed order, independent of
// mode.
std::vector<double> probe_fading(const PointPattern& p);

// SINR of a probe at the window center given explicit fading values;
// exposed so tests can exercise the fading/noise scale invariance.
double probe_sinr(const PointPattern& p, model::Mode mode,
                  double signal_scale, double noise_power, double alpha,
                  std::span<const double> fading);

struct CellUserSample {
  double cell_all_on = 0.0;
  double user_all_on = 0.0;
  double cell_on_off = 0.0;
  double user_on_off = 0.0;
  double void_fraction = 0.0;
};
// One full pass over (user, BS) links; both modes share the fading draws.
CellUserSample cell_user_pass(const PointPattern& p,
                              const model::NetworkParams& params);

void parallel_for(std::int64_t n, int threads,
                  const std::function<void(std::int64_t)>& body);

}  // namespace detail

}  // namespace scnet::mc
