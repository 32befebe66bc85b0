#include "scnet/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace scnet::mc {

namespace {

constexpr std::uint64_t kPurposePattern = 1;
constexpr std::uint64_t kPurposeProbe = 2;
constexpr std::uint64_t kPurposeLinks = 3;

inline std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t realization,
                             std::uint64_t purpose) {
  return mix64(mix64(seed ^ mix64(realization + 1)) ^ mix64(purpose ^ 0xA5A5A5A5A5A5A5A5ULL));
}

double Rng::uniform() {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

double Rng::exponential() { return -std::log1p(-uniform()); }

std::int64_t Rng::poisson(double mean) {
  if (!(mean >= 0.0)) throw std::invalid_argument("poisson: mean must be >= 0");
  // Exponential race: counts arrivals of a unit-rate process before `mean`.
  // O(mean) per draw, which is fine for the couple of draws per realization.
  std::int64_t count = 0;
  double acc = exponential();
  while (acc < mean) {
    ++count;
    acc += exponential();
  }
  return count;
}

void SimConfig::validate(double lambda_b) const {
  if (!(window_side > 0.0)) {
    throw std::invalid_argument("SimConfig: window_side must be positive");
  }
  if (n_realizations < 1) {
    throw std::invalid_argument("SimConfig: n_realizations must be >= 1");
  }
  if (boundary.kind == Boundary::Kind::Guard &&
      !(boundary.guard_width >= 0.0 &&
        boundary.guard_width < 0.5 * window_side)) {
    throw std::invalid_argument(
        "SimConfig: guard width must lie in [0, window_side/2)");
  }
  if (lambda_b * window_side * window_side < 500.0) {
    throw std::invalid_argument(
        "SimConfig: window too small, expected BS count below 500");
  }
}

double window_side_for_expected_bs(double lambda_b, double expected_bs) {
  if (!(lambda_b > 0.0) || !(expected_bs > 0.0)) {
    throw std::invalid_argument("window_side_for_expected_bs: bad arguments");
  }
  return std::sqrt(expected_bs / lambda_b);
}

namespace detail {

double distance2(const PointPattern& p, double ax, double ay, double bx,
                 double by) {
  double dx = std::abs(ax - bx);
  double dy = std::abs(ay - by);
  if (p.boundary.kind == Boundary::Kind::Torus) {
    dx = std::min(dx, p.window_side - dx);
    dy = std::min(dy, p.window_side - dy);
  }
  return dx * dx + dy * dy;
}

bool bs_interior(const PointPattern& p, std::int32_t bs) {
  if (p.boundary.kind != Boundary::Kind::Guard) return true;
  const double w = p.boundary.guard_width;
  const double hi = p.window_side - w;
  return p.bs_x[bs] >= w && p.bs_x[bs] <= hi && p.bs_y[bs] >= w &&
         p.bs_y[bs] <= hi;
}

void parallel_for(std::int64_t n, int threads,
                  const std::function<void(std::int64_t)>& body) {
  int n_threads = threads > 0
                      ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::max(1, std::min<int>(n_threads, static_cast<int>(n)));
  if (n_threads == 1) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::int64_t i = t; i < n; i += n_threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail

PointPattern sample_network(double lambda_b, double lambda_u,
                            const SimConfig& config,
                            std::uint64_t realization_index) {
  if (!(lambda_b > 0.0) || !(lambda_u >= 0.0)) {
    throw std::invalid_argument("sample_network: need lambda_b > 0, lambda_u >= 0");
  }
  config.validate(lambda_b);

  Rng rng(substream_seed(config.seed, realization_index, kPurposePattern));
  const double side = config.window_side;
  const double area = side * side;

  PointPattern p;
  p.lambda_b = lambda_b;
  p.lambda_u = lambda_u;
  p.window_side = side;
  p.boundary = config.boundary;
  p.seed = config.seed;
  p.realization_index = realization_index;

  std::int64_t n_bs = rng.poisson(lambda_b * area);
  while (n_bs == 0) {
    ++p.resample_count;
    n_bs = rng.poisson(lambda_b * area);
  }
  const std::int64_t n_user = rng.poisson(lambda_u * area);

  p.bs_x.resize(n_bs);
  p.bs_y.resize(n_bs);
  for (std::int64_t i = 0; i < n_bs; ++i) {
    p.bs_x[i] = side * rng.uniform();
    p.bs_y[i] = side * rng.uniform();
  }
  p.user_x.resize(n_user);
  p.user_y.resize(n_user);
  for (std::int64_t i = 0; i < n_user; ++i) {
    p.user_x[i] = side * rng.uniform();
    p.user_y[i] = side * rng.uniform();
  }

  p.association.resize(n_user);
  p.bs_load.assign(n_bs, 0);
  const bool torus = p.boundary.kind == Boundary::Kind::Torus;
  for (std::int64_t u = 0; u < n_user; ++u) {
    const double ux = p.user_x[u];
    const double uy = p.user_y[u];
    double best = std::numeric_limits<double>::infinity();
    std::int32_t best_bs = 0;
    for (std::int64_t b = 0; b < n_bs; ++b) {
      double dx = std::abs(ux - p.bs_x[b]);
      double dy = std::abs(uy - p.bs_y[b]);
      if (torus) {
        dx = std::min(dx, side - dx);
        dy = std::min(dy, side - dy);
      }
      const double d2 = dx * dx + dy * dy;
      if (d2 < best) {
        best = d2;
        best_bs = static_cast<std::int32_t>(b);
      }
    }
    p.association[u] = best_bs;
    ++p.bs_load[best_bs];
  }

  p.active_onoff.resize(n_bs);
  for (std::int64_t b = 0; b < n_bs; ++b) {
    p.active_onoff[b] = p.bs_load[b] > 0 ? 1 : 0;
  }
  return p;
}

std::vector<PointPattern> sample_patterns(double lambda_b, double lambda_u,
                                          const SimConfig& config) {
  std::vector<PointPattern> patterns(config.n_realizations);
  detail::parallel_for(config.n_realizations, config.threads,
                       [&](std::int64_t i) {
                         patterns[i] = sample_network(
                             lambda_b, lambda_u, config,
                             static_cast<std::uint64_t>(i));
                       });
  return patterns;
}

EstimatorOutput reduce_samples(std::span<const double> samples) {
  EstimatorOutput out;
  out.n_samples = static_cast<std::int64_t>(samples.size());
  if (samples.empty()) {
    out.half_width_95 = std::numeric_limits<double>::infinity();
    return out;
  }
  Kahan mean_acc;
  for (double s : samples) mean_acc.add(s);
  out.mean = mean_acc.sum / static_cast<double>(samples.size());
  if (samples.size() < 2) {
    out.half_width_95 = std::numeric_limits<double>::infinity();
    return out;
  }
  Kahan var_acc;
  for (double s : samples) {
    const double d = s - out.mean;
    var_acc.add(d * d);
  }
  const double var = var_acc.sum / static_cast<double>(samples.size() - 1);
  out.half_width_95 =
      1.96 * std::sqrt(var / static_cast<double>(samples.size()));
  return out;
}

namespace detail {

std::vector<double> probe_fading(const PointPattern& p) {
  Rng rng(substream_seed(p.seed, p.realization_index, kPurposeProbe));
  std::vector<double> fading(p.bs_x.size());
  for (auto& h : fading) h = rng.exponential();
  return fading;
}

double probe_sinr(const PointPattern& p, model::Mode mode,
                  double signal_scale, double noise_power, double alpha,
                  std::span<const double> fading) {
  const double cx = 0.5 * p.window_side;
  const double cy = 0.5 * p.window_side;
  const std::int64_t n_bs = static_cast<std::int64_t>(p.bs_x.size());
  std::int64_t serving = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t b = 0; b < n_bs; ++b) {
    const double d2 = distance2(p, cx, cy, p.bs_x[b], p.bs_y[b]);
    if (d2 < best) {
      best = d2;
      serving = b;
    }
  }
  const double half_alpha = 0.5 * alpha;
  double interference = 0.0;
  for (std::int64_t b = 0; b < n_bs; ++b) {
    if (b == serving) continue;
    if (mode == model::Mode::OnOff && !p.active_onoff[b]) continue;
    const double d2 = distance2(p, cx, cy, p.bs_x[b], p.bs_y[b]);
    interference += fading[b] * std::pow(d2, -half_alpha);
  }
  const double signal = fading[serving] * std::pow(best, -half_alpha);
  return signal_scale * signal /
         (noise_power + signal_scale * interference);
}

CellUserSample cell_user_pass(const PointPattern& p,
                              const model::NetworkParams& params) {
  const std::int64_t n_bs = static_cast<std::int64_t>(p.bs_x.size());
  const std::int64_t n_user = static_cast<std::int64_t>(p.user_x.size());
  const double signal_scale =
      params.c_pathloss * model::min_transmit_power(p.lambda_b, params);
  const double noise = params.noise_power;
  const double half_alpha = 0.5 * params.alpha;
  const double side = p.window_side;
  const bool torus = p.boundary.kind == Boundary::Kind::Torus;

  Rng rng(substream_seed(p.seed, p.realization_index, kPurposeLinks));

  std::vector<double> cell_sum_all(n_bs, 0.0), cell_sum_onoff(n_bs, 0.0);
  double user_all = 0.0, user_onoff = 0.0;
  std::int64_t counted_users = 0;

  const double* bx = p.bs_x.data();
  const double* by = p.bs_y.data();
  const std::uint8_t* active = p.active_onoff.data();

  for (std::int64_t u = 0; u < n_user; ++u) {
    const double ux = p.user_x[u];
    const double uy = p.user_y[u];
    const std::int32_t s = p.association[u];
    double acc_all = 0.0, acc_act = 0.0, sig = 0.0;
    for (std::int64_t b = 0; b < n_bs; ++b) {
      const double h = rng.exponential();
      double dx = std::abs(ux - bx[b]);
      double dy = std::abs(uy - by[b]);
      if (torus) {
        dx = std::min(dx, side - dx);
        dy = std::min(dy, side - dy);
      }
      const double w = h * std::pow(dx * dx + dy * dy, -half_alpha);
      if (b == s) {
        sig = w;
      } else {
        acc_all += w;
        acc_act += active[b] ? w : 0.0;
      }
    }
    const double sinr_all =
        signal_scale * sig / (noise + signal_scale * acc_all);
    const double sinr_onoff =
        signal_scale * sig / (noise + signal_scale * acc_act);
    const double r_all = std::log2(1.0 + sinr_all);
    const double r_onoff = std::log2(1.0 + sinr_onoff);
    cell_sum_all[s] += r_all;
    cell_sum_onoff[s] += r_onoff;
    if (bs_interior(p, s)) {
      user_all += r_all / p.bs_load[s];
      user_onoff += r_onoff / p.bs_load[s];
      ++counted_users;
    }
  }

  double cell_all = 0.0, cell_onoff = 0.0;
  std::int64_t counted_cells = 0, void_cells = 0;
  for (std::int64_t b = 0; b < n_bs; ++b) {
    if (!bs_interior(p, static_cast<std::int32_t>(b))) continue;
    ++counted_cells;
    if (p.bs_load[b] == 0) {
      ++void_cells;  // void cells contribute zero rate
    } else {
      cell_all += cell_sum_all[b] / p.bs_load[b];
      cell_onoff += cell_sum_onoff[b] / p.bs_load[b];
    }
  }

  CellUserSample out;
  if (counted_cells > 0) {
    out.cell_all_on = cell_all / static_cast<double>(counted_cells);
    out.cell_on_off = cell_onoff / static_cast<double>(counted_cells);
    out.void_fraction =
        static_cast<double>(void_cells) / static_cast<double>(counted_cells);
  } else {
    out.void_fraction = 1.0;
  }
  if (counted_users > 0) {
    out.user_all_on = user_all / static_cast<double>(counted_users);
    out.user_on_off = user_onoff / static_cast<double>(counted_users);
  }
  return out;
}

}  // namespace detail

namespace {

std::vector<double> probe_rate_samples(std::span<const PointPattern> patterns,
                                       model::Mode mode,
                                       const model::NetworkParams& params,
                                       int threads = 0) {
  std::vector<double> sinr(patterns.size());
  detail::parallel_for(
      static_cast<std::int64_t>(patterns.size()), threads,
      [&](std::int64_t i) {
        const auto& p = patterns[i];
        const double scale =
            params.c_pathloss * model::min_transmit_power(p.lambda_b, params);
        const auto fading = detail::probe_fading(p);
        sinr[i] = detail::probe_sinr(p, mode, scale, params.noise_power,
                                     params.alpha, fading);
      });
  return sinr;
}

}  // namespace

EstimatorOutput estimate_sinr_rate(std::span<const PointPattern> patterns,
                                   model::Mode mode,
                                   const model::NetworkParams& params) {
  auto sinr = probe_rate_samples(patterns, mode, params);
  for (auto& s : sinr) s = std::log2(1.0 + s);
  return reduce_samples(sinr);
}

EstimatorOutput estimate_outage(std::span<const PointPattern> patterns,
                                model::Mode mode, double threshold,
                                const model::NetworkParams& params) {
  if (!(threshold > 0.0)) {
    throw std::invalid_argument("estimate_outage: threshold must be positive");
  }
  auto sinr = probe_rate_samples(patterns, mode, params);
  for (auto& s : sinr) s = s < threshold ? 1.0 : 0.0;
  return reduce_samples(sinr);
}

EstimatorOutput estimate_void_fraction(
    std::span<const PointPattern> patterns) {
  std::vector<double> fractions(patterns.size());
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const auto& p = patterns[i];
    std::int64_t counted = 0, voids = 0;
    for (std::size_t b = 0; b < p.bs_load.size(); ++b) {
      if (!detail::bs_interior(p, static_cast<std::int32_t>(b))) continue;
      ++counted;
      if (p.bs_load[b] == 0) ++voids;
    }
    fractions[i] = counted > 0
                       ? static_cast<double>(voids) / static_cast<double>(counted)
                       : 1.0;
  }
  return reduce_samples(fractions);
}

std::pair<EstimatorOutput, EstimatorOutput> estimate_cell_and_user_rate(
    std::span<const PointPattern> patterns, model::Mode mode,
    const model::NetworkParams& params) {
  std::vector<double> cell(patterns.size()), user(patterns.size());
  detail::parallel_for(
      static_cast<std::int64_t>(patterns.size()), 0, [&](std::int64_t i) {
        const auto s = detail::cell_user_pass(patterns[i], params);
        if (mode == model::Mode::AllOn) {
          cell[i] = s.cell_all_on;
          user[i] = s.user_all_on;
        } else {
          cell[i] = s.cell_on_off;
          user[i] = s.user_on_off;
        }
      });
  return {reduce_samples(cell), reduce_samples(user)};
}

EstimatorOutput estimate_received_power_outage(
    std::span<const PointPattern> patterns,
    const model::NetworkParams& params) {
  std::vector<double> hits(patterns.size());
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const auto& p = patterns[i];
    const double scale =
        params.c_pathloss * model::min_transmit_power(p.lambda_b, params);
    const auto fading = detail::probe_fading(p);
    const double cx = 0.5 * p.window_side;
    const double cy = 0.5 * p.window_side;
    double best = std::numeric_limits<double>::infinity();
    std::size_t serving = 0;
    for (std::size_t b = 0; b < p.bs_x.size(); ++b) {
      const double d2 = detail::distance2(p, cx, cy, p.bs_x[b], p.bs_y[b]);
      if (d2 < best) {
        best = d2;
        serving = b;
      }
    }
    const double received =
        scale * fading[serving] * std::pow(best, -0.5 * params.alpha);
    hits[i] = received <= params.p_r_min ? 1.0 : 0.0;
  }
  return reduce_samples(hits);
}

ProbeEstimates run_probe_estimators(double lambda_b, double lambda_u,
                                    const SimConfig& config, double threshold,
                                    const model::NetworkParams& params) {
  if (!(threshold > 0.0)) {
    throw std::invalid_argument("run_probe_estimators: threshold must be positive");
  }
  config.validate(lambda_b);
  const std::int64_t n = config.n_realizations;
  std::vector<double> rate_all(n), rate_onoff(n), out_all(n), out_onoff(n),
      rx_outage(n);
  detail::parallel_for(n, config.threads, [&](std::int64_t i) {
    const auto p = sample_network(lambda_b, lambda_u, config,
                                  static_cast<std::uint64_t>(i));
    const double scale =
        params.c_pathloss * model::min_transmit_power(lambda_b, params);
    const auto fading = detail::probe_fading(p);
    const double s_all = detail::probe_sinr(p, model::Mode::AllOn, scale,
                                            params.noise_power, params.alpha,
                                            fading);
    const double s_onoff = detail::probe_sinr(p, model::Mode::OnOff, scale,
                                              params.noise_power, params.alpha,
                                              fading);
    rate_all[i] = std::log2(1.0 + s_all);
    rate_onoff[i] = std::log2(1.0 + s_onoff);
    out_all[i] = s_all < threshold ? 1.0 : 0.0;
    out_onoff[i] = s_onoff < threshold ? 1.0 : 0.0;
    // Received-power check reuses the probe's serving-link fading.
    const double cx = 0.5 * p.window_side;
    const double cy = 0.5 * p.window_side;
    double best = std::numeric_limits<double>::infinity();
    std::size_t serving = 0;
    for (std::size_t b = 0; b < p.bs_x.size(); ++b) {
      const double d2 = detail::distance2(p, cx, cy, p.bs_x[b], p.bs_y[b]);
      if (d2 < best) {
        best = d2;
        serving = b;
      }
    }
    const double received =
        scale * fading[serving] * std::pow(best, -0.5 * params.alpha);
    rx_outage[i] = received <= params.p_r_min ? 1.0 : 0.0;
  });

  ProbeEstimates out;
  out.rate_all_on = reduce_samples(rate_all);
  out.rate_on_off = reduce_samples(rate_onoff);
  out.outage_all_on = reduce_samples(out_all);
  out.outage_on_off = reduce_samples(out_onoff);
  out.received_power_outage = reduce_samples(rx_outage);
  return out;
}

RateComparison run_rate_estimators(double lambda_b, double lambda_u,
                                   const SimConfig& config,
                                   const model::NetworkParams& params) {
  config.validate(lambda_b);
  const std::int64_t n = config.n_realizations;
  std::vector<double> cell_all(n), user_all(n), cell_onoff(n), user_onoff(n),
      voids(n);
  detail::parallel_for(n, config.threads, [&](std::int64_t i) {
    const auto p = sample_network(lambda_b, lambda_u, config,
                                  static_cast<std::uint64_t>(i));
    const auto s = detail::cell_user_pass(p, params);
    cell_all[i] = s.cell_all_on;
    user_all[i] = s.user_all_on;
    cell_onoff[i] = s.cell_on_off;
    user_onoff[i] = s.user_on_off;
    voids[i] = s.void_fraction;
  });
  RateComparison out;
  out.cell_all_on = reduce_samples(cell_all);
  out.user_all_on = reduce_samples(user_all);
  out.cell_on_off = reduce_samples(cell_onoff);
  out.user_on_off = reduce_samples(user_onoff);
  out.void_fraction = reduce_samples(voids);
  return out;
}

void dump_pattern_csv(const PointPattern& p, std::ostream& out) {
  out << "x,y,kind,serving_index,active\n";
  char buf[128];
  for (std::size_t b = 0; b < p.bs_x.size(); ++b) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,bs,-1,%d\n", p.bs_x[b],
                  p.bs_y[b], p.active_onoff[b] ? 1 : 0);
    out << buf;
  }
  for (std::size_t u = 0; u < p.user_x.size(); ++u) {
    const auto s = p.association[u];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,user,%d,%d\n", p.user_x[u],
                  p.user_y[u], s, p.active_onoff[s] ? 1 : 0);
    out << buf;
  }
}

}  // namespace scnet::mc
