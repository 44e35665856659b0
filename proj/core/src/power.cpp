#include "expower/power.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "expower/error.hpp"
#include "expower/random.hpp"

namespace expower {

namespace {

constexpr std::int64_t kMaxSampleSize = std::int64_t{1} << 50;

void check_n(std::int64_t n) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "sample size must be at least 2, got " + std::to_string(n));
  }
}

void check_fraction(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must lie in [0,1]");
  }
}

void check_target(double target_power, const TestConfig& cfg) {
  const double size = normal_cdf(-cfg.critical_z);
  if (!(target_power > size && target_power < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "target power must lie strictly between the test size " +
                    std::to_string(size) + " and 1");
  }
}

// Runs body(begin, end) over [0, count) on up to hardware_concurrency threads.
// Chunk boundaries never influence results because every index owns its stream.
template <typename Body>
void parallel_for(std::uint64_t count, Body&& body) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t workers = std::min<std::uint64_t>(hw, (count + 4095) / 4096);
  if (workers <= 1) {
    body(0, count, 0);
    return;
  }
  std::vector<std::thread> threads;
  const std::uint64_t chunk = (count + workers - 1) / workers;
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t begin = w * chunk;
    const std::uint64_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&body, begin, end, w] { body(begin, end, w); });
  }
  for (auto& t : threads) t.join();
}

}  // namespace

void validate(const PopulationParams& pop) {
  if (!(pop.cost_per_obs > 0.0) || !std::isfinite(pop.cost_per_obs)) {
    throw Error(ErrorCode::kInvalidArgument, "cost per observation must be positive");
  }
  check_fraction(pop.attenuation, "attenuation");
}

void validate(const TestConfig& cfg) {
  if (!(cfg.critical_z > 0.0) || !std::isfinite(cfg.critical_z)) {
    throw Error(ErrorCode::kInvalidArgument, "critical z must be positive");
  }
  if (cfg.mc_reps < 1) {
    throw Error(ErrorCode::kInvalidArgument, "Monte Carlo replicates must be >= 1");
  }
}

void validate(const BudgetSpec& budget) {
  if (!(budget.total_budget > 0.0) || !std::isfinite(budget.total_budget)) {
    throw Error(ErrorCode::kInvalidArgument, "budget must be positive");
  }
}

PopulationParams lab_population() { return {22.08, 0.144, "lab"}; }
PopulationParams mturk_population() { return {3.01, 0.082 + 0.512, "mturk"}; }
PopulationParams prolific_population() { return {4.36, 0.015 + 0.180, "prolific"}; }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double t_stat(double p1_hat, double p2_hat, double n) {
  if (!(n >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "t_stat needs n >= 1");
  check_fraction(p1_hat, "p1_hat");
  check_fraction(p2_hat, "p2_hat");
  const double sum = p1_hat + p2_hat;
  const double variance = sum * (1.0 - sum / 2.0);
  if (!(variance > 0.0)) {
    throw Error(ErrorCode::kDegenerateVariance,
                "t_stat: pooled variance is zero (both rates 0 or both 1)");
  }
  return std::sqrt(n) * (p2_hat - p1_hat) / std::sqrt(variance);
}

double attenuate(double p, double gamma) {
  check_fraction(p, "probability");
  check_fraction(gamma, "attenuation");
  return gamma * 0.5 + (1.0 - gamma) * p;
}

PowerResult power_analytic(const EffectSpec& effect, double gamma, std::int64_t n,
                           const TestConfig& cfg) {
  check_n(n);
  validate(effect);
  validate(cfg);
  const double a1 = attenuate(effect.p1, gamma);
  const double a2 = attenuate(effect.p2, gamma);
  const double mid = 0.5 * (a1 + a2);
  const double sd_null = std::sqrt(2.0 * mid * (1.0 - mid));
  const double sd_alt = std::sqrt(a1 * (1.0 - a1) + a2 * (1.0 - a2));
  const double shift = (a2 - a1) * std::sqrt(static_cast<double>(n)) - cfg.critical_z * sd_null;

  double power = 0.0;
  if (sd_alt > 0.0) {
    power = normal_cdf(shift / sd_alt);
  } else if (sd_null > 0.0) {
    // Rates are exactly 0 and 1: the statistic is deterministic.
    power = shift >= 0.0 ? 1.0 : 0.0;
  }
  return {n, power, PowerMethod::kAnalytic, 0.0};
}

PowerResult power_mc(const EffectSpec& effect, double gamma, std::int64_t n,
                     const TestConfig& cfg) {
  check_n(n);
  validate(effect);
  validate(cfg);
  const double a1 = attenuate(effect.p1, gamma);
  const double a2 = attenuate(effect.p2, gamma);
  const double dn = static_cast<double>(n);

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::uint64_t> rejections(hw, 0);
  parallel_for(cfg.mc_reps, [&](std::uint64_t begin, std::uint64_t end, std::uint64_t slot) {
    std::uint64_t local = 0;
    for (std::uint64_t r = begin; r < end; ++r) {
      SplitMix64 rng = derive_stream(cfg.seed, r);
      std::binomial_distribution<std::int64_t> draw1(n, a1);
      std::binomial_distribution<std::int64_t> draw2(n, a2);
      const std::int64_t x1 = draw1(rng);
      const std::int64_t x2 = draw2(rng);
      const std::int64_t sum = x1 + x2;
      if (sum == 0 || sum == 2 * n) continue;  // degenerate draw: no rejection
      if (t_stat(x1 / dn, x2 / dn, dn) >= cfg.critical_z) ++local;
    }
    rejections[slot] += local;
  });

  std::uint64_t total = 0;
  for (auto r : rejections) total += r;
  const double reps = static_cast<double>(cfg.mc_reps);
  const double power = static_cast<double>(total) / reps;
  return {n, power, PowerMethod::kMonteCarlo, std::sqrt(power * (1.0 - power) / reps)};
}

std::int64_t sample_size_for_power(const EffectSpec& effect, double gamma,
                                   double target_power, const TestConfig& cfg) {
  validate(effect);
  validate(cfg);
  check_target(target_power, cfg);
  const double delta = attenuate(effect.p2, gamma) - attenuate(effect.p1, gamma);
  if (!(delta > 0.0)) {
    throw Error(ErrorCode::kUnattainablePower,
                "attenuated effect is not positive; one-sided power cannot reach target");
  }
  auto power_at = [&](std::int64_t n) {
    return power_analytic(effect, gamma, n, cfg).power;
  };

  if (power_at(2) >= target_power) return 2;
  std::int64_t lo = 2;  // power(lo) < target
  std::int64_t hi = 4;
  while (power_at(hi) < target_power) {
    lo = hi;
    hi *= 2;
    if (hi > kMaxSampleSize) {
      throw Error(ErrorCode::kUnattainablePower, "required sample size is unbounded");
    }
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (power_at(mid) >= target_power) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::int64_t affordable_n(double budget_dollars, double cost_per_obs) {
  if (!(cost_per_obs > 0.0) || !(budget_dollars > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "budget and cost must be positive");
  }
  // The slack absorbs rounding in budget / (budget / n).
  return static_cast<std::int64_t>(std::floor(budget_dollars / cost_per_obs + 1e-9));
}

PowerResult power_at_budget(const PopulationParams& pop, const EffectSpec& effect,
                            const BudgetSpec& budget, const TestConfig& cfg) {
  validate(pop);
  validate(budget);
  const std::int64_t n = affordable_n(budget.total_budget, pop.cost_per_obs);
  if (n < 2) {
    throw Error(ErrorCode::kInsufficientBudget,
                "budget affords " + std::to_string(n) + " participant(s); need at least 2");
  }
  return power_analytic(effect, pop.attenuation, n, cfg);
}

double budget_for_power(const PopulationParams& pop, const EffectSpec& effect,
                        double target_power, const TestConfig& cfg) {
  validate(pop);
  return pop.cost_per_obs *
         static_cast<double>(sample_size_for_power(effect, pop.attenuation, target_power, cfg));
}

std::vector<double> default_gamma_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 19; ++i) grid.push_back(i * 0.05);
  return grid;
}

namespace {

// Required n per grid point; unattainable points are recorded as 0.
std::vector<std::int64_t> required_sizes(const EffectSpec& effect, double power_level,
                                         std::span<const double> gamma_grid,
                                         const TestConfig& cfg) {
  std::vector<std::int64_t> sizes;
  sizes.reserve(gamma_grid.size());
  for (double gamma : gamma_grid) {
    check_fraction(gamma, "gamma grid value");
    try {
      sizes.push_back(sample_size_for_power(effect, gamma, power_level, cfg));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUnattainablePower) throw;
      sizes.push_back(0);
    }
  }
  return sizes;
}

Contour build_contour(double value, double budget, std::span<const double> gamma_grid,
                      const std::vector<std::int64_t>& sizes) {
  Contour c;
  c.value = value;
  for (std::size_t i = 0; i < gamma_grid.size(); ++i) {
    if (sizes[i] == 0) {
      c.omitted_gammas.push_back(gamma_grid[i]);
    } else {
      c.points.push_back({gamma_grid[i], budget / static_cast<double>(sizes[i]), sizes[i]});
    }
  }
  if (c.points.empty()) {
    throw Error(ErrorCode::kEmptyContour, "no grid point reaches the requested power");
  }
  return c;
}

}  // namespace

Contour iso_power_contour(const BudgetSpec& budget, double power_level,
                          const EffectSpec& effect, std::span<const double> gamma_grid,
                          const TestConfig& cfg) {
  validate(budget);
  const auto sizes = required_sizes(effect, power_level, gamma_grid, cfg);
  return build_contour(power_level, budget.total_budget, gamma_grid, sizes);
}

std::vector<Contour> iso_budget_contour(double power_level, const EffectSpec& effect,
                                        std::span<const double> budget_labels,
                                        std::span<const double> gamma_grid,
                                        const TestConfig& cfg) {
  for (double label : budget_labels) validate(BudgetSpec{label});
  const auto sizes = required_sizes(effect, power_level, gamma_grid, cfg);
  std::vector<Contour> contours;
  for (double label : budget_labels) {
    contours.push_back(build_contour(label, label, gamma_grid, sizes));
  }
  return contours;
}

double implied_attenuation(double observed_delta, double reference_delta) {
  if (!(reference_delta > 0.0)) {
    throw Error(ErrorCode::kInvalidReference, "reference effect must be positive");
  }
  return std::clamp(1.0 - observed_delta / reference_delta, 0.0, 1.0);
}

}  // namespace expower
