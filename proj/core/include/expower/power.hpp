#pragma once

// Power of the one-sided two-proportion test on cooperation rates, under
// coin-flip attenuation, and its budget/sample-size duals.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "expower/effect.hpp"

namespace expower {

// A participant pool: dollars per observation and attenuation toward 1/2.
struct PopulationParams {
  double cost_per_obs = 1.0;
  double attenuation = 0.0;
  std::string label;
};

struct TestConfig {
  double critical_z = 1.645;
  std::uint64_t mc_reps = 10'000;
  std::uint64_t seed = 0;
};

struct BudgetSpec {
  double total_budget = 1650.0;
};

enum class PowerMethod { kAnalytic, kMonteCarlo };

struct PowerResult {
  std::int64_t n = 0;
  double power = 0.0;
  PowerMethod method = PowerMethod::kAnalytic;
  double mc_stderr = 0.0;
};

void validate(const PopulationParams& pop);
void validate(const TestConfig& cfg);
void validate(const BudgetSpec& budget);

// Reference populations (per-observation cost, noise share gamma_F + gamma_R).
PopulationParams lab_population();
PopulationParams mturk_population();
PopulationParams prolific_population();

double normal_cdf(double x);

// sqrt(n) (p2 - p1) / sqrt((p1 + p2)(1 - (p1 + p2)/2)).
// Throws kDegenerateVariance when p1 + p2 is 0 or 2.
double t_stat(double p1_hat, double p2_hat, double n);

// gamma/2 + (1 - gamma) p.
double attenuate(double p, double gamma);

// Normal approximation: Phi((d sqrt(n) - z* s0) / s1) on attenuated rates,
// s0 pooled at the attenuated midpoint, s1 from the attenuated rates.
PowerResult power_analytic(const EffectSpec& effect, double gamma, std::int64_t n,
                           const TestConfig& cfg = {});

// Rejection frequency of t_stat >= z* over cfg.mc_reps binomial replicates.
// Replicate r draws from a stream keyed on (cfg.seed, r), so the result does
// not depend on how replicates are scheduled across threads.
PowerResult power_mc(const EffectSpec& effect, double gamma, std::int64_t n,
                     const TestConfig& cfg = {});

// Smallest n >= 2 with power_analytic(n) >= target_power.
std::int64_t sample_size_for_power(const EffectSpec& effect, double gamma,
                                   double target_power, const TestConfig& cfg = {});

// Participants affordable with `budget_dollars` at `cost_per_obs` each.
std::int64_t affordable_n(double budget_dollars, double cost_per_obs);

PowerResult power_at_budget(const PopulationParams& pop, const EffectSpec& effect,
                            const BudgetSpec& budget, const TestConfig& cfg = {});

double budget_for_power(const PopulationParams& pop, const EffectSpec& effect,
                        double target_power, const TestConfig& cfg = {});

struct ContourPoint {
  double gamma = 0.0;
  double cost = 0.0;
  std::int64_t n = 0;
};

// One level set in (gamma, cost) space. `value` is the power level for
// iso-power contours and the budget label for iso-budget contours.
struct Contour {
  double value = 0.0;
  std::vector<ContourPoint> points;
  std::vector<double> omitted_gammas;  // grid points where power is unattainable
};

// 0, 0.05, ..., 0.95.
std::vector<double> default_gamma_grid();

Contour iso_power_contour(const BudgetSpec& budget, double power_level,
                          const EffectSpec& effect, std::span<const double> gamma_grid,
                          const TestConfig& cfg = {});

std::vector<Contour> iso_budget_contour(double power_level, const EffectSpec& effect,
                                        std::span<const double> budget_labels,
                                        std::span<const double> gamma_grid,
                                        const TestConfig& cfg = {});

// clamp(1 - observed/reference, 0, 1). Throws kInvalidReference when
// reference_delta <= 0.
double implied_attenuation(double observed_delta, double reference_delta);

}  // namespace expower
