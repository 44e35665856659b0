// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "expower/behavior.hpp"
#include "expower/effect.hpp"
#include "expower/game.hpp"
#include "expower/mixture.hpp"
#include "expower/power.hpp"
#include "expower/simulate.hpp"
#include "oracles.hpp"

using namespace expower;

namespace {

// Collects sub-check outcomes and a short detail log for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      passed_ = false;
      failures_.push_back(what);
    }
  }
  void note(const std::string& line) { notes_.push_back(line); }

  bool passed() const { return passed_; }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  bool passed_ = true;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string num(double v, int precision = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

const Game& game(const char* id) { return find_game(builtin_games(), id); }

void criterion_rapoport(Check& c) {
  const std::pair<const char*, double> expected[] = {
      {"G1", 0.50}, {"G2", 10.0 / 14.0}, {"G5", 0.05}, {"G6", 0.25}};
  for (const auto& [id, value] : expected) {
    const double rho = rapoport_ratio(game(id));
    c.note(std::string(id) + " rho=" + num(rho, 6));
    c.expect(std::abs(rho - value) <= 1e-9, std::string(id) + " rho " + num(rho, 12));
  }
  // The rounded 0.7143 target for G2.
  c.expect(std::abs(rapoport_ratio(game("G2")) - 0.7143) <= 5e-5, "G2 rounds to 0.7143");
}

void criterion_logit(Check& c) {
  const double c50 = predicted_coop(0.50);
  const double c71 = predicted_coop(0.71);
  const double c05 = predicted_coop(0.05);
  const double e12 = predicted_effect(game("G1"), game("G2")).delta();
  const double e52 = predicted_effect(game("G5"), game("G2")).delta();
  c.note("Coop(0.50)=" + num(c50) + " Coop(0.71)=" + num(c71) + " Coop(0.05)=" + num(c05));
  c.note("effect(G1,G2)=" + num(e12) + " effect(G5,G2)=" + num(e52));
  c.expect(std::abs(c50 - 0.48) <= 0.005, "Coop(0.50)=" + num(c50) + " vs 0.48+-0.005");
  c.expect(std::abs(c71 - 0.65) <= 0.005, "Coop(0.71)=" + num(c71) + " vs 0.65+-0.005");
  c.expect(std::abs(c05 - 0.17) <= 0.01, "Coop(0.05)=" + num(c05) + " vs 0.17+-0.01");
  c.expect(std::abs(e12 - 0.14) <= 0.01,
           "effect(G1,G2)=" + num(e12) + " vs 0.14+-0.01 (the same logit gives 0.48/0.65, "
           "whose difference is 0.17)");
  c.expect(std::abs(e52 - 0.48) <= 0.01, "effect(G5,G2)=" + num(e52) + " vs 0.48+-0.01");
}

void criterion_dominance(Check& c) {
  for (const char* id : {"G1", "G2"}) {
    const auto r = classify_dominance(game(id));
    c.expect(r.i_dominant_action == Action::kDefect && r.is_pd,
             std::string(id) + " should be a PD with D i-dominant");
  }
  for (const char* id : {"G3", "G4"}) {
    const auto r = classify_dominance(game(id));
    c.expect(r.i_dominant_action == Action::kCooperate &&
                 r.sigma_dominated_action == Action::kDefect && !r.is_pd,
             std::string(id) + " should have C i-dominant and D sigma-dominated");
  }
}

void criterion_t_stat(Check& c) {
  const double t = t_stat(0.48, 0.65, 100);
  c.note("t(0.48,0.65,100)=" + num(t, 6));
  c.expect(std::abs(t - 2.4247) <= 1e-3, "t_stat value " + num(t, 6));
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> size(1, 10'000);
  int anti = 0, scale = 0;
  for (int i = 0; i < 1000; ++i) {
    const double a = unit(rng), b = unit(rng);
    const double n = size(rng);
    const double tab = t_stat(a, b, n);
    if (std::abs(tab + t_stat(b, a, n)) <= 1e-12 * std::max(1.0, std::abs(tab))) ++anti;
    if (std::abs(t_stat(a, b, 4 * n) - 2 * tab) <= 1e-12 * std::max(1.0, std::abs(tab))) ++scale;
  }
  c.note("antisymmetry " + std::to_string(anti) + "/1000, sqrt-N scaling " +
         std::to_string(scale) + "/1000");
  c.expect(anti == 1000, "antisymmetry");
  c.expect(scale == 1000, "sqrt-N scaling");
}

void criterion_mc_vs_analytic(Check& c) {
  const std::pair<double, double> effects[] = {{0.48, 0.65}, {0.17, 0.65}, {0.3, 0.5}};
  double worst = 0.0;
  std::uint64_t seed = 500;
  for (const auto& [p1, p2] : effects) {
    for (double gamma : {0.0, 0.2, 0.6}) {
      for (std::int64_t n : {50, 150, 500}) {
        const TestConfig cfg{1.645, 200'000, seed++};
        const double mc = power_mc({p1, p2}, gamma, n, cfg).power;
        const double an = power_analytic({p1, p2}, gamma, n, cfg).power;
        worst = std::max(worst, std::abs(mc - an));
        if (std::abs(mc - an) > 0.01) {
          // Exact enumeration tells whether the simulation or the approximation is off.
          const double exact = oracle::exact_power(attenuate(p1, gamma), attenuate(p2, gamma), n,
                                                   cfg.critical_z);
          c.expect(false, "(" + num(p1, 2) + "," + num(p2, 2) + ") gamma=" + num(gamma, 1) +
                              " n=" + std::to_string(n) + ": mc " + num(mc) + " analytic " +
                              num(an) + " exact " + num(exact));
        }
      }
    }
  }
  c.note("27 configurations, max |mc - analytic| = " + num(worst));
}

void criterion_exact_enumeration(Check& c) {
  const std::pair<double, double> effects[] = {{0.48, 0.65}, {0.17, 0.65}, {0.3, 0.5}, {0.1, 0.9}};
  int checked = 0;
  double worst_z = 0.0;
  std::uint64_t seed = 900;
  for (const auto& [p1, p2] : effects) {
    for (std::int64_t n = 2; n <= 10; ++n) {
      const TestConfig cfg{1.645, 200'000, seed++};
      const auto mc = power_mc({p1, p2}, 0.0, n, cfg);
      const double exact = oracle::exact_power(p1, p2, n, cfg.critical_z);
      const double diff = std::abs(mc.power - exact);
      ++checked;
      if (mc.mc_stderr > 0) worst_z = std::max(worst_z, diff / mc.mc_stderr);
      c.expect(diff <= 3 * mc.mc_stderr + 1e-15,
               "n=" + std::to_string(n) + " (" + num(p1, 2) + "," + num(p2, 2) + "): mc " +
                   num(mc.power, 5) + " exact " + num(exact, 5));
    }
  }
  c.note(std::to_string(checked) + " cases, worst deviation " + num(worst_z, 2) + " stderr");
}

void criterion_population_order(Check& c) {
  const EffectSpec effect{0.48, 0.65};
  const TestConfig cfg;
  const BudgetSpec budget{1650};
  const auto pro = prolific_population();
  const auto mt = mturk_population();
  const auto lab = lab_population();
  const auto pw = [&](const PopulationParams& p) { return power_at_budget(p, effect, budget, cfg); };
  const auto rp = pw(pro), rm = pw(mt), rl = pw(lab);
  const double bp = budget_for_power(pro, effect, 0.90, cfg);
  const double bm = budget_for_power(mt, effect, 0.90, cfg);
  const double bl = budget_for_power(lab, effect, 0.90, cfg);
  c.note("power at $1650: prolific n=" + std::to_string(rp.n) + " " + num(rp.power) +
         ", mturk n=" + std::to_string(rm.n) + " " + num(rm.power) + ", lab n=" +
         std::to_string(rl.n) + " " + num(rl.power));
  c.note("budget for 90% power: prolific $" + num(bp, 2) + ", mturk $" + num(bm, 2) + ", lab $" +
         num(bl, 2));
  c.note("caveat: reference dollar and power figures come from an undocumented procedure; "
         "only the orderings are compared");
  c.expect(rp.power > rm.power && rm.power > rl.power, "power ordering prolific > mturk > lab");
  c.expect(bp < bm && bm < bl, "budget ordering prolific < mturk < lab");
}

void criterion_extended_order(Check& c) {
  const double reference = predicted_effect(game("G5"), game("G2")).delta();
  const double gamma_pro = implied_attenuation(0.264, reference);
  c.note("implied prolific gamma " + num(gamma_pro) + " (reference effect " + num(reference) + ")");
  c.expect(std::abs(gamma_pro - 0.448) <= 0.01, "implied gamma " + num(gamma_pro) + " vs 0.448");
  const EffectSpec effect{0.17, 0.65};
  const TestConfig cfg;
  const double bp = budget_for_power({4.36, gamma_pro, "prolific"}, effect, 0.95, cfg);
  const double bl = budget_for_power({22.08, 0.144, "lab"}, effect, 0.95, cfg);
  c.note("budget for 95% power: prolific $" + num(bp, 2) + ", lab $" + num(bl, 2));
  c.expect(bp < bl, "prolific budget below lab budget");
}

void criterion_mixture_recovery(Check& c) {
  const std::pair<double, double> truths[] = {{0.0, 0.144}, {0.08, 0.51}, {0.015, 0.18}};
  for (const auto& [gf, gr] : truths) {
    int recovered = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      SimSpec spec;
      spec.n = 2000;
      spec.gamma_f = gf;
      spec.gamma_r = gr;
      spec.seed = 10'000 + seed;
      const auto est =
          estimate_mixture(pattern_counts(simulate(spec, builtin_games())), 200, 20'000 + seed);
      const double gs = 1.0 - gf - gr;
      const bool ok = std::abs(est.gamma_f - gf) <= 3 * *est.se_f &&
                      std::abs(est.gamma_r - gr) <= 3 * *est.se_r &&
                      std::abs(est.gamma_sigma - gs) <= 3 * *est.se_sigma;
      recovered += ok;
    }
    c.note("(" + num(gf, 3) + "," + num(gr, 3) + "): " + std::to_string(recovered) +
           "/20 seeds within 3 bootstrap SEs");
    c.expect(recovered >= 18, "(" + num(gf, 3) + "," + num(gr, 3) + ") recovered in " +
                                  std::to_string(recovered) + "/20");
  }
}

void criterion_moment(Check& c) {
  const auto w = moment_estimate(0.108, 0.108);
  c.note("moment_estimate(0.108, 0.108) = (" + num(w.gamma_f, 12) + ", " + num(w.gamma_r, 12) + ")");
  c.expect(w.gamma_f == 0.0, "gamma_f exactly 0");
  c.expect(std::abs(w.gamma_r - 0.144) <= 1e-12, "gamma_r equals 0.144");
}

void criterion_stderr(Check& c) {
  const double a = proportion_stderr(0.108, 74);
  const double b = proportion_stderr(0.584, 125);
  c.note("stderr(0.108,74)=" + num(a) + " stderr(0.584,125)=" + num(b));
  c.expect(std::abs(a - 0.036) <= 0.0005, "stderr(0.108,74)");
  c.expect(std::abs(b - 0.044) <= 0.0005, "stderr(0.584,125)");
}

void criterion_contours(Check& c) {
  const EffectSpec effect{0.48, 0.65};
  const TestConfig cfg;
  const auto grid = default_gamma_grid();
  const BudgetSpec budget{1650};
  const auto iso = iso_power_contour(budget, 0.90, effect, grid, cfg);
  int ok_power = 0;
  for (const auto& p : iso.points) {
    const auto r = power_at_budget({p.cost, p.gamma, ""}, effect, budget, cfg);
    // One participant of granularity: n affords the target, n - 1 does not.
    const bool ok = r.n == p.n && r.power >= 0.90 &&
                    power_analytic(effect, p.gamma, p.n - 1, cfg).power < 0.90;
    ok_power += ok;
    c.expect(ok, "iso-power point gamma=" + num(p.gamma, 2));
  }
  const std::vector<double> labels = {500, 1000, 1650, 3000};
  int ok_budget = 0, total_budget = 0;
  for (const auto& contour : iso_budget_contour(0.90, effect, labels, grid, cfg)) {
    for (const auto& p : contour.points) {
      ++total_budget;
      const double dollars = budget_for_power({p.cost, p.gamma, ""}, effect, 0.90, cfg);
      const bool ok = std::abs(dollars - contour.value) <= p.cost;
      ok_budget += ok;
      c.expect(ok, "iso-budget $" + num(contour.value, 0) + " gamma=" + num(p.gamma, 2));
    }
  }
  c.note("iso-power round-trips " + std::to_string(ok_power) + "/" +
         std::to_string(iso.points.size()) + ", iso-budget round-trips " +
         std::to_string(ok_budget) + "/" + std::to_string(total_budget));
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Check&)> body;
  };
  const std::vector<Criterion> criteria = {
      {1, "Rapoport ratios G1/G2/G5/G6", criterion_rapoport},
      {2, "logit predictions and predicted effects", criterion_logit},
      {3, "dominance classification of G1-G4", criterion_dominance},
      {4, "test statistic value, antisymmetry, sqrt-N scaling", criterion_t_stat},
      {5, "Monte Carlo vs analytic power (200k reps, 27 configs, tol 0.01)", criterion_mc_vs_analytic},
      {6, "Monte Carlo vs exact enumeration for n <= 10 (3 stderr)", criterion_exact_enumeration},
      {7, "population ordering at $1,650 and for 90% power", criterion_population_order},
      {8, "extended-comparison ordering for 95% power", criterion_extended_order},
      {9, "mixture recovery, 3 configs x 20 seeds, >= 18/20", criterion_mixture_recovery},
      {10, "moment estimate (0.108, 0.108) -> (0, 0.144)", criterion_moment},
      {11, "summary standard-error arithmetic", criterion_stderr},
      {12, "iso-power and iso-budget contour round-trips", criterion_contours},
  };

  int failed = 0;
  for (const auto& crit : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      crit.body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (check.passed() ? "[PASS] " : "[FAIL] ") << "criterion " << crit.id << ": "
              << crit.name << " (" << num(secs, 2) << "s)\n";
    for (const auto& n : check.notes()) std::cout << "         " << n << '\n';
    for (const auto& f : check.failures()) std::cout << "         failed: " << f << '\n';
    failed += !check.passed();
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
