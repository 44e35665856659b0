#include "expower_cli/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "expower/behavior.hpp"
#include "expower/effect.hpp"
#include "expower/error.hpp"
#include "expower/game.hpp"
#include "expower/mixture.hpp"
#include "expower/power.hpp"
#include "expower/report.hpp"
#include "expower/simulate.hpp"

namespace expower::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr const char* kApproximationNote =
    "note: power uses the one-sided normal approximation without continuity correction; "
    "rankings across populations are robust to the approximation, absolute figures are not.";

std::string fmt4(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << v;
  return os.str();
}

double round4(double v) { return std::round(v * 1e4) / 1e4; }

// Options shared by several subcommands. Each subcommand registers the ones
// it uses so that its --help lists everything it accepts.
struct Common {
  std::string games_file;
  double logit_scale = LogitCalibration{}.scale;
  double logit_slope = LogitCalibration{}.slope;
  double critical_z = TestConfig{}.critical_z;
  std::optional<std::uint64_t> seed;
  std::string out;

  // Effect selection.
  std::optional<double> p1;
  std::optional<double> p2;
  std::string game_low;
  std::string game_high;

  // Population selection.
  std::vector<std::string> pops;
  std::optional<double> cost;
  std::optional<double> gamma;

  std::vector<Game> games() const {
    return games_file.empty() ? builtin_games() : load_games(games_file);
  }

  LogitCalibration calibration() const {
    LogitCalibration cal{logit_scale, logit_slope};
    validate(cal);
    return cal;
  }

  std::uint64_t resolved_seed() const {
    if (seed) return *seed;
    if (const char* env = std::getenv("EXPOWER_SEED")) {
      try {
        std::size_t used = 0;
        const auto v = std::stoull(env, &used);
        if (used == std::string(env).size()) return v;
      } catch (const std::exception&) {
      }
      throw UsageError("EXPOWER_SEED must be a non-negative integer, got '" + std::string(env) +
                       "'");
    }
    return 0;
  }

  TestConfig test_config(std::uint64_t mc_reps = 1) const {
    TestConfig cfg{critical_z, mc_reps, resolved_seed()};
    validate(cfg);
    return cfg;
  }

  EffectSpec effect() const {
    const bool by_rate = p1 || p2;
    const bool by_game = !game_low.empty() || !game_high.empty();
    if (by_rate && by_game) throw UsageError("use either --p1/--p2 or --game-low/--game-high");
    if (by_game) {
      if (game_low.empty() || game_high.empty()) {
        throw UsageError("--game-low and --game-high must be given together");
      }
      const auto gs = games();
      return predicted_effect(find_game(gs, game_low), find_game(gs, game_high), calibration());
    }
    if (p1.has_value() != p2.has_value()) throw UsageError("--p1 and --p2 must be given together");
    EffectSpec e{p1.value_or(0.48), p2.value_or(0.65)};
    validate(e);
    return e;
  }

  // Explicit --cost/--gamma, named --pop entries, or all reference populations.
  std::vector<PopulationParams> populations(bool need_cost) const {
    std::vector<PopulationParams> out;
    if (cost || gamma) {
      if (!pops.empty()) throw UsageError("use either --pop or --cost/--gamma");
      if (need_cost && !cost) throw UsageError("--gamma requires --cost here");
      PopulationParams p{cost.value_or(1.0), gamma.value_or(0.0), "custom"};
      validate(p);
      out.push_back(p);
      return out;
    }
    const std::vector<std::string> names =
        pops.empty() ? std::vector<std::string>{"prolific", "mturk", "lab"} : pops;
    for (const auto& name : names) {
      if (name == "lab") {
        out.push_back(lab_population());
      } else if (name == "mturk") {
        out.push_back(mturk_population());
      } else if (name == "prolific") {
        out.push_back(prolific_population());
      } else {
        throw UsageError("unknown population '" + name + "' (lab, mturk, prolific)");
      }
    }
    return out;
  }
};

void add_games_file(CLI::App* sub, Common& c) {
  sub->add_option("--games-file", c.games_file,
                  "JSON array of games {id, cc, cd, dc, dd}; defaults to built-in G1-G6");
}

void add_logit(CLI::App* sub, Common& c) {
  sub->add_option("--logit-scale", c.logit_scale, "logit calibration scale")
      ->capture_default_str();
  sub->add_option("--logit-slope", c.logit_slope, "logit calibration slope per unit rho")
      ->capture_default_str();
}

void add_effect(CLI::App* sub, Common& c) {
  sub->add_option("--p1", c.p1, "true cooperation rate in the low-rho game (default 0.48)");
  sub->add_option("--p2", c.p2, "true cooperation rate in the high-rho game (default 0.65)");
  sub->add_option("--game-low", c.game_low, "derive p1 from this game's Rapoport ratio");
  sub->add_option("--game-high", c.game_high, "derive p2 from this game's Rapoport ratio");
  add_games_file(sub, c);
  add_logit(sub, c);
}

void add_population(CLI::App* sub, Common& c) {
  sub->add_option("--pop", c.pops, "reference population(s): lab, mturk, prolific")
      ->delimiter(',');
  sub->add_option("--cost", c.cost, "dollars per observation");
  sub->add_option("--gamma", c.gamma, "attenuation toward a coin flip, in [0,1]");
}

void add_test(CLI::App* sub, Common& c) {
  sub->add_option("--critical-z", c.critical_z, "one-sided rejection threshold")
      ->capture_default_str();
}

void add_seed(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "random seed (fallback: EXPOWER_SEED, then 0)");
}

void add_out(CLI::App* sub, Common& c, const std::string& what) {
  sub->add_option("--out", c.out, what);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path);
  return f;
}

std::vector<double> parse_number_list(const std::string& text, const char* flag) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": '" + item + "' is not a number");
    }
  }
  if (values.empty()) throw UsageError(std::string(flag) + " needs at least one value");
  return values;
}

// --- classify --------------------------------------------------------------

struct ClassifyOpts {
  std::string input;
  std::string games_out;
};

int run_classify(const ClassifyOpts& o, const Common& c, std::ostream& out) {
  const auto games = c.games();
  const auto records = read_choices_csv(o.input);
  const auto categories = summarize(records, games);
  const auto rates = game_cooperation_rates(records, games);

  out << "participants: " << records.size() << '\n';
  write_summary_table(out, categories);
  out << '\n' << "cooperation by game\n";
  write_summary_table(out, rates);

  if (!c.out.empty()) {
    auto f = open_out(c.out);
    write_summary_csv(f, categories);
  }
  if (!o.games_out.empty()) {
    auto f = open_out(o.games_out);
    write_summary_csv(f, rates);
  }
  return kExitOk;
}

// --- estimate-noise --------------------------------------------------------

struct NoiseOpts {
  std::string input;
  std::int64_t bootstrap = 1000;
};

nlohmann::json noise_json(const NoiseEstimate& e, bool rounded) {
  auto num = [&](double v) { return rounded ? round4(v) : v; };
  auto opt = [&](const std::optional<double>& v) -> nlohmann::json {
    if (!v) return nullptr;
    return num(*v);
  };
  nlohmann::json j;
  j["gamma_f"] = num(e.gamma_f);
  j["gamma_r"] = num(e.gamma_r);
  j["gamma_sigma"] = num(e.gamma_sigma);
  j["se_f"] = opt(e.se_f);
  j["se_r"] = opt(e.se_r);
  j["se_sigma"] = opt(e.se_sigma);
  j["log_likelihood"] = num(e.log_likelihood);
  j["bootstrap_reps"] = e.bootstrap_reps;
  j["n_cfirst"] = e.n_cfirst;
  j["n_dfirst"] = e.n_dfirst;
  j["warnings"] = e.warnings;
  return j;
}

int run_estimate_noise(const NoiseOpts& o, const Common& c, std::ostream& out,
                       std::ostream& err) {
  if (o.bootstrap < 0) throw UsageError("--bootstrap must be >= 0");
  const auto records = read_choices_csv(o.input);
  const auto counts = pattern_counts(records);
  const auto est = estimate_mixture(counts, o.bootstrap, c.resolved_seed());
  for (const auto& w : est.warnings) err << "warning: " << w << '\n';
  out << noise_json(est, true).dump(2) << '\n';
  if (!c.out.empty()) {
    auto f = open_out(c.out);
    f << noise_json(est, false).dump(2) << '\n';
  }
  return kExitOk;
}

// --- power -----------------------------------------------------------------

struct PowerOpts {
  std::optional<std::int64_t> n;
  double budget = BudgetSpec{}.total_budget;
  std::uint64_t mc_reps = 0;
};

int run_power(const PowerOpts& o, const Common& c, std::ostream& out, std::ostream& err) {
  const EffectSpec effect = c.effect();
  const TestConfig cfg = c.test_config(std::max<std::uint64_t>(o.mc_reps, 1));

  struct Row {
    PopulationParams pop;
    PowerResult analytic;
    std::optional<PowerResult> mc;
  };
  std::vector<Row> rows;
  if (o.n) {
    std::vector<PopulationParams> pops;
    if (c.gamma || c.cost || !c.pops.empty()) {
      pops = c.populations(false);
    } else {
      pops.push_back({1.0, 0.0, "custom"});
    }
    for (const auto& pop : pops) {
      rows.push_back({pop, power_analytic(effect, pop.attenuation, *o.n, cfg), std::nullopt});
    }
  } else {
    for (const auto& pop : c.populations(true)) {
      rows.push_back({pop, power_at_budget(pop, effect, BudgetSpec{o.budget}, cfg), std::nullopt});
    }
  }
  if (o.mc_reps > 0) {
    for (auto& r : rows) r.mc = power_mc(effect, r.pop.attenuation, r.analytic.n, cfg);
  }

  out << "effect: p1=" << fmt4(effect.p1) << " p2=" << fmt4(effect.p2)
      << " critical_z=" << fmt4(cfg.critical_z);
  if (!o.n) out << " budget=" << fmt4(o.budget);
  out << '\n';
  out << std::left << std::setw(10) << "label" << std::right << std::setw(10) << "cost"
      << std::setw(8) << "gamma" << std::setw(8) << "n" << std::setw(10) << "power";
  if (o.mc_reps > 0) out << std::setw(10) << "power_mc" << std::setw(10) << "mc_se";
  out << '\n';
  for (const auto& r : rows) {
    out << std::left << std::setw(10) << r.pop.label << std::right << std::setw(10)
        << (o.n && !c.cost && c.pops.empty() ? std::string("-") : fmt4(r.pop.cost_per_obs))
        << std::setw(8) << fmt4(r.pop.attenuation) << std::setw(8) << r.analytic.n
        << std::setw(10) << fmt4(r.analytic.power);
    if (r.mc) out << std::setw(10) << fmt4(r.mc->power) << std::setw(10) << fmt4(r.mc->mc_stderr);
    out << '\n';
  }
  if (!o.n) err << kApproximationNote << '\n';

  if (!c.out.empty()) {
    auto f = open_out(c.out);
    f << "label,cost,gamma,n,power,method,mc_stderr\n";
    for (const auto& r : rows) {
      f << r.pop.label << ',' << r.pop.cost_per_obs << ',' << r.pop.attenuation << ','
        << r.analytic.n << ',' << r.analytic.power << ",analytic,0\n";
      if (r.mc) {
        f << r.pop.label << ',' << r.pop.cost_per_obs << ',' << r.pop.attenuation << ','
          << r.mc->n << ',' << r.mc->power << ",monte_carlo," << r.mc->mc_stderr << '\n';
      }
    }
  }
  return kExitOk;
}

// --- budget ----------------------------------------------------------------

struct BudgetOpts {
  double power = 0.90;
};

int run_budget(const BudgetOpts& o, const Common& c, std::ostream& out, std::ostream& err) {
  const EffectSpec effect = c.effect();
  const TestConfig cfg = c.test_config();
  out << "effect: p1=" << fmt4(effect.p1) << " p2=" << fmt4(effect.p2)
      << " target_power=" << fmt4(o.power) << " critical_z=" << fmt4(cfg.critical_z) << '\n';
  out << std::left << std::setw(10) << "label" << std::right << std::setw(10) << "cost"
      << std::setw(8) << "gamma" << std::setw(8) << "n" << std::setw(12) << "budget" << '\n';

  std::ostringstream csv;
  csv << "label,cost,gamma,n,budget\n";
  for (const auto& pop : c.populations(true)) {
    const auto n = sample_size_for_power(effect, pop.attenuation, o.power, cfg);
    const double dollars = budget_for_power(pop, effect, o.power, cfg);
    out << std::left << std::setw(10) << pop.label << std::right << std::setw(10)
        << fmt4(pop.cost_per_obs) << std::setw(8) << fmt4(pop.attenuation) << std::setw(8) << n
        << std::setw(12) << fmt4(dollars) << '\n';
    csv << pop.label << ',' << pop.cost_per_obs << ',' << pop.attenuation << ',' << n << ','
        << dollars << '\n';
  }
  err << kApproximationNote << '\n';
  if (!c.out.empty()) {
    auto f = open_out(c.out);
    f << csv.str();
  }
  return kExitOk;
}

// --- contours --------------------------------------------------------------

struct ContourOpts {
  std::string kind = "power";
  std::string levels;
  std::string gamma_grid;
  double budget = BudgetSpec{}.total_budget;
  double power = 0.90;
  std::string svg;
};

int run_contours(const ContourOpts& o, const Common& c, std::ostream& out, std::ostream& err) {
  const EffectSpec effect = c.effect();
  const TestConfig cfg = c.test_config();
  const std::vector<double> grid =
      o.gamma_grid.empty() ? default_gamma_grid() : parse_number_list(o.gamma_grid, "--gamma-grid");

  std::vector<Contour> contours;
  ChartLabels labels;
  if (o.kind == "power") {
    const auto levels = o.levels.empty() ? std::vector<double>{0.5, 0.75, 0.9, 0.95}
                                         : parse_number_list(o.levels, "--levels");
    for (double level : levels) {
      contours.push_back(iso_power_contour(BudgetSpec{o.budget}, level, effect, grid, cfg));
    }
    labels.title = "Iso-power contours ($" + std::to_string(std::lround(o.budget)) + " budget)";
    labels.value_prefix = "power ";
  } else if (o.kind == "budget") {
    const auto levels = o.levels.empty() ? std::vector<double>{500, 1000, 1650, 3000}
                                         : parse_number_list(o.levels, "--levels");
    contours = iso_budget_contour(o.power, effect, levels, grid, cfg);
    labels.title = "Iso-budget contours (" + std::to_string(std::lround(100 * o.power)) + "% power)";
    labels.value_prefix = "$";
  } else {
    throw UsageError("--kind must be 'power' or 'budget'");
  }

  for (const auto& ct : contours) {
    for (double g : ct.omitted_gammas) {
      err << "omitted: value " << fmt4(ct.value) << " unattainable at gamma " << fmt4(g) << '\n';
    }
  }
  if (c.out.empty()) {
    write_contours_csv(out, contours);
  } else {
    auto f = open_out(c.out);
    write_contours_csv(f, contours);
    out << "wrote " << contours.size() << " contours to " << c.out << '\n';
  }
  if (!o.svg.empty()) {
    auto f = open_out(o.svg);
    write_contours_svg(f, contours, labels);
  }
  return kExitOk;
}

// --- implied-gamma ---------------------------------------------------------

struct ImpliedOpts {
  double observed = 0.0;
  std::optional<double> reference;
};

int run_implied(const ImpliedOpts& o, const Common& c, std::ostream& out) {
  double reference = 0.0;
  if (o.reference) {
    if (!c.game_low.empty() || !c.game_high.empty()) {
      throw UsageError("use either --reference or --game-low/--game-high");
    }
    reference = *o.reference;
  } else {
    if (c.game_low.empty() || c.game_high.empty()) {
      throw UsageError("give --reference or both --game-low and --game-high");
    }
    const auto gs = c.games();
    reference = predicted_effect(find_game(gs, c.game_low), find_game(gs, c.game_high),
                                 c.calibration())
                    .delta();
  }
  const double gamma = implied_attenuation(o.observed, reference);
  out << "observed_delta: " << fmt4(o.observed) << '\n'
      << "reference_delta: " << fmt4(reference) << '\n'
      << "implied_gamma: " << fmt4(gamma) << '\n';
  if (!c.out.empty()) {
    auto f = open_out(c.out);
    nlohmann::json j{{"observed_delta", o.observed},
                     {"reference_delta", reference},
                     {"implied_gamma", gamma}};
    f << j.dump(2) << '\n';
  }
  return kExitOk;
}

// --- predict ---------------------------------------------------------------

int run_predict(const Common& c, std::ostream& out) {
  const auto gs = c.games();
  const Game& low = find_game(gs, c.game_low);
  const Game& high = find_game(gs, c.game_high);
  const auto cal = c.calibration();
  const EffectSpec e = predicted_effect(low, high, cal);
  out << "rho_low: " << fmt4(rapoport_ratio(low)) << '\n'
      << "rho_high: " << fmt4(rapoport_ratio(high)) << '\n'
      << "p1: " << fmt4(e.p1) << '\n'
      << "p2: " << fmt4(e.p2) << '\n'
      << "delta: " << fmt4(e.delta()) << '\n';
  if (!c.out.empty()) {
    auto f = open_out(c.out);
    nlohmann::json j{{"game_low", low.id},   {"game_high", high.id},
                     {"rho_low", rapoport_ratio(low)}, {"rho_high", rapoport_ratio(high)},
                     {"p1", e.p1},           {"p2", e.p2},
                     {"delta", e.delta()}};
    f << j.dump(2) << '\n';
  }
  return kExitOk;
}

// --- simulate --------------------------------------------------------------

struct SimOpts {
  std::int64_t n = 0;
  double gamma_f = 0.0;
  double gamma_r = 0.0;
  std::string coop;
  std::string frame_ratio = "2:1";
  std::string population = "sim";
  bool extended = false;
};

int run_simulate(const SimOpts& o, const Common& c, std::ostream& out) {
  SimSpec spec;
  spec.n = o.n;
  spec.gamma_f = o.gamma_f;
  spec.gamma_r = o.gamma_r;
  spec.seed = c.resolved_seed();
  spec.population = o.population;

  const auto colon = o.frame_ratio.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument(o.frame_ratio);
    std::size_t used_a = 0, used_b = 0;
    const std::string a = o.frame_ratio.substr(0, colon);
    const std::string b = o.frame_ratio.substr(colon + 1);
    spec.cfirst_weight = std::stoi(a, &used_a);
    spec.dfirst_weight = std::stoi(b, &used_b);
    if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument(o.frame_ratio);
  } catch (const std::exception&) {
    throw UsageError("--frame-ratio must look like 2:1");
  }

  if (!o.coop.empty()) {
    std::stringstream ss(o.coop);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("--coop entries must look like g1=0.48");
      std::string id = item.substr(0, eq);
      for (auto& ch : id) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      spec.attentive_coop[id] = parse_number_list(item.substr(eq + 1), "--coop").at(0);
    }
  }

  std::vector<Game> games;
  const auto all = c.games();
  for (const char* id : {"G1", "G2", "G3", "G4"}) games.push_back(find_game(all, id));
  if (o.extended) {
    for (const char* id : {"G5", "G6"}) games.push_back(find_game(all, id));
  }
  const auto records = simulate(spec, games, c.calibration());
  if (c.out.empty()) {
    write_choices_csv(out, records);
  } else {
    auto f = open_out(c.out);
    write_choices_csv(f, records);
    out << "wrote " << records.size() << " participants to " << c.out << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"expower: power-per-dollar analysis for experimental participant pools"};
  app.require_subcommand(1);
  Common common;
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "print the resolved configuration to stderr");

  ClassifyOpts classify_opts;
  auto* classify = app.add_subcommand("classify", "classify choice profiles and summarize");
  classify->add_option("--input", classify_opts.input, "participant CSV")->required();
  classify->add_option("--games-out", classify_opts.games_out,
                       "write per-game cooperation rates as CSV");
  add_out(classify, common, "write category summary CSV");
  add_games_file(classify, common);

  NoiseOpts noise_opts;
  auto* noise = app.add_subcommand("estimate-noise", "fit the three-type noise mixture");
  noise->add_option("--input", noise_opts.input, "participant CSV")->required();
  noise->add_option("--bootstrap", noise_opts.bootstrap, "bootstrap replicates")
      ->capture_default_str();
  add_seed(noise, common);
  add_out(noise, common, "write estimate JSON");

  PowerOpts power_opts;
  auto* power = app.add_subcommand("power", "power of the cooperation-rate test");
  power->add_option("--n", power_opts.n, "participants per game (overrides budget)");
  power->add_option("--budget", power_opts.budget, "total budget in dollars")
      ->capture_default_str();
  power->add_option("--mc-reps", power_opts.mc_reps, "also run Monte Carlo with this many reps")
      ->capture_default_str();
  add_effect(power, common);
  add_population(power, common);
  add_test(power, common);
  add_seed(power, common);
  add_out(power, common, "write results CSV");

  BudgetOpts budget_opts;
  auto* budget = app.add_subcommand("budget", "budget needed to reach a target power");
  budget->add_option("--power", budget_opts.power, "target power")->capture_default_str();
  add_effect(budget, common);
  add_population(budget, common);
  add_test(budget, common);
  add_out(budget, common, "write results CSV");

  ContourOpts contour_opts;
  auto* contours = app.add_subcommand("contours", "iso-power or iso-budget contours");
  contours->add_option("--kind", contour_opts.kind, "power | budget")->capture_default_str();
  contours->add_option("--levels", contour_opts.levels,
                       "comma list: power levels (kind=power) or budget labels (kind=budget)");
  contours->add_option("--gamma", contour_opts.gamma_grid,
                       "comma list of attenuation grid values (default 0:0.05:0.95)");
  contours->add_option("--budget", contour_opts.budget, "budget for iso-power contours")
      ->capture_default_str();
  contours->add_option("--power", contour_opts.power, "power level for iso-budget contours")
      ->capture_default_str();
  contours->add_option("--svg", contour_opts.svg, "write an SVG line chart");
  add_effect(contours, common);
  add_test(contours, common);
  add_out(contours, common, "write contour CSV");

  ImpliedOpts implied_opts;
  auto* implied = app.add_subcommand("implied-gamma", "attenuation implied by an observed effect");
  implied->add_option("--observed", implied_opts.observed, "observed effect p2 - p1")->required();
  implied->add_option("--reference", implied_opts.reference, "reference effect p2 - p1");
  implied->add_option("--game-low", common.game_low, "reference from predicted effect: low game");
  implied->add_option("--game-high", common.game_high, "reference from predicted effect: high game");
  add_games_file(implied, common);
  add_logit(implied, common);
  add_out(implied, common, "write result JSON");

  auto* predict = app.add_subcommand("predict", "predicted cooperation from Rapoport ratios");
  predict->add_option("--game-low", common.game_low, "low-rho game id")->required();
  predict->add_option("--game-high", common.game_high, "high-rho game id")->required();
  add_games_file(predict, common);
  add_logit(predict, common);
  add_out(predict, common, "write result JSON");

  SimOpts sim_opts;
  auto* sim = app.add_subcommand("simulate", "generate a synthetic participant dataset");
  sim->add_option("--n", sim_opts.n, "participants")->required();
  sim->add_option("--gamma-f", sim_opts.gamma_f, "first-option type share")->capture_default_str();
  sim->add_option("--gamma-r", sim_opts.gamma_r, "random type share")->capture_default_str();
  sim->add_option("--coop", sim_opts.coop,
                  "attentive cooperation overrides, e.g. g1=0.48,g2=0.65");
  sim->add_option("--frame-ratio", sim_opts.frame_ratio, "C_first:D_first quota")
      ->capture_default_str();
  sim->add_option("--population", sim_opts.population, "population label")->capture_default_str();
  sim->add_flag("--extended", sim_opts.extended, "include robustness games G5 and G6");
  add_seed(sim, common);
  add_games_file(sim, common);
  add_logit(sim, common);
  add_out(sim, common, "participant CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsageError;
  }

  try {
    if (verbose) {
      err << "subcommand: " << app.get_subcommands().front()->get_name() << '\n';
      err << "seed: " << common.resolved_seed() << '\n';
    }
    if (classify->parsed()) return run_classify(classify_opts, common, out);
    if (noise->parsed()) return run_estimate_noise(noise_opts, common, out, err);
    if (power->parsed()) return run_power(power_opts, common, out, err);
    if (budget->parsed()) return run_budget(budget_opts, common, out, err);
    if (contours->parsed()) return run_contours(contour_opts, common, out, err);
    if (implied->parsed()) return run_implied(implied_opts, common, out);
    if (predict->parsed()) return run_predict(common, out);
    if (sim->parsed()) return run_simulate(sim_opts, common, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return e.code() == ErrorCode::kInvalidArgument ? kExitUsageError : kExitDataError;
  }
  err << "usage error: no subcommand\n";
  return kExitUsageError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"expower"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace expower::cli
