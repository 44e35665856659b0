#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "expower_cli/cli.hpp"

namespace fs = std::filesystem;
using expower::cli::run;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Result r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(EXPOWER_BINARY_DIR) / "cli_scratch";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("predict") {
  const auto r = call({"predict", "--game-low", "G1", "--game-high", "G2"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "p1: 0.4817"));
  CHECK(contains(r.out, "p2: 0.6543"));
  CHECK(contains(r.out, "rho_high: 0.7143"));

  const auto json_path = scratch("predict.json");
  CHECK(call({"predict", "--game-low", "G5", "--game-high", "G2", "--out", json_path.string()})
            .code == 0);
  const auto j = nlohmann::json::parse(slurp(json_path));
  CHECK(std::abs(j["delta"].get<double>() - 0.48) <= 0.01);

  CHECK(call({"predict", "--game-low", "G9", "--game-high", "G2"}).code == 1);
}

TEST_CASE("power") {
  const auto full = call({"power", "--p1", "0.48", "--p2", "0.65", "--gamma", "1", "--n", "100"});
  CHECK(full.code == 0);
  CHECK(contains(full.out, "0.0500"));

  const auto pops = call({"power"});
  CHECK(pops.code == 0);
  CHECK(contains(pops.out, "prolific"));
  CHECK(contains(pops.out, "lab"));
  CHECK(contains(pops.err, "normal approximation"));

  const auto mc = call({"power", "--n", "80", "--gamma", "0.2", "--mc-reps", "5000", "--seed", "3"});
  CHECK(mc.code == 0);
  CHECK(contains(mc.out, "power_mc"));

  CHECK(call({"power", "--p1", "0.4"}).code == 2);
  CHECK(call({"power", "--p1", "1.4", "--p2", "0.5"}).code == 2);
  CHECK(call({"power", "--pop", "moon"}).code == 2);
  CHECK(call({"power", "--cost", "1650"}).code == 1);
}

TEST_CASE("budget ordering is printed for the reference populations") {
  const auto csv = scratch("budget.csv");
  const auto r = call({"budget", "--power", "0.9", "--out", csv.string()});
  CHECK(r.code == 0);
  std::istringstream in(slurp(csv));
  std::string line;
  std::getline(in, line);
  CHECK(line == "label,cost,gamma,n,budget");
  std::map<std::string, double> dollars;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string label, field;
    std::getline(ss, label, ',');
    for (int i = 0; i < 4; ++i) std::getline(ss, field, ',');
    dollars[label] = std::stod(field);
  }
  CHECK(dollars.at("prolific") < dollars.at("mturk"));
  CHECK(dollars.at("mturk") < dollars.at("lab"));
}

TEST_CASE("contours write CSV and SVG") {
  const auto csv = scratch("contours.csv");
  const auto svg = scratch("contours.svg");
  const auto r = call({"contours", "--kind", "power", "--levels", "0.8,0.9", "--gamma",
                       "0,0.5,1", "--out", csv.string(), "--svg", svg.string()});
  CHECK(r.code == 0);
  CHECK(slurp(csv).rfind("gamma,cost,value\n", 0) == 0);
  CHECK(contains(r.out, "wrote 2 contours"));
  CHECK(!contains(r.out, "gamma,cost,value"));
  CHECK(contains(r.err, "omitted"));
  CHECK(contains(slurp(svg), "<polyline"));

  const auto b = call({"contours", "--kind", "budget", "--levels", "1000,2000"});
  CHECK(b.code == 0);
  CHECK(contains(b.out, ",2000.0000\n"));
  CHECK(call({"contours", "--kind", "other"}).code == 2);
  CHECK(call({"contours", "--gamma", "1"}).code == 1);
}

TEST_CASE("implied-gamma") {
  const auto r = call({"implied-gamma", "--observed", "-0.02", "--reference", "0.17"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "implied_gamma: 1.0000"));
  const auto g = call({"implied-gamma", "--observed", "0.264", "--game-low", "G5", "--game-high",
                       "G2"});
  CHECK(g.code == 0);
  CHECK(contains(g.out, "implied_gamma: 0.45"));
  CHECK(call({"implied-gamma", "--observed", "0.1", "--reference", "0"}).code == 1);
  CHECK(call({"implied-gamma", "--observed", "0.1"}).code == 2);
}

TEST_CASE("simulate, classify and estimate-noise round trip") {
  const auto data = scratch("sim.csv");
  const auto sim = call({"simulate", "--n", "3000", "--gamma-f", "0", "--gamma-r", "0.4",
                         "--seed", "21", "--out", data.string()});
  REQUIRE(sim.code == 0);

  const auto summary = scratch("summary.csv");
  const auto cls = call({"classify", "--input", data.string(), "--out", summary.string()});
  REQUIRE(cls.code == 0);
  CHECK(contains(cls.out, "participants: 3000"));
  // Only random participants (40%) can be sigma-dominated, with chance 3/4.
  std::istringstream in(slurp(summary));
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  CHECK(line.rfind("sigma_dominated,", 0) == 0);
  const double p = std::stod(line.substr(line.find(',') + 1));
  CHECK(std::abs(p - 0.3) <= 4 * std::sqrt(0.3 * 0.7 / 3000));

  const auto noise = call({"estimate-noise", "--input", data.string(), "--bootstrap", "50",
                           "--seed", "2"});
  REQUIRE(noise.code == 0);
  const auto j = nlohmann::json::parse(noise.out);
  for (const char* key : {"gamma_f", "gamma_r", "gamma_sigma", "se_f", "se_r", "se_sigma",
                          "log_likelihood", "n_cfirst", "n_dfirst"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["n_cfirst"] == 2000);
  CHECK(j["n_dfirst"] == 1000);
  CHECK(std::abs(j["gamma_r"].get<double>() - 0.4) < 0.05);

  const auto no_boot = call({"estimate-noise", "--input", data.string(), "--bootstrap", "0"});
  CHECK(nlohmann::json::parse(no_boot.out)["se_f"].is_null());
}

TEST_CASE("identical invocations give identical bytes") {
  const std::vector<std::string> args = {"simulate", "--n", "200", "--gamma-f", "0.1",
                                         "--gamma-r", "0.2", "--seed", "5", "--extended"};
  const auto a = call(args);
  const auto b = call(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(contains(a.out, "g5,g6"));

  ::setenv("EXPOWER_SEED", "5", 1);
  auto env_args = args;
  env_args.erase(env_args.begin() + 7, env_args.begin() + 9);
  const auto c = call(env_args);
  ::unsetenv("EXPOWER_SEED");
  CHECK(c.out == a.out);

  const auto m1 = call({"power", "--n", "60", "--mc-reps", "2000", "--seed", "8"});
  const auto m2 = call({"power", "--n", "60", "--mc-reps", "2000", "--seed", "8"});
  CHECK(m1.out == m2.out);
}

TEST_CASE("invalid CSV rows are reported with line numbers") {
  const auto bad = scratch("bad.csv");
  {
    std::ofstream f(bad);
    f << "participant_id,population,frame,g1,g2,g3,g4\n"
      << "a,lab,C_first,C,C,C,C\n"
      << "b,lab,C_first,C,Q,C,C\n";
  }
  const auto r = call({"classify", "--input", bad.string()});
  CHECK(r.code == 1);
  CHECK(contains(r.err, "line 3"));
  CHECK(call({"classify", "--input", scratch("missing.csv").string()}).code == 1);
}

TEST_CASE("help and usage errors") {
  const auto top = call({"--help"});
  CHECK(top.code == 0);
  for (const char* sub : {"classify", "estimate-noise", "power", "budget", "contours",
                          "implied-gamma", "predict", "simulate"}) {
    CHECK(contains(top.out, sub));
    const auto h = call({sub, "--help"});
    CHECK(h.code == 0);
    CHECK(contains(h.out, "--"));
  }
  const auto power_help = call({"power", "--help"});
  for (const char* flag : {"--budget", "--gamma", "--cost", "--p1", "--p2", "--critical-z",
                           "--mc-reps", "--seed", "--pop", "--n", "--logit-scale", "--logit-slope"}) {
    CHECK(contains(power_help.out, flag));
  }
  const auto sim_help = call({"simulate", "--help"});
  for (const char* flag : {"--n", "--gamma-f", "--gamma-r", "--coop", "--frame-ratio", "--seed",
                           "--out"}) {
    CHECK(contains(sim_help.out, flag));
  }
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"classify"}).code == 2);
  CHECK(call({"simulate", "--n", "10", "--frame-ratio", "2-1"}).code == 2);
  CHECK(call({"simulate", "--n", "10", "--coop", "g1"}).code == 2);
}

TEST_CASE("custom games file") {
  const auto games = scratch("games.json");
  {
    std::ofstream f(games);
    f << R"([{"id":"G1","cc":3,"cd":0,"dc":5,"dd":1},{"id":"G2","cc":4,"cd":0,"dc":5,"dd":1}])";
  }
  const auto r = call({"predict", "--game-low", "G1", "--game-high", "G2", "--games-file",
                       games.string()});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "rho_low: 0.4000"));
  CHECK(contains(r.out, "rho_high: 0.6000"));
}
