#include "expower/simulate.hpp"

#include <cmath>
#include <random>

#include "expower/error.hpp"
#include "expower/random.hpp"

namespace expower {

namespace {

enum class Type { kFirstOption, kRandom, kAttentive };

}  // namespace

void validate(const SimSpec& spec) {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kInvalidSpec, msg); };
  if (spec.n < 1) fail("participant count must be >= 1");
  if (!(spec.gamma_f >= 0.0 && spec.gamma_r >= 0.0 && spec.gamma_f + spec.gamma_r <= 1.0)) {
    fail("gamma_f and gamma_r must be non-negative with sum <= 1");
  }
  for (const auto& [id, p] : spec.attentive_coop) {
    if (!(p >= 0.0 && p <= 1.0)) fail("attentive cooperation for " + id + " must lie in [0,1]");
  }
  if (spec.cfirst_weight < 0 || spec.dfirst_weight < 0 ||
      spec.cfirst_weight + spec.dfirst_weight == 0) {
    fail("frame ratio weights must be non-negative and not both zero");
  }
}

double default_attentive_coop(const Game& game, const LogitCalibration& cal) {
  const auto report = classify_dominance(game);
  if (report.sigma_dominated_action) {
    return *report.sigma_dominated_action == Action::kDefect ? 1.0 : 0.0;
  }
  if (report.is_pd) return predicted_coop(rapoport_ratio(game), cal);
  return 0.5;
}

std::vector<ChoiceRecord> simulate(const SimSpec& spec, const std::vector<Game>& games,
                                   const LogitCalibration& cal) {
  validate(spec);
  std::vector<double> coop;
  for (const auto& g : games) {
    auto it = spec.attentive_coop.find(g.id);
    coop.push_back(it != spec.attentive_coop.end() ? it->second : default_attentive_coop(g, cal));
  }
  for (const auto& [id, p] : spec.attentive_coop) find_game(games, id);

  const int block = spec.cfirst_weight + spec.dfirst_weight;
  const int width = static_cast<int>(std::to_string(spec.n).size());
  std::vector<ChoiceRecord> out;
  out.reserve(static_cast<std::size_t>(spec.n));
  for (std::int64_t i = 0; i < spec.n; ++i) {
    SplitMix64 rng = derive_stream(spec.seed, static_cast<std::uint64_t>(i));
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    ChoiceRecord r;
    std::string id = std::to_string(i + 1);
    r.participant_id = "P" + std::string(width - id.size(), '0') + id;
    r.population = spec.population;
    r.frame = (i % block) < spec.cfirst_weight ? Frame::kCFirst : Frame::kDFirst;

    const double u = unit(rng);
    const Type type = u < spec.gamma_f                  ? Type::kFirstOption
                      : u < spec.gamma_f + spec.gamma_r ? Type::kRandom
                                                        : Type::kAttentive;
    for (std::size_t g = 0; g < games.size(); ++g) {
      Action a = Action::kCooperate;
      switch (type) {
        case Type::kFirstOption:
          a = r.frame == Frame::kCFirst ? Action::kCooperate : Action::kDefect;
          break;
        case Type::kRandom:
          a = unit(rng) < 0.5 ? Action::kCooperate : Action::kDefect;
          break;
        case Type::kAttentive:
          a = unit(rng) < coop[g] ? Action::kCooperate : Action::kDefect;
          break;
      }
      r.choices[games[g].id] = a;
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace expower
