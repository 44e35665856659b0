#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "expower/behavior.hpp"
#include "expower/effect.hpp"

namespace expower {

struct SimSpec {
  std::int64_t n = 0;
  double gamma_f = 0.0;
  double gamma_r = 0.0;
  // Attentive-type cooperation probability per game id. Games missing here
  // fall back to default_attentive_coop().
  std::map<std::string, double> attentive_coop;
  // Participants are assigned to frames round-robin in blocks of
  // cfirst_weight C_first followed by dfirst_weight D_first.
  int cfirst_weight = 2;
  int dfirst_weight = 1;
  std::uint64_t seed = 0;
  std::string population = "sim";
};

void validate(const SimSpec& spec);

// Sigma-dominance (1) for games with a sigma-dominated action, logit
// prediction from the Rapoport ratio for PD games, 0.5 otherwise.
double default_attentive_coop(const Game& game, const LogitCalibration& cal = {});

// Choices for every game in `games`. Participant i uses a random stream keyed
// on (seed, i).
std::vector<ChoiceRecord> simulate(const SimSpec& spec, const std::vector<Game>& games,
                                   const LogitCalibration& cal = {});

}  // namespace expower
