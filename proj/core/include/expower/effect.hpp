#pragma once

#include "expower/game.hpp"

namespace expower {

// Coop(rho) = 1 / (1 + scale * exp(-slope * rho)), fitted on external lab data.
struct LogitCalibration {
  double scale = 5.66;
  double slope = 3.32;
};

// True cooperation rates: p1 for the low-rho game, p2 for the high-rho game.
struct EffectSpec {
  double p1 = 0.0;
  double p2 = 0.0;

  double delta() const { return p2 - p1; }
};

void validate(const LogitCalibration& cal);
void validate(const EffectSpec& effect);

double predicted_coop(double rho, const LogitCalibration& cal = {});

EffectSpec predicted_effect(const Game& game_low, const Game& game_high,
                            const LogitCalibration& cal = {});

}  // namespace expower
