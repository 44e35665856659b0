#include "expower/effect.hpp"

#include <cmath>

#include "expower/error.hpp"

namespace expower {

void validate(const LogitCalibration& cal) {
  if (!(cal.scale > 0.0) || !std::isfinite(cal.scale) || !std::isfinite(cal.slope)) {
    throw Error(ErrorCode::kInvalidArgument,
                "logit calibration needs a positive finite scale and finite slope");
  }
}

void validate(const EffectSpec& effect) {
  for (double p : {effect.p1, effect.p2}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "cooperation rates must lie in [0,1]");
    }
  }
}

double predicted_coop(double rho, const LogitCalibration& cal) {
  validate(cal);
  // log-space form keeps the result in (0,1) without overflow for large |rho|.
  const double z = cal.slope * rho - std::log(cal.scale);
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

EffectSpec predicted_effect(const Game& game_low, const Game& game_high,
                            const LogitCalibration& cal) {
  return {predicted_coop(rapoport_ratio(game_low), cal),
          predicted_coop(rapoport_ratio(game_high), cal)};
}

}  // namespace expower
