#pragma once

// Three-type noise mixture fitted to (G3, G4) choice patterns by frame.
//
// Types and their pattern emissions:
//   first-option  CC under C_first, DD under D_first, with certainty
//   random        each of CC, CD, DC, DD with probability 1/4
//   attentive     CC with certainty (never plays the sigma-dominated D)

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expower/behavior.hpp"

namespace expower {

enum class Pattern { kCC = 0, kCD = 1, kDC = 2, kDD = 3 };

struct PatternCounts {
  // Indexed [frame][pattern], frame 0 = C_first, 1 = D_first.
  std::array<std::array<std::int64_t, 4>, 2> counts{};

  std::int64_t& at(Frame f, Pattern p) {
    return counts[f == Frame::kCFirst ? 0 : 1][static_cast<int>(p)];
  }
  std::int64_t at(Frame f, Pattern p) const {
    return counts[f == Frame::kCFirst ? 0 : 1][static_cast<int>(p)];
  }
  std::int64_t frame_total(Frame f) const;
  std::int64_t total() const;
};

struct MixtureWeights {
  double gamma_f = 0.0;
  double gamma_r = 0.0;

  double gamma_sigma() const { return 1.0 - gamma_f - gamma_r; }
};

struct NoiseEstimate {
  double gamma_f = 0.0;
  double gamma_r = 0.0;
  double gamma_sigma = 1.0;
  // Bootstrap standard deviations; absent when no bootstrap was run.
  std::optional<double> se_f;
  std::optional<double> se_r;
  std::optional<double> se_sigma;
  double log_likelihood = 0.0;
  std::int64_t bootstrap_reps = 0;
  std::int64_t n_cfirst = 0;
  std::int64_t n_dfirst = 0;
  std::vector<std::string> warnings;
};

PatternCounts pattern_counts(const std::vector<ChoiceRecord>& records);

// Probability of `pattern` under frame `frame` for the given weights.
double pattern_probability(const MixtureWeights& w, Frame frame, Pattern pattern);

// sum count * log(emission); -infinity when a counted pattern is impossible.
// Throws kDomain outside the simplex.
double mixture_loglik(const MixtureWeights& w, const PatternCounts& counts);

// Maximum likelihood over the simplex: grid at step 0.001, then local
// refinement. Bootstrap resamples participants within each frame.
NoiseEstimate estimate_mixture(const PatternCounts& counts, std::int64_t bootstrap_reps,
                               std::uint64_t seed);

// Closed form from sigma-dominated rates per frame:
// C_first rate = 3/4 gamma_R, D_first rate = 3/4 gamma_R + gamma_F.
MixtureWeights moment_estimate(double dom_rate_cfirst, double dom_rate_dfirst);

}  // namespace expower
