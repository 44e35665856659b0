#include "expower/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "expower/error.hpp"
#include "expower/random.hpp"

namespace expower {

namespace {

constexpr int kGridSteps = 1000;  // step 0.001
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// The likelihood depends on the counts only through four totals:
//   stay   C_first CC            log(1 - 3/4 r)
//   noise  any non-CC pattern    log(r/4), except D_first DD
//   cc_d   D_first CC            log(1 - f - 3/4 r)
//   dd_d   D_first DD            log(r/4 + f)
struct Sufficient {
  double stay = 0.0;
  double noise = 0.0;
  double cc_d = 0.0;
  double dd_d = 0.0;
};

Sufficient sufficient(const PatternCounts& c) {
  const auto& cf = c.counts[0];
  const auto& df = c.counts[1];
  return {static_cast<double>(cf[0]),
          static_cast<double>(cf[1] + cf[2] + cf[3] + df[1] + df[2]),
          static_cast<double>(df[0]), static_cast<double>(df[3])};
}

double safe_log(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

double term(double count, double log_prob) { return count > 0.0 ? count * log_prob : 0.0; }

double loglik(const Sufficient& s, double f, double r) {
  return term(s.stay, safe_log(1.0 - 0.75 * r)) + term(s.noise, safe_log(0.25 * r)) +
         term(s.cc_d, safe_log(1.0 - f - 0.75 * r)) + term(s.dd_d, safe_log(0.25 * r + f));
}

// Count-independent log tables over the simplex grid, shared by every fit.
struct GridTables {
  std::vector<double> log_stay;   // by r index
  std::vector<double> log_noise;  // by r index
  std::vector<double> log_cc_d;   // by packed (f, r) index
  std::vector<double> log_dd_d;
  std::vector<int> row_start;     // packed offset of f index i

  GridTables() {
    const double h = 1.0 / kGridSteps;
    for (int j = 0; j <= kGridSteps; ++j) {
      log_stay.push_back(safe_log(1.0 - 0.75 * j * h));
      log_noise.push_back(safe_log(0.25 * j * h));
    }
    for (int i = 0; i <= kGridSteps; ++i) {
      row_start.push_back(static_cast<int>(log_cc_d.size()));
      for (int j = 0; i + j <= kGridSteps; ++j) {
        const double f = i * h;
        const double r = j * h;
        log_cc_d.push_back(safe_log(std::max(0.0, 1.0 - f - 0.75 * r)));
        log_dd_d.push_back(safe_log(0.25 * r + f));
      }
    }
  }
};

const GridTables& grid_tables() {
  static const GridTables tables;
  return tables;
}

MixtureWeights grid_search(const Sufficient& s) {
  const auto& t = grid_tables();
  double best = kNegInf;
  int best_i = 0;
  int best_j = 0;
  for (int i = 0; i <= kGridSteps; ++i) {
    const int base = t.row_start[i];
    for (int j = 0; i + j <= kGridSteps; ++j) {
      const double ll = term(s.stay, t.log_stay[j]) + term(s.noise, t.log_noise[j]) +
                        term(s.cc_d, t.log_cc_d[base + j]) + term(s.dd_d, t.log_dd_d[base + j]);
      if (ll > best) {
        best = ll;
        best_i = i;
        best_j = j;
      }
    }
  }
  return {best_i / static_cast<double>(kGridSteps), best_j / static_cast<double>(kGridSteps)};
}

bool in_simplex(double f, double r) { return f >= 0.0 && r >= 0.0 && f + r <= 1.0; }

// Compass search around the grid optimum; the objective is concave.
MixtureWeights refine(const Sufficient& s, MixtureWeights w) {
  double best = loglik(s, w.gamma_f, w.gamma_r);
  static constexpr double kDirs[6][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}};
  for (double step = 1.0 / kGridSteps; step > 1e-12; step *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (const auto& d : kDirs) {
        double f = w.gamma_f + d[0] * step;
        double r = w.gamma_r + d[1] * step;
        // Snap onto the boundary rather than stepping past it.
        f = std::clamp(f, 0.0, 1.0);
        r = std::clamp(r, 0.0, 1.0 - f);
        if (!in_simplex(f, r)) continue;
        const double ll = loglik(s, f, r);
        if (ll > best) {
          best = ll;
          w = {f, r};
          improved = true;
        }
      }
    }
  }
  return w;
}

MixtureWeights fit(const Sufficient& s) { return refine(s, grid_search(s)); }

PatternCounts resample(const PatternCounts& counts, SplitMix64& rng) {
  PatternCounts out;
  for (int f = 0; f < 2; ++f) {
    const auto& row = counts.counts[f];
    std::int64_t n = 0;
    for (auto c : row) n += c;
    if (n == 0) continue;
    std::uniform_int_distribution<std::int64_t> pick(0, n - 1);
    for (std::int64_t k = 0; k < n; ++k) {
      std::int64_t idx = pick(rng);
      int p = 0;
      while (idx >= row[p]) idx -= row[p++];
      ++out.counts[f][p];
    }
  }
  return out;
}

double sample_sd(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

Pattern pattern_of(Action g3, Action g4) {
  const bool c3 = g3 == Action::kCooperate;
  const bool c4 = g4 == Action::kCooperate;
  if (c3 && c4) return Pattern::kCC;
  if (c3) return Pattern::kCD;
  if (c4) return Pattern::kDC;
  return Pattern::kDD;
}

}  // namespace

std::int64_t PatternCounts::frame_total(Frame f) const {
  std::int64_t t = 0;
  for (auto c : counts[f == Frame::kCFirst ? 0 : 1]) t += c;
  return t;
}

std::int64_t PatternCounts::total() const {
  return frame_total(Frame::kCFirst) + frame_total(Frame::kDFirst);
}

PatternCounts pattern_counts(const std::vector<ChoiceRecord>& records) {
  PatternCounts out;
  for (const auto& r : records) {
    auto g3 = r.choices.find("G3");
    auto g4 = r.choices.find("G4");
    if (g3 == r.choices.end() || g4 == r.choices.end()) {
      throw Error(ErrorCode::kMissingGame,
                  "participant " + r.participant_id + " lacks a G3 or G4 choice");
    }
    ++out.at(r.frame, pattern_of(g3->second, g4->second));
  }
  return out;
}

double pattern_probability(const MixtureWeights& w, Frame frame, Pattern pattern) {
  const double sigma = w.gamma_sigma();
  const double random = 0.25 * w.gamma_r;
  const Pattern first = frame == Frame::kCFirst ? Pattern::kCC : Pattern::kDD;
  double p = random;
  if (pattern == Pattern::kCC) p += sigma;
  if (pattern == first) p += w.gamma_f;
  return p;
}

double mixture_loglik(const MixtureWeights& w, const PatternCounts& counts) {
  const double eps = 1e-12;
  if (!(w.gamma_f >= 0.0 && w.gamma_r >= 0.0 && w.gamma_f + w.gamma_r <= 1.0 + eps)) {
    throw Error(ErrorCode::kDomain, "mixture weights must lie in the simplex");
  }
  double ll = 0.0;
  for (Frame f : {Frame::kCFirst, Frame::kDFirst}) {
    for (Pattern p : {Pattern::kCC, Pattern::kCD, Pattern::kDC, Pattern::kDD}) {
      const auto c = counts.at(f, p);
      if (c == 0) continue;
      ll += static_cast<double>(c) * safe_log(pattern_probability(w, f, p));
    }
  }
  return ll;
}

NoiseEstimate estimate_mixture(const PatternCounts& counts, std::int64_t bootstrap_reps,
                               std::uint64_t seed) {
  for (const auto& row : counts.counts) {
    for (auto c : row) {
      if (c < 0) throw Error(ErrorCode::kInvalidArgument, "pattern counts must be >= 0");
    }
  }
  if (counts.total() < 1) throw Error(ErrorCode::kEmptyData, "no participants to estimate from");
  if (bootstrap_reps < 0) throw Error(ErrorCode::kInvalidArgument, "bootstrap reps must be >= 0");

  NoiseEstimate est;
  est.n_cfirst = counts.frame_total(Frame::kCFirst);
  est.n_dfirst = counts.frame_total(Frame::kDFirst);
  const MixtureWeights w = fit(sufficient(counts));
  est.gamma_f = w.gamma_f;
  est.gamma_r = w.gamma_r;
  est.gamma_sigma = std::max(0.0, w.gamma_sigma());
  est.log_likelihood = mixture_loglik(w, counts);
  est.bootstrap_reps = bootstrap_reps;
  if (est.n_cfirst == 0 || est.n_dfirst == 0) {
    est.warnings.push_back(
        "only one frame present: first-option and attentive types are not separately "
        "identified; gamma_f reported at the lowest maximizing value");
  }

  if (bootstrap_reps >= 2) {
    std::vector<MixtureWeights> draws(static_cast<std::size_t>(bootstrap_reps));
    auto run = [&](std::int64_t begin, std::int64_t end) {
      for (std::int64_t b = begin; b < end; ++b) {
        SplitMix64 rng = derive_stream(seed, static_cast<std::uint64_t>(b));
        draws[b] = fit(sufficient(resample(counts, rng)));
      }
    };
    const auto hw = static_cast<std::int64_t>(std::max(1u, std::thread::hardware_concurrency()));
    const std::int64_t workers = std::min(hw, bootstrap_reps);
    if (workers <= 1) {
      run(0, bootstrap_reps);
    } else {
      std::vector<std::thread> threads;
      const std::int64_t chunk = (bootstrap_reps + workers - 1) / workers;
      for (std::int64_t begin = 0; begin < bootstrap_reps; begin += chunk) {
        threads.emplace_back(run, begin, std::min(bootstrap_reps, begin + chunk));
      }
      for (auto& t : threads) t.join();
    }
    std::vector<double> fs, rs, ss;
    for (const auto& d : draws) {
      fs.push_back(d.gamma_f);
      rs.push_back(d.gamma_r);
      ss.push_back(d.gamma_sigma());
    }
    est.se_f = sample_sd(fs);
    est.se_r = sample_sd(rs);
    est.se_sigma = sample_sd(ss);
  } else if (bootstrap_reps == 1) {
    est.warnings.push_back("a single bootstrap replicate cannot estimate a standard error");
  }
  return est;
}

MixtureWeights moment_estimate(double dom_rate_cfirst, double dom_rate_dfirst) {
  const double gamma_f = std::clamp(dom_rate_dfirst - dom_rate_cfirst, 0.0, 1.0);
  const double gamma_r = std::clamp(dom_rate_cfirst * 4.0 / 3.0, 0.0, 1.0 - gamma_f);
  return {gamma_f, gamma_r};
}

}  // namespace expower
