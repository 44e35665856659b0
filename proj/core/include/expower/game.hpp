#pragma once

// Symmetric 2x2 games: payoffs, Rapoport ratio, and dominance relations.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace expower {

enum class Action { kCooperate, kDefect };

char to_char(Action a);
Action other(Action a);

// Own payoff pi_i(a_i, a_j) in dollars. The opponent's payoff at (a_i, a_j)
// is the own payoff at (a_j, a_i).
struct Game {
  std::string id;
  double payoff_cc = 0.0;
  double payoff_cd = 0.0;
  double payoff_dc = 0.0;
  double payoff_dd = 0.0;

  double payoff(Action own, Action opponent) const;
  // Sum of both players' payoffs at (own, opponent).
  double total(Action own, Action opponent) const;
};

// Throws ErrorCode::kInvalidArgument for negative or non-finite payoffs.
void validate(const Game& game);

struct DominanceReport {
  std::optional<Action> i_dominant_action;
  std::optional<Action> sigma_dominated_action;
  bool is_pd = false;
};

// (pi(C,C) - pi(D,D)) / (pi(D,C) - pi(C,D)). Signed; no clamping for non-PDs.
// Throws kDegenerateDenominator when pi(D,C) == pi(C,D).
double rapoport_ratio(const Game& game);

DominanceReport classify_dominance(const Game& game);

// G1-G4 (core design) and G5-G6 (robustness sample).
const std::vector<Game>& builtin_games();

// Throws kMissingGame when `id` is not in `games`.
const Game& find_game(const std::vector<Game>& games, std::string_view id);

// JSON array of {"id", "cc", "cd", "dc", "dd"}.
std::vector<Game> parse_games_json(std::string_view text);
std::vector<Game> load_games(const std::filesystem::path& path);

}  // namespace expower
