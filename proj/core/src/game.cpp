#include "expower/game.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "expower/error.hpp"

namespace expower {

char to_char(Action a) { return a == Action::kCooperate ? 'C' : 'D'; }

Action other(Action a) {
  return a == Action::kCooperate ? Action::kDefect : Action::kCooperate;
}

double Game::payoff(Action own, Action opponent) const {
  if (own == Action::kCooperate) {
    return opponent == Action::kCooperate ? payoff_cc : payoff_cd;
  }
  return opponent == Action::kCooperate ? payoff_dc : payoff_dd;
}

double Game::total(Action own, Action opponent) const {
  return payoff(own, opponent) + payoff(opponent, own);
}

void validate(const Game& game) {
  for (double v : {game.payoff_cc, game.payoff_cd, game.payoff_dc, game.payoff_dd}) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "game " + game.id + ": payoffs must be finite and non-negative");
    }
  }
}

double rapoport_ratio(const Game& game) {
  const double denom = game.payoff_dc - game.payoff_cd;
  if (denom == 0.0) {
    throw Error(ErrorCode::kDegenerateDenominator,
                "game " + game.id + ": pi(D,C) equals pi(C,D), Rapoport ratio undefined");
  }
  return (game.payoff_cc - game.payoff_dd) / denom;
}

namespace {

// True when `a` beats the alternative strictly against both opponent actions.
bool strictly_better_own(const Game& g, Action a) {
  const Action b = other(a);
  return g.payoff(a, Action::kCooperate) > g.payoff(b, Action::kCooperate) &&
         g.payoff(a, Action::kDefect) > g.payoff(b, Action::kDefect);
}

bool strictly_better_total(const Game& g, Action a) {
  const Action b = other(a);
  return g.total(a, Action::kCooperate) > g.total(b, Action::kCooperate) &&
         g.total(a, Action::kDefect) > g.total(b, Action::kDefect);
}

}  // namespace

DominanceReport classify_dominance(const Game& game) {
  DominanceReport report;
  for (Action a : {Action::kCooperate, Action::kDefect}) {
    if (strictly_better_own(game, a)) {
      report.i_dominant_action = a;
      if (strictly_better_total(game, a)) report.sigma_dominated_action = other(a);
    }
  }
  report.is_pd = report.i_dominant_action == Action::kDefect &&
                 game.payoff_cc > game.payoff_dd;
  return report;
}

const std::vector<Game>& builtin_games() {
  static const std::vector<Game> games = {
      {"G1", 21, 2, 28, 8},  {"G2", 19, 8, 22, 9},   {"G3", 17, 12, 16, 10},
      {"G4", 15, 16, 10, 11}, {"G5", 14, 5, 25, 13}, {"G6", 18, 3, 27, 12},
  };
  return games;
}

const Game& find_game(const std::vector<Game>& games, std::string_view id) {
  for (const auto& g : games) {
    if (g.id == id) return g;
  }
  throw Error(ErrorCode::kMissingGame, "unknown game id '" + std::string(id) + "'");
}

std::vector<Game> parse_games_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("games JSON: ") + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorCode::kParse, "games JSON: expected an array");

  std::vector<Game> games;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& item = doc[i];
    auto number = [&](const char* key) {
      if (!item.is_object() || !item.contains(key) || !item[key].is_number()) {
        throw Error(ErrorCode::kParse, "games JSON entry " + std::to_string(i) +
                                           ": missing numeric field '" + key + "'");
      }
      return item[key].get<double>();
    };
    if (!item.is_object() || !item.contains("id") || !item["id"].is_string()) {
      throw Error(ErrorCode::kParse,
                  "games JSON entry " + std::to_string(i) + ": missing string field 'id'");
    }
    Game g{item["id"].get<std::string>(), number("cc"), number("cd"), number("dc"),
           number("dd")};
    validate(g);
    for (const auto& prev : games) {
      if (prev.id == g.id) throw Error(ErrorCode::kParse, "duplicate game id " + g.id);
    }
    games.push_back(std::move(g));
  }
  return games;
}

std::vector<Game> load_games(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_games_json(buf.str());
}

}  // namespace expower
