#include "expower/behavior.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "expower/error.hpp"
#include "expower/power.hpp"

namespace expower {

namespace {

constexpr std::string_view kCoreGames[] = {"G1", "G2", "G3", "G4"};
constexpr std::string_view kOptionalGames[] = {"G5", "G6"};

Action choice(const ChoiceRecord& r, std::string_view game_id) {
  auto it = r.choices.find(std::string(game_id));
  if (it == r.choices.end()) {
    throw Error(ErrorCode::kMissingGame,
                "participant " + r.participant_id + " has no choice for " + std::string(game_id));
  }
  return it->second;
}

bool cooperated(const ChoiceRecord& r, std::string_view game_id) {
  return choice(r, game_id) == Action::kCooperate;
}

// Cooperation weakly increasing along the record's PD games sorted by rho.
bool rapoport_ordered(const ChoiceRecord& r, const std::vector<Game>& games) {
  std::vector<std::pair<double, bool>> pd;
  for (const auto& [id, action] : r.choices) {
    const Game& g = find_game(games, id);
    if (!classify_dominance(g).is_pd) continue;
    pd.emplace_back(rapoport_ratio(g), action == Action::kCooperate);
  }
  std::stable_sort(pd.begin(), pd.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < pd.size(); ++i) {
    if (pd[i - 1].second && !pd[i].second) return false;
  }
  return true;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

[[noreturn]] void parse_error(std::size_t line_no, const std::string& msg) {
  throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": " + msg);
}

ProportionSummary summarize_indicator(std::string label,
                                      const std::vector<std::pair<Frame, bool>>& rows) {
  ProportionSummary s;
  s.label = std::move(label);
  long hits[2] = {0, 0};
  long totals[2] = {0, 0};
  for (const auto& [frame, hit] : rows) {
    const int f = frame == Frame::kCFirst ? 0 : 1;
    ++totals[f];
    if (hit) ++hits[f];
  }
  s.n = totals[0] + totals[1];
  if (s.n == 0) return s;
  s.proportion = static_cast<double>(hits[0] + hits[1]) / static_cast<double>(s.n);
  s.std_error = proportion_stderr(s.proportion, s.n);
  if (totals[0] > 0 && totals[1] > 0) {
    const auto test = two_proportion_test(hits[0], totals[0], hits[1], totals[1]);
    s.frame_delta = test.delta;
    s.frame_delta_stderr = test.std_error;
    s.p_value = test.p_value;
  }
  return s;
}

std::string format_optional(const std::optional<double>& v, int precision) {
  if (!v) return {};
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << *v;
  return os.str();
}

}  // namespace

std::string_view to_string(Frame f) { return f == Frame::kCFirst ? "C_first" : "D_first"; }

std::string_view to_string(Category c) {
  switch (c) {
    case Category::kSigmaDominated: return "sigma_dominated";
    case Category::kSigmaDominant: return "sigma_dominant";
    case Category::kIDominantProfile: return "i_dominant_profile";
    case Category::kRapoportIdentifier: return "rapoport_identifier";
    case Category::kFullCooperator: return "full_cooperator";
    case Category::kRapoportOrdered: return "rapoport_ordered";
    case Category::kBoth: return "both";
  }
  return "unknown";
}

double proportion_stderr(double p, long n) {
  if (n <= 0) throw Error(ErrorCode::kEmptyData, "standard error needs n >= 1");
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

TwoProportionTest two_proportion_test(long successes1, long n1, long successes2, long n2) {
  if (n1 <= 0 || n2 <= 0) throw Error(ErrorCode::kEmptyData, "both samples must be non-empty");
  const double p1 = static_cast<double>(successes1) / static_cast<double>(n1);
  const double p2 = static_cast<double>(successes2) / static_cast<double>(n2);
  TwoProportionTest t;
  t.delta = p2 - p1;
  t.std_error = std::sqrt(p1 * (1.0 - p1) / n1 + p2 * (1.0 - p2) / n2);
  if (t.std_error > 0.0) {
    t.z = t.delta / t.std_error;
    t.p_value = 2.0 * normal_cdf(-std::abs(t.z));
  } else {
    // Both samples are constant: either identical or perfectly separated.
    t.z = 0.0;
    t.p_value = t.delta == 0.0 ? 1.0 : 0.0;
  }
  return t;
}

std::set<Category> classify_profile(const ChoiceRecord& record, const std::vector<Game>& games) {
  const bool c1 = cooperated(record, "G1");
  const bool c2 = cooperated(record, "G2");
  const bool c3 = cooperated(record, "G3");
  const bool c4 = cooperated(record, "G4");

  std::set<Category> out;
  const bool sigma_dominant = c3 && c4;
  out.insert(sigma_dominant ? Category::kSigmaDominant : Category::kSigmaDominated);
  if (sigma_dominant) {
    if (!c1 && !c2) out.insert(Category::kIDominantProfile);
    if (!c1 && c2) out.insert(Category::kRapoportIdentifier);
    if (c1 && c2) out.insert(Category::kFullCooperator);
  }
  const bool ordered = rapoport_ordered(record, games);
  if (ordered) out.insert(Category::kRapoportOrdered);
  if (ordered && sigma_dominant) out.insert(Category::kBoth);
  return out;
}

std::vector<CategorySummary> summarize(const std::vector<ChoiceRecord>& records,
                                       const std::vector<Game>& games) {
  if (records.empty()) throw Error(ErrorCode::kEmptyData, "dataset is empty");
  std::vector<std::set<Category>> classes;
  classes.reserve(records.size());
  for (const auto& r : records) classes.push_back(classify_profile(r, games));

  std::vector<CategorySummary> out;
  for (Category c : kAllCategories) {
    std::vector<std::pair<Frame, bool>> rows;
    rows.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
      rows.emplace_back(records[i].frame, classes[i].count(c) > 0);
    }
    out.push_back(summarize_indicator(std::string(to_string(c)), rows));
  }
  return out;
}

std::vector<ProportionSummary> game_cooperation_rates(const std::vector<ChoiceRecord>& records,
                                                      const std::vector<Game>& games) {
  if (records.empty()) throw Error(ErrorCode::kEmptyData, "dataset is empty");
  std::vector<ProportionSummary> out;
  for (const auto& game : games) {
    std::vector<std::pair<Frame, bool>> rows;
    for (const auto& r : records) {
      auto it = r.choices.find(game.id);
      if (it != r.choices.end()) rows.emplace_back(r.frame, it->second == Action::kCooperate);
    }
    if (!rows.empty()) out.push_back(summarize_indicator(game.id, rows));
  }
  return out;
}

std::vector<ChoiceRecord> parse_choices_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParse, "line 1: missing header");
  ++line_no;
  const auto header = split_fields(trim(line));
  static const std::vector<std::string> core_header = {"participant_id", "population", "frame",
                                                       "g1", "g2", "g3", "g4"};
  std::vector<std::string> extended_header = core_header;
  extended_header.insert(extended_header.end(), {"g5", "g6"});
  if (header != core_header && header != extended_header) {
    parse_error(line_no,
                "header must be participant_id,population,frame,g1,g2,g3,g4[,g5,g6]");
  }
  const bool extended = header.size() == extended_header.size();

  std::vector<ChoiceRecord> records;
  std::unordered_set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(trim(line));
    if (fields.size() != header.size()) {
      parse_error(line_no, "expected " + std::to_string(header.size()) + " fields, got " +
                               std::to_string(fields.size()));
    }
    ChoiceRecord r;
    r.participant_id = fields[0];
    r.population = fields[1];
    if (r.participant_id.empty()) parse_error(line_no, "empty participant_id");
    if (!seen.insert(r.participant_id).second) {
      parse_error(line_no, "duplicate participant_id '" + r.participant_id + "'");
    }
    const std::string frame = lower(fields[2]);
    if (frame == "c_first") {
      r.frame = Frame::kCFirst;
    } else if (frame == "d_first") {
      r.frame = Frame::kDFirst;
    } else {
      parse_error(line_no, "frame must be C_first or D_first, got '" + fields[2] + "'");
    }
    const std::size_t n_games = extended ? 6 : 4;
    for (std::size_t g = 0; g < n_games; ++g) {
      const std::string& cell = fields[3 + g];
      const std::string id = "G" + std::to_string(g + 1);
      if (cell.empty() && g >= 4) continue;  // optional game not played
      const std::string v = lower(cell);
      if (v == "c") {
        r.choices[id] = Action::kCooperate;
      } else if (v == "d") {
        r.choices[id] = Action::kDefect;
      } else {
        parse_error(line_no, "choice for " + id + " must be C or D, got '" + cell + "'");
      }
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<ChoiceRecord> read_choices_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  try {
    return parse_choices_csv(in);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_choices_csv(std::ostream& out, const std::vector<ChoiceRecord>& records) {
  bool extended = false;
  for (const auto& r : records) {
    for (auto id : kOptionalGames) extended |= r.choices.count(std::string(id)) > 0;
  }
  out << "participant_id,population,frame,g1,g2,g3,g4" << (extended ? ",g5,g6" : "") << '\n';
  for (const auto& r : records) {
    out << r.participant_id << ',' << r.population << ',' << to_string(r.frame);
    for (auto id : kCoreGames) out << ',' << to_char(choice(r, id));
    if (extended) {
      for (auto id : kOptionalGames) {
        out << ',';
        auto it = r.choices.find(std::string(id));
        if (it != r.choices.end()) out << to_char(it->second);
      }
    }
    out << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<ProportionSummary>& rows) {
  out << "category,proportion,stderr,n,frame_delta,frame_delta_stderr,p_value\n";
  for (const auto& s : rows) {
    out << s.label << ',' << format_optional(s.proportion, 6) << ','
        << format_optional(s.std_error, 6) << ',' << s.n << ','
        << format_optional(s.frame_delta, 6) << ',' << format_optional(s.frame_delta_stderr, 6)
        << ',' << format_optional(s.p_value, 6) << '\n';
  }
}

void write_summary_table(std::ostream& out, const std::vector<ProportionSummary>& rows) {
  out << std::left << std::setw(22) << "category" << std::right << std::setw(10) << "avg"
      << std::setw(10) << "(se)" << std::setw(8) << "n" << std::setw(10) << "d_frame"
      << std::setw(10) << "(se)" << std::setw(10) << "p" << '\n';
  for (const auto& s : rows) {
    auto cell = [](const std::optional<double>& v) {
      return v ? format_optional(v, 4) : std::string("-");
    };
    out << std::left << std::setw(22) << s.label << std::right << std::setw(10)
        << cell(s.proportion) << std::setw(10) << cell(s.std_error) << std::setw(8) << s.n
        << std::setw(10) << cell(s.frame_delta) << std::setw(10) << cell(s.frame_delta_stderr)
        << std::setw(10) << cell(s.p_value) << '\n';
  }
}

}  // namespace expower
