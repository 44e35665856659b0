#pragma once

// Participant choice data: CSV I/O, profile categories, and summary tables.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "expower/game.hpp"

namespace expower {

enum class Frame { kCFirst, kDFirst };

std::string_view to_string(Frame f);

struct ChoiceRecord {
  std::string participant_id;
  std::string population;
  Frame frame = Frame::kCFirst;
  std::map<std::string, Action> choices;  // keyed by game id ("G1".."G6")
};

enum class Category {
  kSigmaDominated,
  kSigmaDominant,
  kIDominantProfile,
  kRapoportIdentifier,
  kFullCooperator,
  kRapoportOrdered,
  kBoth,
};

inline constexpr Category kAllCategories[] = {
    Category::kSigmaDominated,   Category::kIDominantProfile, Category::kRapoportIdentifier,
    Category::kFullCooperator,   Category::kSigmaDominant,    Category::kRapoportOrdered,
    Category::kBoth,
};

std::string_view to_string(Category c);

// Proportion of a dataset with some property, split by frame.
// Frame fields are empty when the dataset has only one frame.
struct ProportionSummary {
  std::string label;
  double proportion = 0.0;
  double std_error = 0.0;
  long n = 0;
  std::optional<double> frame_delta;  // D_first minus C_first
  std::optional<double> frame_delta_stderr;
  std::optional<double> p_value;      // two-sided, unpooled z
};

using CategorySummary = ProportionSummary;

// sqrt(p (1 - p) / n).
double proportion_stderr(double p, long n);

struct TwoProportionTest {
  double delta = 0.0;  // p2 - p1
  double std_error = 0.0;
  double z = 0.0;
  double p_value = 1.0;
};

// Two-sided normal test of p1 = p2 using the unpooled standard error,
// no continuity correction.
TwoProportionTest two_proportion_test(long successes1, long n1, long successes2, long n2);

// Records must contain G1-G4; G5/G6 extend the Rapoport ordering when present.
// Throws kMissingGame.
std::set<Category> classify_profile(const ChoiceRecord& record,
                                    const std::vector<Game>& games);

std::vector<CategorySummary> summarize(const std::vector<ChoiceRecord>& records,
                                       const std::vector<Game>& games);

// Per game id, over the records that include that game.
std::vector<ProportionSummary> game_cooperation_rates(const std::vector<ChoiceRecord>& records,
                                                      const std::vector<Game>& games);

// participant_id,population,frame,g1,g2,g3,g4[,g5,g6]
std::vector<ChoiceRecord> parse_choices_csv(std::istream& in);
std::vector<ChoiceRecord> read_choices_csv(const std::filesystem::path& path);
void write_choices_csv(std::ostream& out, const std::vector<ChoiceRecord>& records);

void write_summary_csv(std::ostream& out, const std::vector<ProportionSummary>& rows);
void write_summary_table(std::ostream& out, const std::vector<ProportionSummary>& rows);

}  // namespace expower
