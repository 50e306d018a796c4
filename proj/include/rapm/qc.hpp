#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rapm/boxscore.hpp"
#include "rapm/stint.hpp"

namespace rapm {

enum class TeamSide { home, away };

// One lineup interval as logged from film, before export to stint rows.
// Possession tallies are raw: a possession straddling a substitution is
// counted once in the stint it closes and once in the stint it opens.
struct GameStint {
  std::array<std::string, 5> home_players, away_players;
  double home_poss_raw = 0.0, away_poss_raw = 0.0;
  double home_pts = 0.0, away_pts = 0.0;
  std::optional<double> duration_min;
};

struct SplitEvent {
  TeamSide team = TeamSide::home;
  int boundary = 0;  // between stint `boundary` and `boundary + 1`
};

struct Substitution {
  int boundary = 0;
  TeamSide team = TeamSide::home;
  std::string out_player, in_player;
};

struct GameLog {
  std::string home_team, away_team;
  std::vector<GameStint> stints;
  int split_count_home = 0, split_count_away = 0;
  std::vector<SplitEvent> split_events;  // must match the counts
  std::vector<Substitution> substitutions;
  bool has_substitutions = false;  // events were logged (possibly none)
  std::optional<std::pair<double, double>> official_final;  // home, away
  std::map<std::string, double> official_minutes;
  bool ended_live = false;  // game clock expired mid-possession
  // Human re-review outcomes carried on the log; automation never sets them.
  bool footage_insufficient = false;
  bool score_irreconcilable = false;
  bool lineup_irresolvable = false;
};

// Team possession totals W_k = sum of raw tallies - split count.
std::pair<double, double> corrected_possession_totals(const GameLog& log);

enum class SplitConvention { half_half, close_full, open_full };

// Rewrites raw tallies so per-stint weights sum to W_k exactly:
// half_half leaves each straddling possession half in each stint,
// close_full keeps it whole in the stint it closes, open_full in the stint
// it opens. Split counts and events are consumed. Requires every declared
// split to carry a boundary tag.
GameLog apportion_split_possessions(const GameLog& log, SplitConvention conv);

enum class BalanceVerdict { pass, review };

// Alternation bounds |W_home - W_away| by 1, or 2 when the game ended with
// a possession still live.
BalanceVerdict check_possession_balance(double w_home, double w_away,
                                        bool ended_live);

enum class QcVerdict { pass, review, exclude };

struct MinutesFlag {
  std::string player;
  double implied = 0.0, official = 0.0;
};

struct QcReport {
  bool score_ok = false;
  bool lineup_ok = false;
  bool lineup_replayed = false;    // substitution events were available
  std::vector<int> lineup_gaps;    // full-five swaps between adjacent stints
  bool minutes_evaluated = false;  // needs durations and official minutes
  std::vector<MinutesFlag> minutes_flags;
  bool possession_evaluated = false;  // needs a box score
  std::vector<std::string> possession_flags;
  double w_home = 0.0, w_away = 0.0;
  BalanceVerdict balance = BalanceVerdict::pass;
  QcVerdict verdict = QcVerdict::pass;
};

// Flags problems; never repairs data and never excludes on plausibility
// grounds alone. Exclusion needs an explicit human re-review outcome on the
// log (or unusable footage). The official final score is mandatory.
QcReport run_qc(const GameLog& log, const GameBox* box = nullptr,
                double ft_coeff = 0.44,
                double minutes_tolerance = 2.0,
                double possession_tolerance = 10.0);

// Mirrored stint-row export. Requires splits already apportioned. The
// leading (even) row alternates sides per stint so both offenses are
// represented among even rows.
std::vector<StintRecord> export_stints(const std::vector<GameLog>& logs);

GameLog game_log_from_json(std::istream& in);
GameLog game_log_from_json(const std::string& path);
std::string qc_report_json(const GameLog& log, const QcReport& rep);
void write_qc_report_text(std::ostream& out, const GameLog& log,
                          const QcReport& rep);

}  // namespace rapm
