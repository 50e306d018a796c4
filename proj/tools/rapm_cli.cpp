#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "rapm/boxscore.hpp"
#include "rapm/design.hpp"
#include "rapm/diagnostics.hpp"
#include "rapm/errors.hpp"
#include "rapm/lambda.hpp"
#include "rapm/oracle.hpp"
#include "rapm/pooling.hpp"
#include "rapm/qc.hpp"
#include "rapm/report.hpp"
#include "rapm/ridge.hpp"
#include "rapm/stint.hpp"
#include "rapm/synth.hpp"
#include "rapm/validation.hpp"

namespace fs = std::filesystem;
using namespace rapm;

namespace {

// Every writer goes through here so "-" means stdout everywhere.
class OutStream {
 public:
  explicit OutStream(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) throw ConfigError("cannot write to " + path);
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct LambdaSource {
  double fixed = -1.0;
  std::vector<double> cs_games;  // logged, season
  double cs_scale = 5000.0;
  bool use_cv = false;
  CvConfig cv;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--lambda", fixed, "fixed ridge penalty");
    cmd->add_option("--cs-games", cs_games,
                    "coverage scaling: logged and season game counts")
        ->expected(2);
    cmd->add_option("--cs-scale", cs_scale, "coverage scale (default 5000)");
    cmd->add_flag("--cv", use_cv, "choose the penalty by cross-validation");
    cmd->add_option("--cv-folds", cv.folds, "fold count (default 5)");
    cmd->add_option("--cv-grid", cv.grid_points, "grid size (default 101)");
    cmd->add_option("--cv-lo", cv.grid_lo, "grid lower bound");
    cmd->add_option("--cv-hi", cv.grid_hi, "grid upper bound");
    cmd->add_option("--cv-train", cv.train_fraction,
                    "train fraction (default 0.8)");
    cmd->add_flag("--cv-weighted", cv.weighted,
                  "possession weights inside the cross-validation");
    cmd->add_option("--seed", cv.seed, "shuffle seed (default 0)");
  }

  double resolve(const RidgeSystem* sys) const {
    int sources = (fixed > 0.0 ? 1 : 0) + (cs_games.empty() ? 0 : 1) +
                  (use_cv ? 1 : 0);
    if (sources != 1)
      throw ConfigError(
          "choose exactly one penalty source: --lambda, --cs-games or --cv");
    if (fixed > 0.0) return fixed;
    if (!cs_games.empty())
      return coverage_scaled_lambda(cs_games[0], cs_games[1], cs_scale);
    if (!sys)
      throw ConfigError("cross-validation needs stint data");
    return cross_validated_lambda(*sys, cv).lambda_star;
  }
};

CiMode parse_ci(const std::string& s) {
  if (s == "diag") return CiMode::diag;
  if (s == "full") return CiMode::full;
  throw ConfigError("--ci must be diag or full");
}

SplitConvention parse_convention(const std::string& s) {
  if (s == "half_half") return SplitConvention::half_half;
  if (s == "close_full") return SplitConvention::close_full;
  if (s == "open_full") return SplitConvention::open_full;
  throw ConfigError("--convention must be half_half, close_full or open_full");
}

void emit_diagnostics(const std::string& dir, const RidgeSystem& sys,
                      const RapmTable& table) {
  fs::create_directories(dir);
  {
    std::vector<double> ys(sys.y.data(), sys.y.data() + sys.y.size());
    std::ofstream f(dir + "/scoring_hist.csv");
    if (!f) throw ConfigError("cannot write into " + dir);
    write_histogram_csv(f, fd_histogram(std::move(ys)));
  }
  {
    std::vector<double> ws(sys.w.data(), sys.w.data() + sys.w.size());
    std::ofstream f(dir + "/poss_hist.csv");
    write_histogram_csv(f, fd_histogram(std::move(ws)));
  }
  {
    std::vector<double> off, def;
    for (const auto& r : table.rows) {
      off.push_back(r.orapm);
      def.push_back(r.drapm);
    }
    std::ofstream f(dir + "/rapm_kde.csv");
    write_kde_pair_csv(f, silverman_kde(off), silverman_kde(def), "orapm",
                       "drapm");
  }
}

int dispatch(int argc, char** argv) {
  CLI::App app{"stint-level regularized adjusted plus-minus toolkit"};
  app.require_subcommand(1);

  // ---- rapm ----
  auto* c_rapm = app.add_subcommand("rapm", "estimate player ratings");
  struct {
    std::string stints, out = "-", format = "text", ci = "diag", emit;
    bool strict_mirror = false;
    int max_dim = 8192;
    LambdaSource lam;
  } r;
  c_rapm->add_option("--stints", r.stints, "stint CSV")->required();
  r.lam.add_options(c_rapm);
  c_rapm->add_option("--ci", r.ci, "interval mode: diag or full");
  c_rapm->add_option("--format", r.format, "text or json");
  c_rapm->add_option("--out", r.out, "output path, - for stdout");
  c_rapm->add_option("--emit-diagnostics", r.emit,
                     "directory for histogram/KDE data files");
  c_rapm->add_flag("--strict-mirror", r.strict_mirror,
                   "require exact mirror rows");
  c_rapm->add_option("--max-dim", r.max_dim, "covariance dimension ceiling");
  c_rapm->callback([&] {
    ParseOptions popt;
    popt.strict_mirror = r.strict_mirror;
    SeasonDataset ds = parse_stint_file(r.stints, popt);
    RidgeSystem sys = build_system(ds);
    const double lambda = r.lam.resolve(&sys);
    RidgeFit fit = fit_ridge(sys, lambda, r.max_dim);
    RapmTable table = extract_rapm(fit, ds.roster, parse_ci(r.ci));
    OutStream out(r.out);
    if (r.format == "json")
      out.get() << rapm_table_json(table);
    else
      write_rapm_table_text(out.get(), table);
    if (!r.emit.empty()) emit_diagnostics(r.emit, sys, table);
  });

  // ---- pool ----
  auto* c_pool = app.add_subcommand("pool", "multi-season pooled ratings");
  struct {
    std::vector<std::string> seasons;
    std::string out = "-", format = "text", ci = "diag";
    bool aggregate = false;
    int max_dim = 8192;
    LambdaSource lam;
  } p;
  c_pool->add_option("--season", p.seasons, "label=path, repeatable")
      ->required();
  p.lam.add_options(c_pool);
  c_pool->add_option("--ci", p.ci, "interval mode: diag or full");
  c_pool->add_option("--format", p.format, "text or json");
  c_pool->add_option("--out", p.out, "output path, - for stdout");
  c_pool->add_flag("--aggregate", p.aggregate,
                   "append possession-weighted career ratings");
  c_pool->add_option("--max-dim", p.max_dim, "covariance dimension ceiling");
  c_pool->callback([&] {
    std::vector<std::pair<std::string, SeasonDataset>> seasons;
    for (const auto& spec : p.seasons) {
      auto eq = spec.find('=');
      if (eq == std::string::npos || eq == 0)
        throw ConfigError("--season wants label=path, got '" + spec + "'");
      seasons.emplace_back(spec.substr(0, eq),
                           parse_stint_file(spec.substr(eq + 1)));
    }
    SeasonDataset pooled = pool_seasons(seasons);
    RidgeSystem sys = build_system(pooled);
    const double lambda = p.lam.resolve(&sys);
    RidgeFit fit = fit_ridge(sys, lambda, p.max_dim);
    RapmTable table = extract_rapm(fit, pooled.roster, parse_ci(p.ci));
    OutStream out(p.out);
    if (p.format == "json") {
      out.get() << rapm_table_json(table);
    } else {
      write_rapm_table_text(out.get(), table);
    }
    if (p.aggregate) {
      std::vector<SeasonValue> vals;
      for (const auto& row : table.rows) {
        auto [player, season] = split_player_season_key(row.player);
        vals.push_back(
            {player, season, row.rapm, row.off_poss + row.def_poss});
      }
      auto agg = aggregate_rapm(vals);
      auto& os = out.get();
      os << "\ncareer (possession weighted)\n";
      char buf[96];
      for (const auto& [player, value] : agg.values) {
        std::snprintf(buf, sizeof buf, "%-25s %7.2f\n", player.c_str(), value);
        os << buf;
      }
      for (const auto& s : agg.skipped)
        os << s << ": skipped, zero possessions\n";
    }
  });

  // ---- lambda ----
  auto* c_lambda = app.add_subcommand("lambda", "penalty selection report");
  struct {
    std::string stints, out = "-", format = "text";
    LambdaSource lam;
  } l;
  c_lambda->add_option("--stints", l.stints,
                       "stint CSV for the cross-validated side");
  l.lam.add_options(c_lambda);
  c_lambda->callback([&] {
    if (l.lam.cs_games.empty())
      throw ConfigError("lambda subcommand needs --cs-games");
    const double cs = coverage_scaled_lambda(
        l.lam.cs_games[0], l.lam.cs_games[1], l.lam.cs_scale);
    OutStream out(l.out);
    if (l.stints.empty()) {
      if (l.format == "json") {
        nlohmann::json j{{"lambda_cs", cs}};
        out.get() << j.dump(2) << "\n";
      } else {
        char buf[64];
        std::snprintf(buf, sizeof buf, "coverage-scaled lambda: %.6g\n", cs);
        out.get() << buf;
      }
      return;
    }
    SeasonDataset ds = parse_stint_file(l.stints);
    RidgeSystem sys = build_system(ds);
    CvResult cv = cross_validated_lambda(sys, l.lam.cv);
    LambdaReport rep = compare_lambdas(cs, cv.lambda_star);
    if (l.format == "json")
      out.get() << lambda_report_json(rep, &cv);
    else
      write_lambda_report_text(out.get(), rep, &cv);
  });
  c_lambda->add_option("--format", l.format, "text or json");
  c_lambda->add_option("--out", l.out, "output path, - for stdout");

  // ---- validate ----
  auto* c_val = app.add_subcommand("validate", "win-total estimator check");
  struct {
    std::vector<std::string> records;
    double games_season = 82.0;
    std::string out = "-";
  } v;
  c_val->add_option("--records", v.records,
                    "team record CSV (franchise, sampled_w, sampled_l, "
                    "optional truth_wins/pct_sampled)")
      ->required();
  c_val->add_option("--games-season", v.games_season,
                    "season length (default 82)");
  c_val->add_option("--out", v.out, "output path, - for stdout");
  c_val->callback([&] {
    OutStream out(v.out);
    bool first = true;
    for (const auto& path : v.records) {
      auto rows = read_team_records_csv(path);
      for (auto& row : rows) row.games_season = v.games_season;
      if (!first) out.get() << "\n";
      first = false;
      write_validation_report(out.get(), rows, fs::path(path).stem().string());
    }
  });

  // ---- audit ----
  auto* c_audit = app.add_subcommand("audit", "box-score steal audit");
  struct {
    std::string box, out = "-", format = "text";
    double ft_coeff = 0.44;
  } a;
  c_audit->add_option("--box", a.box, "box-score JSON")->required();
  c_audit->add_option("--ft-coeff", a.ft_coeff,
                      "free-throw possession coefficient (default 0.44)");
  c_audit->add_option("--format", a.format, "text or json");
  c_audit->add_option("--out", a.out, "output path, - for stdout");
  c_audit->callback([&] {
    auto games = read_box_json(a.box);
    OutStream out(a.out);
    if (a.format == "json") {
      out.get() << audit_report_json(games, a.ft_coeff);
      return;
    }
    for (const auto& g : games) {
      for (const auto* side : {&g.home, &g.away}) {
        const auto& us = *side;
        const auto& them = side == &g.home ? g.away : g.home;
        const bool total = !them.to_live.has_value();
        StealAudit sa =
            audit_steal_constraint(us.stl, total ? them.to : *them.to_live);
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "%s %s: steals %.0f vs %s %.0f -> %s",
                      g.id.c_str(), us.team.c_str(), sa.steals,
                      total ? "total TO" : "live TO", sa.live_to_bound,
                      sa.violated ? "violated" : "satisfied");
        out.get() << buf;
        if (sa.violated) {
          std::snprintf(buf, sizeof buf, " (excess %.0f)", sa.excess);
          out.get() << buf;
        }
        out.get() << "\n";
      }
    }
  });

  // ---- qc ----
  auto* c_qc = app.add_subcommand("qc", "game log quality control");
  struct {
    std::string log, box, box_game, convention = "half_half";
    std::string export_stints_path, out = "-", format = "text";
    double ft_coeff = 0.44, minutes_tol = 2.0, poss_tol = 10.0;
  } q;
  c_qc->add_option("--log", q.log, "game log JSON")->required();
  c_qc->add_option("--box", q.box, "box-score JSON for plausibility");
  c_qc->add_option("--box-game", q.box_game, "game id inside --box");
  c_qc->add_option("--convention", q.convention,
                   "half_half, close_full or open_full");
  c_qc->add_option("--export-stints", q.export_stints_path,
                   "write apportioned stint CSV here");
  c_qc->add_option("--ft-coeff", q.ft_coeff, "possession estimate coefficient");
  c_qc->add_option("--minutes-tol", q.minutes_tol,
                   "minutes discrepancy flag threshold");
  c_qc->add_option("--poss-tol", q.poss_tol,
                   "possession plausibility flag threshold");
  c_qc->add_option("--format", q.format, "text or json");
  c_qc->add_option("--out", q.out, "output path, - for stdout");
  c_qc->callback([&] {
    GameLog log = game_log_from_json(q.log);
    std::optional<GameBox> box;
    if (!q.box.empty()) {
      auto games = read_box_json(q.box);
      if (games.empty()) throw ConfigError("box-score file has no games");
      if (q.box_game.empty()) {
        if (games.size() > 1)
          throw ConfigError("several games in --box; pick one via --box-game");
        box = games[0];
      } else {
        for (const auto& g : games)
          if (g.id == q.box_game) box = g;
        if (!box) throw ConfigError("game " + q.box_game + " not in --box");
      }
    }
    QcReport rep = run_qc(log, box ? &*box : nullptr, q.ft_coeff,
                          q.minutes_tol, q.poss_tol);
    OutStream out(q.out);
    if (q.format == "json")
      out.get() << qc_report_json(log, rep);
    else
      write_qc_report_text(out.get(), log, rep);
    if (!q.export_stints_path.empty()) {
      GameLog settled =
          apportion_split_possessions(log, parse_convention(q.convention));
      std::ofstream f(q.export_stints_path);
      if (!f) throw ConfigError("cannot write " + q.export_stints_path);
      write_stint_file(f, export_stints({settled}));
    }
  });

  // ---- synth ----
  auto* c_synth = app.add_subcommand("synth", "generate a synthetic season");
  struct {
    SynthConfig cfg;
    bool no_discretize = false;
    std::string out_stints, out_truth, out_logs;
  } s;
  c_synth->add_option("--seed", s.cfg.seed, "generator seed");
  c_synth->add_option("--games", s.cfg.games, "game count");
  c_synth->add_option("--teams", s.cfg.teams, "team count");
  c_synth->add_option("--players", s.cfg.players_per_team, "players per team");
  c_synth->add_option("--stints-per-game", s.cfg.stints_per_game,
                      "lineup intervals per game");
  c_synth->add_option("--sigma", s.cfg.noise_sigma, "noise scale");
  c_synth->add_option("--spread", s.cfg.effect_spread, "true effect spread");
  c_synth->add_option("--baseline", s.cfg.baseline, "true intercept");
  c_synth->add_option("--mean-stint", s.cfg.mean_stint_poss,
                      "mean possessions per stint");
  c_synth->add_option("--modal-prob", s.cfg.modal_lineup_prob,
                      "probability of the modal lineup");
  c_synth->add_option("--split-rate", s.cfg.split_rate,
                      "split possession rate per boundary");
  c_synth->add_flag("--no-discretize", s.no_discretize,
                    "keep continuous stint points");
  c_synth->add_option("--out-stints", s.out_stints, "stint CSV path")
      ->required();
  c_synth->add_option("--out-truth", s.out_truth, "ground truth JSON path");
  c_synth->add_option("--out-logs", s.out_logs,
                      "directory for per-game log JSON");
  c_synth->callback([&] {
    s.cfg.discretize = !s.no_discretize;
    SynthSeason season = generate_season(s.cfg);
    {
      std::ofstream f(s.out_stints);
      if (!f) throw ConfigError("cannot write " + s.out_stints);
      write_stint_file(f, season.records);
    }
    if (!s.out_truth.empty()) {
      std::ofstream f(s.out_truth);
      if (!f) throw ConfigError("cannot write " + s.out_truth);
      write_truth_json(f, season);
    }
    if (!s.out_logs.empty()) {
      fs::create_directories(s.out_logs);
      char name[32];
      for (std::size_t g = 0; g < season.game_logs.size(); ++g) {
        std::snprintf(name, sizeof name, "game_%04zu.json", g);
        std::ofstream f(fs::path(s.out_logs) / name);
        const GameLog& log = season.game_logs[g];
        nlohmann::json j;
        j["home_team"] = log.home_team;
        j["away_team"] = log.away_team;
        j["official_final"] = {{"home", log.official_final->first},
                               {"away", log.official_final->second}};
        j["split_counts"] = {{"home", log.split_count_home},
                             {"away", log.split_count_away}};
        j["split_events"] = nlohmann::json::array();
        for (const auto& ev : log.split_events)
          j["split_events"].push_back(
              {{"team", ev.team == TeamSide::home ? "home" : "away"},
               {"boundary", ev.boundary}});
        j["stints"] = nlohmann::json::array();
        for (const auto& st : log.stints) {
          nlohmann::json js;
          js["home_players"] = st.home_players;
          js["away_players"] = st.away_players;
          js["home_poss"] = st.home_poss_raw;
          js["away_poss"] = st.away_poss_raw;
          js["home_pts"] = st.home_pts;
          js["away_pts"] = st.away_pts;
          j["stints"].push_back(std::move(js));
        }
        f << j.dump(2) << "\n";
      }
    }
    std::cout << "players " << season.truth.size() << ", stint rows "
              << season.records.size() << "\n";
  });

  // ---- diagnose ----
  auto* c_diag = app.add_subcommand("diagnose", "distribution data files");
  struct {
    std::string stints, out_dir;
    LambdaSource lam;
  } d;
  c_diag->add_option("--stints", d.stints, "stint CSV")->required();
  d.lam.add_options(c_diag);
  c_diag->add_option("--out-dir", d.out_dir, "target directory")->required();
  c_diag->callback([&] {
    SeasonDataset ds = parse_stint_file(d.stints);
    RidgeSystem sys = build_system(ds);
    const double lambda = d.lam.resolve(&sys);
    RidgeFit fit = fit_ridge(sys, lambda);
    RapmTable table = extract_rapm(fit, ds.roster, CiMode::diag);
    emit_diagnostics(d.out_dir, sys, table);
    std::cout << "wrote scoring_hist.csv, poss_hist.csv, rapm_kde.csv to "
              << d.out_dir << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IntegrityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
