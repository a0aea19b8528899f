// Command-line frontend: validate models, evaluate fixpoint formulas, check
// named properties and run the brute-force oracles.

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "wsmc/algebras.hh"
#include "wsmc/compilers.hh"
#include "wsmc/error.hh"
#include "wsmc/eval.hh"
#include "wsmc/model_text.hh"
#include "wsmc/oracle/explicit.hh"
#include "wsmc/region_text.hh"

using namespace wsmc;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kFailure = 2;

struct EvalOptions {
  std::optional<std::size_t> max_iter;
  bool stats = false;
  bool json = false;
  std::string out;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Player parse_player(const std::string& text) {
  if (text == "A") return Player::kA;
  if (text == "B") return Player::kB;
  throw Error("player must be A or B, got '" + text + "'");
}

json stats_json(const EvalStats& stats, bool timing) {
  json binders = json::array();
  for (const auto& b : stats.binders)
    binders.push_back({{"binder", b.binder},
                       {"fixpoint", b.greatest ? "greatest" : "least"},
                       {"runs", b.runs},
                       {"iterations", b.iterations},
                       {"longest_run", b.longest_run}});
  json j{{"binders", binders}, {"largest_value", stats.largest_value}, {"cache_hits", stats.cache_hits}};
  if (timing) j["seconds"] = stats.seconds;
  return j;
}

/// Wall-clock time is left out unless asked for, so capped runs stay reproducible.
std::string stats_text(const EvalStats& stats, bool timing) {
  std::ostringstream s;
  for (const auto& b : stats.binders)
    s << "binder " << b.binder << ": " << (b.greatest ? "greatest" : "least") << ", runs " << b.runs
      << ", iterations " << b.iterations << ", longest run " << b.longest_run << "\n";
  s << "largest value: " << stats.largest_value << " states\n";
  s << "cache hits: " << stats.cache_hits << "\n";
  if (timing) s << "time: " << std::fixed << std::setprecision(3) << stats.seconds << " s\n";
  return s.str();
}

json sizes_json(const Region& r) {
  json sizes = json::object();
  for (Location l : r.locations()) sizes[r.signature()->location_name(l)] = r.encoding(l)->num_states();
  return sizes;
}

std::string sizes_text(const Region& r) {
  std::string s = "states:";
  if (r.is_empty()) s += " none";
  for (Location l : r.locations())
    s += " " + r.signature()->location_name(l) + "=" + std::to_string(r.encoding(l)->num_states());
  return s + "\n";
}

void emit(const std::string& text, const EvalOptions& opts) {
  if (opts.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opts.out);
  if (!out) throw Error("cannot write " + opts.out);
  out << text;
}

/// Evaluates `t`, prints the region or membership verdict, returns the exit code.
int run_query(const ConfigAlgebra& algebra, const Term& t, const EvalOptions& opts,
              const std::optional<std::string>& member) {
  EvalLimits<Region> limits;
  if (opts.max_iter) {
    limits.allow_unguarded = true;
    limits.max_iterations = *opts.max_iter;
  }
  Region value = algebra.empty();
  EvalStats stats;
  try {
    std::tie(value, stats) = evaluate(algebra, t, {}, limits);
  } catch (const IterationLimit& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (opts.json)
      std::cerr << json{{"verdict", "error"}, {"stats", stats_json(e.stats(), opts.stats)}}.dump(2) << "\n";
    else
      std::cerr << stats_text(e.stats(), opts.stats);
    return kFailure;
  }

  std::optional<bool> verdict;
  if (member) verdict = value.contains(parse_config(*member, algebra.model().sig()));

  if (opts.json) {
    json j;
    j["verdict"] = verdict ? json(*verdict ? "yes" : "no") : json("region");
    j["region"] = format_region(value);
    j["sizes"] = sizes_json(value);
    if (opts.stats) j["stats"] = stats_json(stats, true);
    emit(j.dump(2) + "\n", opts);
  } else {
    std::string text;
    if (verdict)
      text = *verdict ? "yes\n" : "no\n";
    else
      text = format_region(value) + "\n" + sizes_text(value);
    if (opts.stats) text += stats_text(stats, true);
    emit(text, opts);
  }
  return verdict && !*verdict ? kNo : kOk;
}

int cmd_validate(const std::string& path) {
  auto model = load_model(path);
  auto report = validate(model);
  if (report.empty()) {
    std::cout << "ok\n";
    return kOk;
  }
  for (const auto& line : report) std::cout << line << "\n";
  return kNo;
}

std::string formula_text(const std::string& inline_text, const std::string& file) {
  if (!inline_text.empty() && !file.empty()) throw Error("give either -f or -F, not both");
  if (!file.empty()) return read_file(file);
  if (inline_text.empty()) throw Error("a formula is required (-f or -F)");
  return inline_text;
}

std::string locations_text(const oracle::LocationSet& set, const Signature& sig) {
  std::string s = "{";
  for (Location l : set) s += (s.size() > 1 ? ", " : "") + sig.location_name(l);
  return s + "}";
}

const char* game_result_name(oracle::GameResult r) {
  switch (r) {
    case oracle::GameResult::kWinA: return "win_A";
    case oracle::GameResult::kWinB: return "win_B";
    case oracle::GameResult::kUnknown: return "unknown";
  }
  return "unknown";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic verification of lossy channel systems and games"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "wsmc 0.1.0");

  std::string model_path, formula, formula_file, property, target, cond, player, ctl_formula, member, from;
  std::optional<std::size_t> max_iter;
  std::size_t depth = 6;
  bool stats = false, as_json = false, asymmetric = false;
  std::string out;

  auto* validate_cmd = app.add_subcommand("validate", "Check the structural assumptions of a model");
  validate_cmd->add_option("model", model_path, "Model file")->required();

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a fixpoint formula over a model");
  eval_cmd->add_option("model", model_path, "Model file")->required();
  eval_cmd->add_option("-f,--formula", formula, "Formula text");
  eval_cmd->add_option("-F,--formula-file", formula_file, "File holding the formula");
  eval_cmd->add_option("--max-iter", max_iter, "Iteration cap; also admits unguarded formulas");
  eval_cmd->add_flag("--stats", stats, "Print evaluation statistics");
  eval_cmd->add_option("--out", out, "Write the result to a file");
  eval_cmd->add_flag("--json", as_json, "Machine-readable output");

  auto* check_cmd = app.add_subcommand("check", "Check a named property");
  check_cmd->add_option("model", model_path, "Model file")->required();
  check_cmd->add_option("property", property, "Property name")
      ->required()
      ->check(CLI::IsMember(property_names()));
  check_cmd->add_option("--target", target, "Target region");
  check_cmd->add_option("--cond", cond, "Side-condition region");
  check_cmd->add_option("--player", player, "Player A or B");
  check_cmd->add_option("--formula", ctl_formula, "CTL formula for the ctl property");
  check_cmd->add_option("--member", member, "Configuration \"loc : w1, w2\" to test");
  check_cmd->add_option("--max-iter", max_iter, "Iteration cap");
  check_cmd->add_flag("--stats", stats, "Print evaluation statistics");
  check_cmd->add_option("--out", out, "Write the result to a file");
  check_cmd->add_flag("--json", as_json, "Machine-readable output");

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference procedures");
  oracle_cmd->require_subcommand(1);
  auto* reach_cmd = oracle_cmd->add_subcommand("reach", "Bounded search over lossy steps");
  reach_cmd->add_option("model", model_path, "Model file")->required();
  reach_cmd->add_option("--from", from, "Start configuration \"loc : w1, w2\"")->required();
  reach_cmd->add_option("--target", target, "Target region")->required();
  reach_cmd->add_option("--depth", depth, "Step bound");
  auto* game_cmd = oracle_cmd->add_subcommand("game", "Bounded minimax for a reachability goal");
  game_cmd->add_option("model", model_path, "Model file")->required();
  game_cmd->add_option("--from", from, "Start configuration \"loc : w1, w2\"")->required();
  game_cmd->add_option("--target", target, "Target region")->required();
  game_cmd->add_option("--player", player, "Reaching player A or B")->required();
  game_cmd->add_flag("--asymmetric", asymmetric, "Only B loses messages");
  game_cmd->add_option("--depth", depth, "Move bound");
  auto* finite_cmd = oracle_cmd->add_subcommand("finite", "Explicit evaluation on a model without channels");
  finite_cmd->add_option("model", model_path, "Model file")->required();
  finite_cmd->add_option("-f,--formula", formula, "Formula text");
  finite_cmd->add_option("-F,--formula-file", formula_file, "File holding the formula");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kFailure;
  }

  const EvalOptions opts{max_iter, stats, as_json, out};
  try {
    if (*validate_cmd) return cmd_validate(model_path);

    auto model = load_model(model_path);
    if (*eval_cmd) {
      ConfigAlgebra algebra(model);
      auto t = parse_term(formula_text(formula, formula_file), algebra);
      return run_query(algebra, t, opts, std::nullopt);
    }
    if (*check_cmd) {
      PropertyArgs args;
      if (!target.empty()) args.target = target;
      if (!cond.empty()) args.cond = cond;
      if (!player.empty()) args.player = parse_player(player);
      if (!ctl_formula.empty()) args.formula = ctl_formula;
      auto query = compile_property(property, model, args);
      ConfigAlgebra algebra(model, query.constants);
      return run_query(algebra, query.term, opts,
                       member.empty() ? std::nullopt : std::optional<std::string>(member));
    }
    if (*reach_cmd) {
      auto start = parse_config(from, model.sig());
      auto goal = parse_region(target, model.signature(), model.named_regions());
      bool found = oracle::bounded_reach(model, start, goal, depth) == oracle::Reach::kReachable;
      std::cout << (found ? "reachable" : "unknown") << "\n";
      return found ? kOk : kNo;
    }
    if (*game_cmd) {
      auto start = parse_config(from, model.sig());
      oracle::ReachGoal goal{parse_player(player) == Player::kA ? 'A' : 'B',
                             parse_region(target, model.signature(), model.named_regions()), asymmetric};
      auto result = oracle::bounded_game(model, start, goal, depth);
      std::cout << game_result_name(result) << "\n";
      const bool wins = result == (goal.player == 'A' ? oracle::GameResult::kWinA : oracle::GameResult::kWinB);
      return wins ? kOk : kNo;
    }
    if (*finite_cmd) {
      ConfigAlgebra algebra(model);
      auto t = parse_term(formula_text(formula, formula_file), algebra);
      std::cout << locations_text(oracle::finite_mc(model, t), model.sig()) << "\n";
      return kOk;
    }
  } catch (const NonEffectiveQuery& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
