// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Exit status is nonzero when any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "generators.hh"
#include "wsmc/algebras.hh"
#include "wsmc/compilers.hh"
#include "wsmc/eval.hh"
#include "wsmc/model_text.hh"
#include "wsmc/oracle/explicit.hh"
#include "wsmc/regex.hh"

using namespace wsmc;
using namespace wsmc::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Counts checks and failures; keeps the first failure for the report.
struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  Outcome outcome(const std::string& summary) const {
    if (failures == 0) return {true, summary + ", " + std::to_string(checks) + " checks"};
    return {false, std::to_string(failures) + "/" + std::to_string(checks) + " checks failed; first: " + first};
  }
};

const Term kV = Term::op("V");

std::vector<Term> compiled_game_terms(const Term& v) {
  std::vector<Term> out;
  for (Player p : {Player::kA, Player::kB}) {
    out.push_back(compile_reach_game(p, v));
    out.push_back(compile_invariant_game(p, v));
    out.push_back(compile_buchi_game(p, v));
    out.push_back(compile_persistence_game(p, v));
    out.push_back(compile_prob_reach_sure(p, v));
    out.push_back(compile_prob_invariant_sure(p, v));
    out.push_back(compile_prob_reach_positive(p, v));
    out.push_back(compile_prob_invariant_positive(p, v));
  }
  out.push_back(compile_asym_reach(Player::kB, v));
  out.push_back(compile_asym_invariant(Player::kA, v));
  return out;
}

/// Limits whose fixpoint hook re-evaluates each binder body with the result
/// substituted for the bound variable.
template <typename Algebra>
EvalLimits<typename Algebra::Value> substitution_hook(const Algebra& algebra, Tally& tally) {
  EvalLimits<typename Algebra::Value> limits;
  limits.on_fixpoint = [&algebra, &tally](const Term& binder, const auto& env, const auto& value) {
    auto extended = env;
    extended.insert_or_assign(binder.name(), value);
    EvalLimits<typename Algebra::Value> plain;
    plain.allow_unguarded = true;
    auto again = Evaluator<Algebra>(algebra, plain).evaluate(binder.child(), extended);
    tally.check(algebra.equal(again, value), "binder " + binder.name() + " of " + to_string(binder));
  };
  return limits;
}

std::vector<fs::path> bundled_models() {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(fs::path(WSMC_SOURCE_DIR) / "models"))
    if (entry.path().extension() == ".wsmc") out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

/// Every applicable named property of a bundled model, once per named region.
std::vector<std::pair<std::string, Query>> bundled_queries(const GlcsModel& m) {
  std::vector<std::pair<std::string, Query>> out;
  for (const auto& [region, value] : m.named_regions()) {
    auto add = [&](const std::string& property, PropertyArgs args) {
      args.target = region;
      out.emplace_back(property + " " + region, compile_property(property, m, args));
    };
    add("prestar", {});
    add("release", {.cond = region});
    add("ctl", {.formula = "EF " + region + " & AG !" + region + " | E[!" + region + " U " + region + "] | AX EX " + region});
    if (!m.sig().game_mode()) continue;
    for (Player p : {Player::kA, Player::kB})
      for (const char* g : {"game-reach", "game-inv", "game-buchi", "game-persist", "prob-reach-1", "prob-inv-1",
                            "prob-reach-pos", "prob-inv-pos"})
        add(g, {.player = p});
    add("asym-reach-B", {});
    add("asym-inv-A", {});
  }
  return out;
}

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Runs the CLI through the shell from the source directory; `args` uses shell quoting.
Run run_cli(const std::string& args) {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("wsmc_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  const auto out = dir / "out", err = dir / "err";
  std::string cmd = "cd '" + std::string(WSMC_SOURCE_DIR) + "' && '" + std::string(WSMC_CLI) + "' " + args + " > '" +
                    out.string() + "' 2> '" + err.string() + "'";
  int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

// ---------------------------------------------------------------------------

Outcome closures_match_brute_force() {
  std::mt19937 rng(101);
  auto sigma = ab();
  Tally t;
  for (int i = 0; i < 200; ++i) {
    Nfa a = random_nfa(rng, sigma, 6);
    Nfa in[] = {a};
    auto label = "automaton " + std::to_string(i);
    auto ca = canonicalize(a);
    t.check(truncate(up_closure(ca), sigma, 6) == oracle::brute_words(oracle::WordOp::kUpClosure, in, 6), label + " up");
    t.check(truncate(down_closure(ca), sigma, 6) == oracle::brute_words(oracle::WordOp::kDownClosure, in, 6),
            label + " down");
    t.check(truncate(up_kernel(ca), sigma, 6) == oracle::brute_words(oracle::WordOp::kUpKernel, in, 6),
            label + " up kernel");
    t.check(truncate(down_kernel(ca), sigma, 6) == oracle::brute_words(oracle::WordOp::kDownKernel, in, 6),
            label + " down kernel");
    t.check(complement(up_kernel(ca)) == down_closure(complement(ca)), label + " up-kernel duality");
    t.check(complement(down_kernel(ca)) == up_closure(complement(ca)), label + " down-kernel duality");
  }
  return t.outcome("200 automata");
}

Outcome lossy_pre_absorbs_closures() {
  std::mt19937 rng(102);
  std::uniform_int_distribution<std::size_t> channels(0, 2), locations(1, 4), rules(1, 6);
  Tally t;
  for (int i = 0; i < 100; ++i) {
    auto m = random_model(rng, {.channels = channels(rng), .locations = locations(rng), .rules = rules(rng)});
    for (int j = 0; j < 3; ++j) {
      auto r = random_region(rng, m.signature());
      auto label = "model " + std::to_string(i);
      t.check(pre(m, r, StepMode::kLossy) == pre(m, up_closure(r), StepMode::kLossy), label + " pre");
      t.check(wpre(m, r, StepMode::kLossy) == wpre(m, down_kernel(r), StepMode::kLossy), label + " wpre");
    }
  }
  return t.outcome("100 models");
}

Outcome zero_channel_oracle() {
  std::mt19937 rng(103);
  TermShape shape{.depth = 4,
                  .guarded = false,
                  .ops = {{"pre", 1}, {"wpre", 1}, {"prep", 1}, {"wprep", 1}, {"post", 1}, {"confA", 0}, {"confB", 0},
                          {"V", 0}}};
  EvalLimits<Region> uncapped;
  uncapped.allow_unguarded = true;
  Tally t;
  for (int i = 0; i < 100; ++i) {
    auto m = random_model(rng, {.channels = 0, .locations = 2 + static_cast<std::size_t>(i % 4), .rules = 6,
                                .game = i % 2 == 0});
    auto v = random_region(rng, m.signature());
    ConfigAlgebra c(m, {{"V", v}});
    std::vector<Term> terms{TermGenerator(rng, shape).generate(), TermGenerator(rng, shape).generate(),
                            compile_pre_star(kV), compile_forall_release(Term::op("confA"), kV),
                            compile_ctl("EX V | AX V & !E[V U !V] | AG EF V", [&](auto n) { return c.arity(n); })};
    if (m.sig().game_mode())
      for (const auto& g : compiled_game_terms(kV)) terms.push_back(g);
    for (const auto& term : terms) {
      auto symbolic = evaluate(c, term, {}, uncapped).first;
      t.check(oracle::locations_of(symbolic) == oracle::finite_mc(m, term, {{"V", v}}), to_string(term));
    }

    // Classical solvers, independent of the compiled terms.
    auto locations = [&](const Term& term) { return oracle::locations_of(evaluate(c, term).first); };
    oracle::LocationSet all, target = oracle::locations_of(v), avoid;
    for (Location l = 0; l < m.sig().num_locations(); ++l) {
      all.insert(l);
      if (!target.count(l)) avoid.insert(l);
    }
    auto minus = [&](const oracle::LocationSet& s) {
      oracle::LocationSet out;
      for (Location l : all)
        if (!s.count(l)) out.insert(l);
      return out;
    };
    const auto model = "model " + std::to_string(i) + " ";
    if (!m.sig().game_mode()) {
      t.check(locations(compile_pre_star(kV)) == oracle::attractor(m, 'A', target), model + "pre-star");
      continue;
    }
    for (Player p : {Player::kA, Player::kB}) {
      const char me = player_name(p), other = player_name(opponent(p));
      const auto who = model + me + " ";
      t.check(locations(compile_reach_game(p, kV)) == oracle::attractor(m, me, target), who + "reach");
      t.check(locations(compile_invariant_game(p, kV)) == minus(oracle::attractor(m, other, avoid)), who + "invariant");
      t.check(locations(compile_buchi_game(p, kV)) == oracle::buchi(m, me, target), who + "buchi");
      t.check(locations(compile_persistence_game(p, kV)) == minus(oracle::buchi(m, other, avoid)), who + "persistence");
      t.check(locations(compile_prob_reach_sure(p, kV)) == oracle::attractor(m, me, target), who + "sure reach");
      t.check(locations(compile_prob_invariant_sure(p, kV)) == minus(oracle::attractor(m, other, avoid)),
              who + "sure invariant");
    }
    t.check(locations(compile_asym_reach(Player::kB, kV)) == oracle::attractor(m, 'B', target), model + "asym reach");
  }
  return t.outcome("100 models");
}

Outcome guarded_and_terminating() {
  Tally t;
  std::vector<Term> compiled{compile_pre_star(kV), compile_forall_release(Term::op("W"), kV)};
  for (const auto& g : compiled_game_terms(kV)) compiled.push_back(g);
  for (const char* f : {"EX V", "AX V", "EF V", "AG V", "E[V U W]", "A[V R W]", "!EF !(V & AG W)"})
    compiled.push_back(compile_ctl(f, [](std::string_view n) { return n == "V" || n == "W" ? 0 : std::optional<std::size_t>(); }));
  for (const auto& term : compiled) t.check(is_guarded(term), "unguarded " + to_string(term));

  std::string slowest;
  double slowest_seconds = 0;
  std::size_t iterations = 0;
  for (const auto& path : bundled_models()) {
    auto model = load_model(path);
    auto start = std::chrono::steady_clock::now();
    for (const auto& [label, query] : bundled_queries(model)) {
      t.check(is_guarded(query.term), path.filename().string() + " " + label + " unguarded");
      ConfigAlgebra c(model, query.constants);
      auto stats = evaluate(c, query.term).second;
      for (const auto& b : stats.binders) {
        t.check(b.iterations > 0, label + " has no recorded iterations");
        iterations += b.iterations;
      }
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    t.check(seconds < 60, path.filename().string() + " took " + std::to_string(seconds) + " s");
    if (seconds >= slowest_seconds) {
      slowest_seconds = seconds;
      slowest = path.filename().string();
    }
  }
  std::ostringstream s;
  s << compiled.size() << " compiled terms guarded, " << bundled_models().size() << " models, " << iterations
    << " iterations, slowest " << slowest << " " << std::fixed << std::setprecision(2) << slowest_seconds << " s";
  return t.outcome(s.str());
}

Outcome substitution_fixpoints() {
  Tally t;
  auto sigma = ab();
  WordAlgebra w(sigma, {{"R1", canonicalize(compile_regex("(a|b)*", sigma))},
                        {"R2", canonicalize(compile_regex("a b*", sigma))}});
  auto closing = parse_term("mu X. nu Y. kup(shuffle(R1, star(X) & down(lres(Y, reverse(X)) & lres(X, R2))))", w);
  evaluate(w, closing, {}, substitution_hook(w, t));
  std::size_t closing_checks = t.checks;
  t.check(closing_checks >= 2, "closing example reached fewer than two fixpoints");

  std::mt19937 rng(105);
  TermShape shape{.depth = 4,
                  .guarded = true,
                  .ops = {{"concat", 2}, {"shuffle", 2}, {"lres", 2}, {"rres", 2}, {"reverse", 1}, {"R2", 0}}};
  for (int i = 0; i < 60; ++i) evaluate(w, TermGenerator(rng, shape).generate(), {}, substitution_hook(w, t));

  for (int i = 0; i < 20; ++i) {
    auto m = random_model(rng, {.channels = 1, .locations = 4, .rules = 5, .game = true, .deadlock_free = true});
    ConfigAlgebra c(m, {{"V", random_region(rng, m.signature())}});
    for (const auto& term : compiled_game_terms(kV)) evaluate(c, term, {}, substitution_hook(c, t));
    evaluate(c, compile_pre_star(kV), {}, substitution_hook(c, t));
  }
  for (const auto& path : bundled_models()) {
    auto model = load_model(path);
    for (const auto& [label, query] : bundled_queries(model)) {
      ConfigAlgebra c(model, query.constants);
      evaluate(c, query.term, {}, substitution_hook(c, t));
    }
  }
  return t.outcome("closing example plus word, random-model and bundled-model fixpoints");
}

Outcome prestar_sound() {
  std::mt19937 rng(106);
  Tally t;
  std::size_t proved = 0;
  for (int i = 0; i < 40; ++i) {
    auto m = random_model(rng, {.channels = 1 + static_cast<std::size_t>(i % 2), .locations = 3, .rules = 5});
    auto v = random_region(rng, m.signature());
    ConfigAlgebra c(m, {{"V", v}});
    auto star = evaluate(c, compile_pre_star(kV)).first;
    for (const auto& config : all_configs(m.sig(), m.sig().num_channels() == 1 ? 3 : 2))
      if (oracle::bounded_reach(m, config, v, 6) == oracle::Reach::kReachable) {
        ++proved;
        t.check(star.contains(config), "model " + std::to_string(i) + " " + format_config(config, m.sig()));
      }
  }
  return t.outcome(std::to_string(proved) + " reachable configurations");
}

Outcome unfolding_law() {
  Tally t;
  std::mt19937 rng(107);
  auto check_model = [&](const GlcsModel& m, const NamedRegions& constants, const Term& v, const std::string& label) {
    ConfigAlgebra c(m, constants);
    std::vector<std::pair<Term, std::optional<Term>>> reach;
    for (Player p : {Player::kA, Player::kB})
      reach.emplace_back(compile_reach_game(p, v), compile_reach_game_unrewritten(p, v));
    reach.emplace_back(compile_asym_reach(Player::kB, v), std::nullopt);
    for (const auto& [term, original] : reach) {
      auto value = evaluate(c, term).first;
      t.check(evaluate(c, unfold(term, term.name())).first == value, label + " unfold " + to_string(term));
      if (!original) continue;
      EvalLimits<Region> plain;
      plain.allow_unguarded = true;
      auto again = Evaluator<ConfigAlgebra>(c, plain).evaluate(original->child(), {{original->name(), value}});
      t.check(again == value, label + " original equation " + to_string(*original));
    }
  };
  for (int i = 0; i < 30; ++i) {
    auto m = random_model(rng, {.channels = static_cast<std::size_t>(i % 3 == 0 ? 0 : 1), .locations = 4, .rules = 5,
                                .game = true, .deadlock_free = true});
    check_model(m, {{"V", random_region(rng, m.signature())}}, kV, "random model " + std::to_string(i));
  }
  for (const auto& path : bundled_models()) {
    auto model = load_model(path);
    if (!model.sig().game_mode()) continue;
    for (const auto& [name, region] : model.named_regions()) check_model(model, {}, Term::op(name), path.filename().string());
  }
  return t.outcome("reach-game terms on random and bundled game models");
}

Outcome refusal_contract() {
  Tally t;
  struct Case {
    const char* args;
    const char* message;
  };
  const Case cases[] = {
      {"check models/abp.wsmc inevitable --target START", "inevitability (AF, for all paths eventually) cannot be computed effectively"},
      {"check models/abp.wsmc ctl --formula 'AF START'", "inevitability (AF, for all paths eventually) cannot be computed effectively"},
      {"check models/abp.wsmc recurrent --target START", "recurrent reachability (EGF, some path visits the target infinitely often) is undecidable"},
      {"check models/abp.wsmc ctl --formula 'EGF START'", "recurrent reachability (EGF, some path visits the target infinitely often) is undecidable"},
      {"check models/asym_loss.wsmc asym-reach-A --target T", "reachability for player A in an asymmetric game (only B loses messages) cannot be computed effectively"},
      {"check models/asym_loss.wsmc asym-reach-B --player A --target T", "reachability for player A in an asymmetric game (only B loses messages) cannot be computed effectively"},
  };
  for (const auto& c : cases) {
    auto r = run_cli(c.args);
    t.check(r.code == 2, std::string(c.args) + ": exit " + std::to_string(r.code));
    t.check(r.err.find(c.message) != std::string::npos, std::string(c.args) + ": message " + r.err);
    t.check(r.out.empty(), std::string(c.args) + ": printed a result");
  }
  return t.outcome("6 refusals");
}

Outcome fixtures_deterministic() {
  Tally t;
  std::vector<fs::path> fixtures;
  for (const auto& entry : fs::directory_iterator(fs::path(WSMC_SOURCE_DIR) / "tests" / "fixtures"))
    if (entry.path().extension() == ".args") fixtures.push_back(entry.path());
  std::sort(fixtures.begin(), fixtures.end());
  for (const auto& f : fixtures) {
    auto args = slurp(f);
    while (!args.empty() && (args.back() == '\n' || args.back() == ' ')) args.pop_back();
    auto a = run_cli(args);
    auto b = run_cli(args);
    auto name = f.stem().string();
    t.check(a.code == b.code && a.out == b.out && a.err == b.err, name + " differs between runs");
    auto combined = a.out + "--- stderr\n" + a.err + "--- exit " + std::to_string(a.code) + "\n";
    t.check(combined == slurp(fs::path(f).replace_extension(".out")), name + " differs from its golden output");
  }
  return t.outcome(std::to_string(fixtures.size()) + " fixtures run twice");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"closures and kernels match brute force; duality", closures_match_brute_force},
      {"lossy pre/wpre absorb closure and kernel", lossy_pre_absorbs_closures},
      {"zero-channel evaluation equals the finite oracle", zero_channel_oracle},
      {"compiled terms guarded; bundled models terminate", guarded_and_terminating},
      {"fixpoints stable under substitution", substitution_fixpoints},
      {"pre-star sound against bounded search", prestar_sound},
      {"unfolding law and original reach equation", unfolding_law},
      {"refusal contract", refusal_contract},
      {"fixture determinism", fixtures_deterministic},
  };
  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::cout << "criterion " << index << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.name << " (" << o.detail
              << "; " << std::fixed << std::setprecision(2) << seconds << " s)" << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
