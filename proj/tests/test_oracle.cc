#include <catch_amalgamated.hpp>

#include "generators.hh"
#include "wsmc/algebras.hh"
#include "wsmc/compilers.hh"
#include "wsmc/error.hh"
#include "wsmc/eval.hh"
#include "wsmc/model_text.hh"
#include "wsmc/oracle/explicit.hh"
#include "wsmc/region_text.hh"

using namespace wsmc;
using namespace wsmc::testing;
using oracle::GameResult;
using oracle::LocationSet;
using oracle::Reach;

namespace {

const Term kV = Term::op("V");

Term parse_with(const GlcsModel& m, std::string_view text) {
  ConfigAlgebra c(m);
  return parse_term(text, c);
}

const char* kCycle = R"(
alphabet: a
locations: p q r
region V = (q)
rule p -> q : nop
rule q -> r : nop
rule r -> p : nop
)";

// A picks at p; B picks at q and r. From q, B can avoid the target forever
// by returning to p only through r, which A cannot force.
const char* kGame = R"(
alphabet: a
locations: p[A] q[B] r[B] s[A] t[A]
region V = (t)
rule p -> q : nop
rule p -> r : nop
rule q -> s : nop
rule q -> t : nop
rule r -> t : nop
rule s -> q : nop
rule t -> r : nop
)";

}  // namespace

TEST_CASE("finite oracle examples") {
  auto cycle = parse_model(kCycle);
  CHECK(oracle::finite_mc(cycle, parse_with(cycle, "mu X. V | pre(X)")) == LocationSet{0, 1, 2});
  CHECK(oracle::finite_mc(cycle, parse_with(cycle, "nu X. all & wpre(X)")) == LocationSet{0, 1, 2});
  CHECK(oracle::finite_mc(cycle, parse_with(cycle, "post(V)")) == LocationSet{2});
  CHECK(oracle::finite_mc(cycle, parse_with(cycle, "mu X. X")).empty());

  auto game = parse_model(kGame);
  REQUIRE(validate(game).empty());
  // Backward induction: t wins; r (B, only move to t) wins; p (A) wins via r;
  // q (B) escapes to s, and s only returns to q.
  auto attractor = oracle::finite_mc(game, compile_reach_game_unrewritten(Player::kA, kV));
  CHECK(attractor == LocationSet{0, 2, 4});
  CHECK(oracle::finite_mc(game, compile_reach_game(Player::kA, kV)) == attractor);

  auto with_channel = parse_model("alphabet: a\nchannels: c\nlocations: p\nrule p -> p : nop\n");
  CHECK_THROWS_AS(oracle::finite_mc(with_channel, Term::full()), ModelError);
}

TEST_CASE("symbolic evaluation matches the finite oracle without channels") {
  std::mt19937 rng(51);
  TermShape shape{.depth = 4,
                  .guarded = false,
                  .ops = {{"pre", 1}, {"wpre", 1}, {"prep", 1}, {"post", 1}, {"confA", 0}, {"confB", 0}, {"V", 0}}};
  EvalLimits<Region> unguarded;
  unguarded.allow_unguarded = true;
  for (int i = 0; i < 100; ++i) {
    auto m = random_model(rng, {.channels = 0, .locations = 4, .rules = 6, .game = i % 2 == 0});
    ConfigAlgebra c(m, {{"V", random_region(rng, m.signature())}});
    std::vector<Term> terms{TermGenerator(rng, shape).generate(), compile_pre_star(kV),
                            compile_forall_release(Term::op("confA"), kV),
                            compile_ctl("EX AX !EF V & AG (V | confB)", [&](auto n) { return c.arity(n); })};
    if (m.sig().game_mode())
      for (Player p : {Player::kA, Player::kB}) {
        terms.push_back(compile_reach_game(p, kV));
        terms.push_back(compile_buchi_game(p, kV));
        terms.push_back(compile_prob_reach_sure(p, kV));
        terms.push_back(compile_prob_invariant_sure(p, kV));
      }
    for (const auto& t : terms) {
      INFO(to_string(t));
      auto symbolic = evaluate(c, t, {}, unguarded).first;
      CHECK(oracle::locations_of(symbolic) == oracle::finite_mc(m, t, {{"V", c.apply("V", {})}}));
    }
  }
}

TEST_CASE("classical solvers") {
  auto game = parse_model(kGame);
  CHECK(oracle::attractor(game, 'A', {4}) == LocationSet{0, 2, 4});
  CHECK(oracle::attractor(game, 'B', {3}) == LocationSet{1, 3});
  CHECK(oracle::buchi(game, 'A', {4}) == LocationSet{0, 2, 4});
  CHECK(oracle::buchi(game, 'B', {1, 3}) == LocationSet{1, 3});
  // Without owners every location is existential.
  auto cycle = parse_model(kCycle);
  CHECK(oracle::attractor(cycle, 'A', {1}) == LocationSet{0, 1, 2});
  CHECK(oracle::buchi(cycle, 'A', {1}) == LocationSet{0, 1, 2});
}

TEST_CASE("compiled games match the classical solvers without channels") {
  std::mt19937 rng(54);
  for (int i = 0; i < 50; ++i) {
    auto m = random_model(rng, {.channels = 0, .locations = 5, .rules = 7, .game = true});
    auto v = random_region(rng, m.signature());
    ConfigAlgebra c(m, {{"V", v}});
    auto target = oracle::locations_of(v);
    auto at = [&](const Term& t) { return oracle::locations_of(evaluate(c, t).first); };
    for (Player p : {Player::kA, Player::kB}) {
      CHECK(at(compile_reach_game(p, kV)) == oracle::attractor(m, player_name(p), target));
      CHECK(at(compile_buchi_game(p, kV)) == oracle::buchi(m, player_name(p), target));
      CHECK(at(compile_prob_reach_sure(p, kV)) == oracle::attractor(m, player_name(p), target));
    }
  }
}

TEST_CASE("bounded reachability examples") {
  auto m = parse_model("alphabet: a\nchannels: c\nlocations: p q r\nrule p -> q : c!a\nrule q -> p : nop\n");
  auto target = parse_region("(q; a)", m.signature());
  auto sig = m.sig();
  CHECK(oracle::bounded_reach(m, parse_config("q : a", sig), target, 0) == Reach::kReachable);
  CHECK(oracle::bounded_reach(m, parse_config("p : ", sig), target, 0) == Reach::kUnknown);
  CHECK(oracle::bounded_reach(m, parse_config("p : ", sig), target, 1) == Reach::kReachable);
  CHECK(oracle::bounded_reach(m, parse_config("r : ", sig), target, 8) == Reach::kUnknown);
}

TEST_CASE("bounded reachability proves only members of the pre-star region") {
  std::mt19937 rng(52);
  std::size_t proved = 0;
  for (int i = 0; i < 30; ++i) {
    auto m = random_model(rng, {.channels = 1, .locations = 3, .rules = 5});
    auto v = random_region(rng, m.signature());
    ConfigAlgebra c(m, {{"V", v}});
    auto star = evaluate(c, compile_pre_star(kV)).first;
    for (const auto& config : all_configs(m.sig(), 3))
      if (oracle::bounded_reach(m, config, v, 6) == Reach::kReachable) {
        ++proved;
        CHECK(star.contains(config));
      }
  }
  CHECK(proved > 100);
}

TEST_CASE("bounded game examples") {
  auto game = parse_model(kGame);
  auto v = parse_region("(t)", game.signature());
  auto at = [&](const char* loc) { return parse_config(loc, game.sig()); };
  CHECK(oracle::bounded_game(game, at("t"), {'A', v}, 0) == GameResult::kWinA);
  CHECK(oracle::bounded_game(game, at("r"), {'A', v}, 1) == GameResult::kWinA);
  CHECK(oracle::bounded_game(game, at("p"), {'A', v}, 2) == GameResult::kWinA);
  CHECK(oracle::bounded_game(game, at("p"), {'A', v}, 1) == GameResult::kUnknown);
  CHECK(oracle::bounded_game(game, at("q"), {'A', v}, 5) == GameResult::kWinB);

  // B controls the losses: it empties the channel so A can never read a.
  auto lossy = parse_model(R"(
alphabet: a
channels: c
locations: p[A] q[B] r[A] s[B]
rule p -> q : c!a
rule q -> r : nop
rule r -> s : c?a
rule r -> q : nop
rule s -> r : nop
)");
  REQUIRE(validate(lossy).empty());
  auto goal = parse_region("(s; a*)", lossy.signature());
  CHECK(oracle::bounded_game(lossy, parse_config("p : ", lossy.sig()), {'A', goal}, 6) == GameResult::kWinB);

  // Only B loses messages, and B reaches t only by dropping the a that A sent.
  auto asym = parse_model(R"(
alphabet: a
channels: c
locations: p[A] q[B] r[A] t[B] u[B]
region T = (t; a*)
rule p -> q : c!a
rule q -> r : nop
rule r -> t : nop guard (r; ())
rule r -> u : c?a
rule r -> u : nop guard (r; a a*)
rule t -> p : nop
rule u -> p : nop
)");
  REQUIRE(validate(asym).empty());
  auto t = parse_region("T", asym.signature(), asym.named_regions());
  auto start = parse_config("p : ", asym.sig());
  CHECK(oracle::bounded_game(asym, start, {'B', t, true}, 3) == GameResult::kWinB);
  // A's own moves are perfect: from r with a pending, the shortest win takes five moves.
  CHECK(oracle::bounded_game(asym, parse_config("r : a", asym.sig()), {'B', t, true}, 4) == GameResult::kUnknown);
  CHECK(oracle::bounded_game(asym, parse_config("r : a", asym.sig()), {'B', t, true}, 5) == GameResult::kWinB);
  ConfigAlgebra c(asym);
  auto region = evaluate(c, compile_asym_reach(Player::kB, Term::op("T"))).first;
  CHECK(region.contains(start));
  CHECK(region.contains(parse_config("r : a", asym.sig())));
}

TEST_CASE("bounded game verdicts agree with the symbolic winning regions") {
  std::mt19937 rng(53);
  std::size_t decided = 0;
  for (int i = 0; i < 20; ++i) {
    auto m = random_model(rng, {.channels = 1, .locations = 4, .rules = 5, .game = true, .deadlock_free = true});
    auto v = random_region(rng, m.signature());
    ConfigAlgebra c(m, {{"V", v}});
    auto reach_a = evaluate(c, compile_reach_game(Player::kA, kV)).first;
    auto reach_b = evaluate(c, compile_reach_game(Player::kB, kV)).first;
    auto asym_b = evaluate(c, compile_asym_reach(Player::kB, kV)).first;
    for (const auto& config : all_configs(m.sig(), 2)) {
      auto check = [&](const oracle::ReachGoal& goal, const Region& region) {
        auto r = oracle::bounded_game(m, config, goal, 5);
        if (r == GameResult::kUnknown) return;
        ++decided;
        const bool reacher_wins = r == (goal.player == 'A' ? GameResult::kWinA : GameResult::kWinB);
        CHECK(region.contains(config) == reacher_wins);
      };
      check({'A', v}, reach_a);
      check({'B', v}, reach_b);
      check({'B', v, true}, asym_b);
    }
  }
  CHECK(decided > 200);
}
