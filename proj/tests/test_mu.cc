#include <catch_amalgamated.hpp>

#include "generators.hh"
#include "wsmc/algebras.hh"
#include "wsmc/error.hh"
#include "wsmc/eval.hh"
#include "wsmc/regex.hh"

using namespace wsmc;
using namespace wsmc::testing;

namespace {

std::optional<std::size_t> config_ops(std::string_view name) {
  static const std::map<std::string, std::size_t, std::less<>> kOps{
      {"pre", 1}, {"wpre", 1}, {"prep", 1}, {"wprep", 1}, {"confA", 0}, {"confB", 0},
      {"V", 0},   {"V1", 0},   {"V2", 0}};
  if (auto it = kOps.find(name); it != kOps.end()) return it->second;
  return std::nullopt;
}

Term parse(std::string_view text) { return parse_term(text, ArityLookup(config_ops)); }

WordAlgebra word_algebra() {
  auto sigma = ab();
  return WordAlgebra(sigma, {{"R1", canonicalize(compile_regex("(a|b)*", sigma))},
                             {"R2", canonicalize(compile_regex("a b*", sigma))},
                             {"AB", canonicalize(compile_regex("a b", sigma))}});
}

/// Checks that every fixpoint reached reproduces itself when substituted
/// for its bound variable.
template <typename Algebra>
EvalLimits<typename Algebra::Value> substitution_check(const Algebra& algebra, std::size_t& checked) {
  EvalLimits<typename Algebra::Value> limits;
  limits.check_monotone = true;
  limits.on_fixpoint = [&algebra, &checked](const Term& binder, const auto& env, const auto& value) {
    auto extended = env;
    extended.insert_or_assign(binder.name(), value);
    EvalLimits<typename Algebra::Value> plain;
    plain.allow_unguarded = true;
    auto again = Evaluator<Algebra>(algebra, plain).evaluate(binder.child(), extended);
    CHECK(algebra.equal(again, value));
    ++checked;
  };
  return limits;
}

}  // namespace

TEST_CASE("parsing terms") {
  auto t = parse("mu X. V | pre(up(X))");
  REQUIRE(t.kind() == TermKind::kMu);
  CHECK(t == Term::mu("X", Term::unite(Term::op("V"), Term::op("pre", {Term::up(Term::var("X"))}))));
  CHECK(to_string(t) == "mu X. V | pre(up(X))");

  CHECK(parse("mu X. X").kind() == TermKind::kMu);
  CHECK_THROWS_AS(parse("mu X. !X"), TermError);
  CHECK_NOTHROW(parse("mu X. !!X"));
  CHECK_NOTHROW(parse("mu X. V | !(V & !up(X))"));
  CHECK_THROWS_AS(parse("pre(V, V)"), SyntaxError);
  CHECK_THROWS_AS(parse("foo(V)"), SyntaxError);
  CHECK_THROWS_AS(parse("mu X. V |"), SyntaxError);
  CHECK_THROWS_AS(parse("mu X. X(V)"), SyntaxError);

  // Precedence: & binds tighter than |, ! tighter than both, binders extend right.
  CHECK(parse("V | V1 & !V2") == Term::unite(Term::op("V"), Term::intersect(Term::op("V1"), Term::complement(Term::op("V2")))));
  CHECK(parse("V & mu X. up(X) | V") == Term::intersect(Term::op("V"), Term::mu("X", Term::unite(Term::up(Term::var("X")), Term::op("V")))));
  CHECK(parse("Z | V").free_variables() == std::vector<std::string>{"Z"});
}

TEST_CASE("binders are renamed apart") {
  auto t = parse("(mu X. up(X)) | (mu X. up(X) | X)");
  auto names = binders(t);
  REQUIRE(names.size() == 2);
  CHECK(names[0] != names[1]);
  CHECK(t.free_variables() == std::vector<std::string>{});

  auto shadow = parse("X | mu X. up(X)");
  CHECK(shadow.free_variables() == std::vector<std::string>{"X"});
  CHECK(binders(shadow).front() != "X");
}

TEST_CASE("printing round-trips") {
  std::mt19937 rng(31);
  TermShape shape{.depth = 4, .guarded = false, .ops = {{"pre", 1}, {"wpre", 1}, {"V", 0}, {"confA", 0}}};
  for (int i = 0; i < 200; ++i) {
    auto t = TermGenerator(rng, shape).generate();
    auto text = to_string(t);
    INFO(text);
    CHECK(parse(text) == t);
  }
}

TEST_CASE("guardedness") {
  CHECK(is_guarded(parse("mu X. V | pre(up(X))")));
  auto bad = check_guarded(parse("mu X. V | pre(X)"));
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].binder == "X");
  CHECK(bad[0].path == std::vector<std::size_t>{1, 0});
  CHECK(describe(bad[0]).find("unguarded binder X") == 0);
  CHECK(is_guarded(parse("nu X. V2 & (wpre(kdown(X)) | V1)")));
  CHECK_FALSE(is_guarded(parse("nu X. V2 & (wpre(kup(X)) | V1)")));
  CHECK_FALSE(is_guarded(parse("mu X. up(V) | X")));
  // A guard outside the binder does not count.
  CHECK_FALSE(is_guarded(parse("up(mu X. X)")));
  // Complements swap the guard direction: !up(!X) is kdown(X).
  CHECK(is_guarded(parse("nu X. !up(!X)")));
  CHECK_FALSE(is_guarded(parse("mu X. !up(!X)")));
  CHECK(is_guarded(parse("mu X. !kdown(!X)")));
  // The guard may sit above a nested binder.
  CHECK(is_guarded(parse("mu X. up(nu Y. kdown(Y) & X)")));
  CHECK_FALSE(is_guarded(parse("mu X. nu Y. kdown(Y & X)")));
}

TEST_CASE("substitution and unfolding") {
  auto t = parse("mu X. V | pre(X)");
  CHECK(unfold(t, "X") == parse("mu X. V | pre(V | pre(X))"));
  CHECK_THROWS_AS(unfold(t, "Q"), TermError);

  auto nested = parse("mu X. V | pre(up(nu Y. kdown(Y) & X))");
  auto u = unfold(nested, "X");
  auto names = binders(u);
  CHECK(names.size() == 3);
  CHECK(std::set<std::string>(names.begin(), names.end()).size() == 3);
  CHECK(is_guarded(u));

  auto s = substitute(parse("nu Y. kdown(Y) & Z"), "Z", Term::var("Y"));
  REQUIRE(s.kind() == TermKind::kNu);
  CHECK(s.name() != "Y");
  CHECK(s.free_variables() == std::vector<std::string>{"Y"});
}

TEST_CASE("evaluation examples over words") {
  auto w = word_algebra();
  auto [v1, s1] = evaluate(w, parse_term("mu X. up(X)", w));
  CHECK(v1.is_empty());
  REQUIRE(s1.binders.size() == 1);
  CHECK(s1.binders[0].iterations == 1);
  CHECK(evaluate(w, parse_term("nu X. kdown(X)", w)).first.is_universal());
  CHECK_FALSE(is_satisfiable(w, parse_term("mu X. up(X)", w)));
  CHECK(is_valid(w, parse_term("nu X. kdown(X)", w)));
  CHECK(is_member(w, parse_term("up(AB)", w), ab().parse_word("ab")));
  CHECK(is_member(w, parse_term("up(AB)", w), ab().parse_word("bab")));
  CHECK_FALSE(is_member(w, parse_term("up(AB)", w), ab().parse_word("ba")));

  CHECK_THROWS_AS(evaluate(w, parse_term("mu X. X", w)), UnguardedTerm);
  EvalLimits<CanonicalDfa> capped;
  capped.max_iterations = 5;
  CHECK(evaluate(w, parse_term("mu X. X", w), {}, capped).first.is_empty());
  CHECK_THROWS_AS(evaluate(w, parse_term("mu X. R2 | concat(X, X) | concat(AB, X)", w), {}, capped), IterationLimit);
  CHECK_THROWS_AS(evaluate(w, parse_term("Z | R1", w)), UnknownVariable);
}

TEST_CASE("closing example term reaches a fixpoint that is stable under substitution") {
  auto w = word_algebra();
  auto t = parse_term("mu X. nu Y. kup(shuffle(R1, star(X) & down(lres(Y, reverse(X)) & lres(X, R2))))", w);
  CHECK(is_guarded(t));
  std::size_t checked = 0;
  auto [value, stats] = evaluate(w, t, {}, substitution_check(w, checked));
  CHECK(checked >= 2);
  for (const auto& b : stats.binders) CHECK(b.iterations > 0);
  CHECK(value.alphabet() == ab());
  // The value is upward-closed, as the outer kernel demands.
  CHECK(up_closure(value) == value);
}

TEST_CASE("random guarded word terms: fixpoints are stable and unfolding is neutral") {
  auto w = word_algebra();
  std::mt19937 rng(32);
  TermShape shape{.depth = 4,
                  .guarded = true,
                  .ops = {{"concat", 2}, {"shuffle", 2}, {"lres", 2}, {"rres", 2}, {"reverse", 1}, {"R2", 0}, {"AB", 0}}};
  std::size_t checked = 0;
  for (int i = 0; i < 60; ++i) {
    auto t = TermGenerator(rng, shape).generate();
    INFO(to_string(t));
    REQUIRE(is_guarded(t));
    auto value = evaluate(w, t, {}, substitution_check(w, checked)).first;
    for (const auto& b : binders(t)) {
      auto u = unfold(t, b);
      if (is_guarded(u)) CHECK(evaluate(w, u).first == value);
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("evaluation is monotone in the environment") {
  auto w = word_algebra();
  std::mt19937 rng(33);
  TermShape shape{.depth = 4, .guarded = true, .ops = {{"concat", 2}, {"shuffle", 2}, {"star", 1}, {"R2", 0}}, .free_vars = {"Z"}};
  for (int i = 0; i < 60; ++i) {
    auto t = TermGenerator(rng, shape).generate();
    INFO(to_string(t));
    auto small = canonicalize(random_nfa(rng, ab(), 3));
    auto large = unite(small, canonicalize(random_nfa(rng, ab(), 3)));
    Env<CanonicalDfa> e1{{"Z", small}};
    Env<CanonicalDfa> e2{{"Z", large}};
    CHECK(is_subset(evaluate(w, t, e1).first, evaluate(w, t, e2).first));
  }
}

TEST_CASE("configuration algebra binds the model operators") {
  std::mt19937 rng(34);
  auto m = random_model(rng, {.channels = 1, .locations = 2, .rules = 4, .game = true});
  ConfigAlgebra c(m, {{"V", random_region(rng, m.signature())}});
  CHECK(c.arity("pre") == 1);
  CHECK(c.arity("confB") == 0);
  CHECK(c.arity("V") == 0);
  CHECK_FALSE(c.arity("nothing"));
  auto t = parse_term("mu X. V | pre(up(X))", c);
  std::size_t checked = 0;
  auto v = evaluate(c, t, {}, substitution_check(c, checked)).first;
  CHECK(checked == 1);
  CHECK(is_subset(c.apply("V", {}), v));
  std::vector<Region> arg{v};
  CHECK(is_subset(c.apply("pre", arg), v));
  CHECK(unite(c.apply("confA", {}), c.apply("confB", {})).is_universal());
}
