#include "wsmc/compilers.hh"

#include <cctype>

#include "wsmc/error.hh"
#include "wsmc/model_text.hh"

namespace wsmc {

namespace {

Term conf(Player p) { return Term::op(p == Player::kA ? "confA" : "confB"); }
Term pre(const Term& t) { return Term::op("pre", {t}); }
Term prep(const Term& t) { return Term::op("prep", {t}); }
Term wpre(const Term& t) { return Term::op("wpre", {t}); }
Term wprep(const Term& t) { return Term::op("wprep", {t}); }
Term var(const char* name) { return Term::var(name); }

Term any3(Term a, Term b, Term c) { return Term::unite(Term::unite(std::move(a), std::move(b)), std::move(c)); }

/// Reachability for `p` with a target that may mention free variables.
Term reach_game(Player p, const Term& v, const char* x) {
  auto step = pre(Term::up(var(x)));
  return Term::mu(x, any3(v, Term::intersect(conf(p), step),
                          Term::intersect(conf(opponent(p)), wpre(Term::unite(v, step)))));
}

}  // namespace

Player opponent(Player p) { return p == Player::kA ? Player::kB : Player::kA; }
char player_name(Player p) { return p == Player::kA ? 'A' : 'B'; }

Term compile_pre_star(const Term& v) { return Term::mu("X", Term::unite(v, pre(Term::up(var("X"))))); }

Term compile_forall_release(const Term& v1, const Term& v2) {
  return Term::nu("X", Term::intersect(v2, Term::unite(wpre(Term::kdown(var("X"))), v1)));
}

Term compile_reach_game(Player p, const Term& v) { return reach_game(p, v, "X"); }

Term compile_reach_game_unrewritten(Player p, const Term& v) {
  return Term::mu("X", any3(v, Term::intersect(conf(p), pre(var("X"))),
                            Term::intersect(conf(opponent(p)), wpre(var("X")))));
}

Term compile_invariant_game(Player p, const Term& v) {
  return Term::complement(compile_reach_game(opponent(p), Term::complement(v)));
}

Term compile_buchi_game(Player p, const Term& v) {
  auto keep = wpre(Term::kdown(var("Y")));
  auto phi_p = Term::intersect(conf(p), pre(Term::up(keep)));
  auto phi_o = Term::intersect(conf(opponent(p)), keep);
  auto target = Term::intersect(v, Term::unite(phi_p, phi_o));
  return Term::nu("Y", reach_game(p, target, "X"));
}

Term compile_persistence_game(Player p, const Term& v) {
  return Term::complement(compile_buchi_game(opponent(p), Term::complement(v)));
}

Term compile_asym_reach(Player p, const Term& v) {
  if (p == Player::kA) refuse_asymmetric_reach(p);
  auto step = pre(Term::up(var("X")));
  return Term::mu("X", any3(v, Term::intersect(conf(Player::kB), step),
                            Term::intersect(conf(Player::kA), wprep(Term::unite(v, step)))));
}

Term compile_asym_invariant(Player p, const Term& v) {
  if (p == Player::kB) refuse_asymmetric_reach(Player::kA);
  return Term::complement(compile_asym_reach(Player::kB, Term::complement(v)));
}

Term compile_prob_reach_sure(Player p, const Term& v) {
  auto inside = Term::intersect(Term::up(var("X")), Term::kdown(var("Y")));
  return Term::nu("Y", Term::mu("X", any3(v, Term::intersect(conf(p), prep(inside)),
                                          Term::intersect(conf(opponent(p)), wprep(inside)))));
}

Term compile_prob_invariant_sure(Player p, const Term& v) {
  auto stay = Term::kdown(var("X"));
  return Term::nu("X", Term::intersect(v, Term::unite(Term::intersect(conf(p), prep(stay)),
                                                      Term::intersect(conf(opponent(p)), wpre(stay)))));
}

Term compile_prob_reach_positive(Player p, const Term& v) {
  return Term::complement(compile_prob_invariant_sure(opponent(p), Term::complement(v)));
}

Term compile_prob_invariant_positive(Player p, const Term& v) {
  return Term::complement(compile_prob_reach_sure(opponent(p), Term::complement(v)));
}

void refuse_inevitability() {
  throw NonEffectiveQuery(
      "inevitability (AF, for all paths eventually) cannot be computed effectively on lossy channel systems; "
      "no approximation is produced");
}

void refuse_recurrence() {
  throw NonEffectiveQuery(
      "recurrent reachability (EGF, some path visits the target infinitely often) is undecidable on lossy "
      "channel systems; no approximation is produced");
}

void refuse_asymmetric_reach(Player p) {
  throw NonEffectiveQuery(std::string("reachability for player ") + player_name(p) +
                          " in an asymmetric game (only B loses messages) cannot be computed effectively; "
                          "no approximation is produced");
}

// ---------------------------------------------------------------------------
// CTL

namespace {

class CtlParser {
 public:
  CtlParser(std::string_view text, const ArityLookup& atoms) : text_(text), atoms_(atoms) {}

  Term parse() {
    auto t = disjunction();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected text");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, 0, pos_ + 1); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string peek_word() {
    skip_ws();
    std::size_t p = pos_;
    while (p < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[p])) || text_[p] == '_')) ++p;
    return std::string(text_.substr(pos_, p - pos_));
  }

  std::string fresh() { return "X" + std::to_string(++binders_); }

  Term disjunction() {
    auto t = conjunction();
    while (accept('|')) t = Term::unite(t, conjunction());
    return t;
  }

  Term conjunction() {
    auto t = unary();
    while (accept('&')) t = Term::intersect(t, unary());
    return t;
  }

  Term exists_until(const Term& f, const Term& g) {
    auto x = fresh();
    auto step = pre(Term::up(Term::var(x)));
    return Term::mu(x, Term::unite(g, f.kind() == TermKind::kFull ? step : Term::intersect(f, step)));
  }

  Term forall_release(const Term& f, const Term& g) {
    auto x = fresh();
    auto keep = wpre(Term::kdown(Term::var(x)));
    return Term::nu(x, Term::intersect(g, f.kind() == TermKind::kEmpty ? keep : Term::unite(keep, f)));
  }

  /// Parses "[f U g]" or "[f R g]" and returns the operands and the letter.
  std::tuple<Term, char, Term> binary_path() {
    expect('[');
    auto f = disjunction();
    auto word = peek_word();
    if (word != "U" && word != "R") fail("expected U or R");
    pos_ += 1;
    auto g = disjunction();
    expect(']');
    return {f, word[0], g};
  }

  Term unary() {
    if (accept('!')) return Term::complement(unary());
    if (accept('(')) {
      auto t = disjunction();
      expect(')');
      return t;
    }
    std::size_t at = pos_;
    auto word = peek_word();
    if (word.empty()) fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'" : "unexpected end of formula");
    pos_ += word.size();
    if (word == "true" || word == "all") return Term::full();
    if (word == "false" || word == "empty") return Term::empty();
    if (word == "EX") return pre(unary());
    if (word == "AX") return wpre(unary());
    if (word == "EF") return exists_until(Term::full(), unary());
    if (word == "AG") return forall_release(Term::empty(), unary());
    if (word == "AF") refuse_inevitability();
    if (word == "EGF") refuse_recurrence();
    if (word == "EG") throw OutsideFragment("EG is outside the supported fragment (EX, E[U], A[R], AX, !, &, |)");
    if (word == "E" || word == "A") {
      auto [f, op, g] = binary_path();
      if (word == "E" && op == 'U') return exists_until(f, g);
      if (word == "A" && op == 'R') return forall_release(f, g);
      if (word == "A") refuse_inevitability();
      throw OutsideFragment("E[f R g] is outside the supported fragment (EX, E[U], A[R], AX, !, &, |)");
    }
    if (atoms_(word) == std::optional<std::size_t>(0)) return Term::op(word);
    pos_ = at;
    fail("unknown region " + word);
  }

  std::string_view text_;
  const ArityLookup& atoms_;
  std::size_t pos_ = 0;
  std::size_t binders_ = 0;
};

bool is_identifier(std::string_view s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s.front()))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

/// Term for a region argument; region expressions become fresh constants.
Term region_argument(const GlcsModel& model, const std::optional<std::string>& text, const char* flag,
                     const char* constant, NamedRegions& constants) {
  if (!text) throw Error(std::string("missing ") + flag + " region");
  auto name = trim(*text);
  if (is_identifier(name) && model.named_regions().count(name)) return Term::op(std::string(name));
  std::string fresh = constant;
  while (model.named_regions().count(fresh) || constants.count(fresh)) fresh += "_";
  constants.emplace(fresh, parse_region(name, model.signature(), model.named_regions()));
  return Term::op(fresh);
}

}  // namespace

Term compile_ctl(std::string_view formula, const ArityLookup& atoms) { return CtlParser(formula, atoms).parse(); }

void require_valid(const GlcsModel& model, bool game) {
  auto report = validate(model);
  if (!report.empty()) {
    std::string msg = "model does not validate:";
    for (const auto& line : report) msg += "\n  " + line;
    throw ModelError(msg);
  }
  if (game && !model.sig().game_mode())
    throw ModelError("this property needs a game model (locations owned by A and B)");
}

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> kNames{
      "prestar",      "release",     "ctl",          "game-reach",     "game-inv",
      "game-buchi",   "game-persist", "asym-reach-B", "asym-inv-A",     "prob-reach-1",
      "prob-inv-1",   "prob-reach-pos", "prob-inv-pos", "inevitable",   "recurrent",
      "asym-reach-A", "asym-inv-B"};
  return kNames;
}

Query compile_property(std::string_view name, const GlcsModel& model, const PropertyArgs& args) {
  // Refusals come first: they do not depend on the model.
  if (name == "inevitable") refuse_inevitability();
  if (name == "recurrent") refuse_recurrence();
  if (name == "asym-reach-A" || (name == "asym-reach-B" && args.player == Player::kA))
    refuse_asymmetric_reach(Player::kA);
  if (name == "asym-inv-B" || (name == "asym-inv-A" && args.player == Player::kB))
    refuse_asymmetric_reach(Player::kA);

  Query q{Term::empty(), {}};
  auto target = [&] { return region_argument(model, args.target, "--target", "target", q.constants); };
  Player p = args.player.value_or(Player::kA);

  if (name == "ctl") {
    if (!args.formula) throw Error("missing --formula");
    require_valid(model, false);
    q.term = compile_ctl(*args.formula, [&](std::string_view atom) -> std::optional<std::size_t> {
      if (model.named_regions().find(atom) != model.named_regions().end()) return 0;
      return std::nullopt;
    });
    return q;
  }
  if (name == "prestar" || name == "release") {
    require_valid(model, false);
    if (name == "prestar") {
      q.term = compile_pre_star(target());
    } else {
      auto v2 = target();
      auto v1 = args.cond ? region_argument(model, args.cond, "--cond", "cond", q.constants) : Term::empty();
      q.term = compile_forall_release(v1, v2);
    }
    return q;
  }

  using Compiler = Term (*)(Player, const Term&);
  static const std::pair<std::string_view, Compiler> kGames[] = {
      {"game-reach", &compile_reach_game},
      {"game-inv", &compile_invariant_game},
      {"game-buchi", &compile_buchi_game},
      {"game-persist", &compile_persistence_game},
      {"asym-reach-B", &compile_asym_reach},
      {"asym-inv-A", &compile_asym_invariant},
      {"prob-reach-1", &compile_prob_reach_sure},
      {"prob-inv-1", &compile_prob_invariant_sure},
      {"prob-reach-pos", &compile_prob_reach_positive},
      {"prob-inv-pos", &compile_prob_invariant_positive},
  };
  for (const auto& [game, compile] : kGames) {
    if (name != game) continue;
    require_valid(model, true);
    if (name == "asym-reach-B") p = Player::kB;
    if (name == "asym-inv-A") p = Player::kA;
    q.term = compile(p, target());
    return q;
  }
  throw Error("unknown property '" + std::string(name) + "'");
}

}  // namespace wsmc
