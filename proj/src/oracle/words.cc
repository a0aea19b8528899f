#include "wsmc/oracle/words.hh"

#include <map>
#include <queue>

#include "wsmc/error.hh"

namespace wsmc::oracle {

namespace {

using StateSet = std::set<State>;

StateSet closure(const Nfa& nfa, StateSet s) {
  std::vector<State> stack(s.begin(), s.end());
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (const auto& e : nfa.edges(q))
      if (e.symbol == kEpsilon && s.insert(e.target).second) stack.push_back(e.target);
  }
  return s;
}

StateSet initial(const Nfa& nfa) {
  StateSet s;
  for (State q = 0; q < nfa.num_states(); ++q)
    if (nfa.is_initial(q)) s.insert(q);
  return closure(nfa, s);
}

StateSet step(const Nfa& nfa, const StateSet& s, Symbol a) {
  StateSet out;
  for (State q : s)
    for (const auto& e : nfa.edges(q))
      if (e.symbol == a) out.insert(e.target);
  return closure(nfa, out);
}

bool any_accepting(const Nfa& nfa, const StateSet& s) {
  for (State q : s)
    if (nfa.is_accepting(q)) return true;
  return false;
}

bool member_from(const Nfa& nfa, StateSet s, const Word& w) {
  for (Symbol a : w) s = step(nfa, s, a);
  return any_accepting(nfa, s);
}

/// Exists v in L(nfa) with u a subword of v.
bool has_superword_in(const Nfa& nfa, const Word& u) {
  const auto k = nfa.alphabet().size();
  std::set<std::pair<StateSet, std::size_t>> seen;
  std::queue<std::pair<StateSet, std::size_t>> work;
  work.push({initial(nfa), 0});
  while (!work.empty()) {
    auto [s, i] = work.front();
    work.pop();
    if (!seen.insert({s, i}).second) continue;
    if (i == u.size() && any_accepting(nfa, s)) return true;
    for (Symbol a = 0; a < k; ++a) {
      StateSet t = step(nfa, s, a);
      if (t.empty()) continue;
      work.push({t, i});
      if (i < u.size() && u[i] == a) work.push({t, i + 1});
    }
  }
  return false;
}

/// Exists w outside L(nfa) with v a subword of w.
bool has_superword_outside(const Nfa& nfa, const Word& v) {
  const auto k = nfa.alphabet().size();
  std::set<std::pair<StateSet, std::size_t>> seen;
  std::queue<std::pair<StateSet, std::size_t>> work;
  work.push({initial(nfa), 0});
  while (!work.empty()) {
    auto [s, i] = work.front();
    work.pop();
    if (!seen.insert({s, i}).second) continue;
    if (i == v.size() && !any_accepting(nfa, s)) return true;
    for (Symbol a = 0; a < k; ++a) {
      StateSet t = step(nfa, s, a);
      work.push({t, i});
      if (i < v.size() && v[i] == a) work.push({t, i + 1});
    }
  }
  return false;
}

std::vector<Word> subwords(const Word& v) {
  std::vector<Word> out;
  const std::size_t n = v.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Word u;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) u.push_back(v[i]);
    out.push_back(std::move(u));
  }
  return out;
}

/// Exists u in L(a) with u.v in L(b): search pairs of state sets reading u.
bool left_residual_member(const Nfa& a, const Nfa& b, const Word& v) {
  const auto k = a.alphabet().size();
  std::set<std::pair<StateSet, StateSet>> seen;
  std::queue<std::pair<StateSet, StateSet>> work;
  work.push({initial(a), initial(b)});
  while (!work.empty()) {
    auto [sa, sb] = work.front();
    work.pop();
    if (!seen.insert({sa, sb}).second) continue;
    if (any_accepting(a, sa) && member_from(b, sb, v)) return true;
    for (Symbol c = 0; c < k; ++c) {
      StateSet ta = step(a, sa, c), tb = step(b, sb, c);
      if (!ta.empty() && !tb.empty()) work.push({ta, tb});
    }
  }
  return false;
}

/// Exists v in L(b) with u.v in L(a).
bool right_residual_member(const Nfa& a, const Nfa& b, const Word& u) {
  const auto k = a.alphabet().size();
  StateSet after_u = initial(a);
  for (Symbol c : u) after_u = step(a, after_u, c);
  std::set<std::pair<StateSet, StateSet>> seen;
  std::queue<std::pair<StateSet, StateSet>> work;
  work.push({after_u, initial(b)});
  while (!work.empty()) {
    auto [sa, sb] = work.front();
    work.pop();
    if (!seen.insert({sa, sb}).second) continue;
    if (any_accepting(a, sa) && any_accepting(b, sb)) return true;
    for (Symbol c = 0; c < k; ++c) {
      StateSet ta = step(a, sa, c), tb = step(b, sb, c);
      if (!ta.empty() && !tb.empty()) work.push({ta, tb});
    }
  }
  return false;
}

bool concat_member(const Nfa& a, const Nfa& b, const Word& w) {
  for (std::size_t i = 0; i <= w.size(); ++i)
    if (member(a, Word(w.begin(), w.begin() + i)) && member(b, Word(w.begin() + i, w.end())))
      return true;
  return false;
}

bool star_member(const Nfa& a, const Word& w) {
  std::vector<bool> ok(w.size() + 1, false);
  ok[0] = true;
  for (std::size_t j = 1; j <= w.size(); ++j)
    for (std::size_t i = 0; i < j && !ok[j]; ++i)
      ok[j] = ok[i] && member(a, Word(w.begin() + i, w.begin() + j));
  return ok[w.size()];
}

bool shuffle_member(const Nfa& a, const Nfa& b, const Word& w) {
  const std::size_t n = w.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Word x, y;
    for (std::size_t i = 0; i < n; ++i) (mask & (1u << i) ? x : y).push_back(w[i]);
    if (member(a, x) && member(b, y)) return true;
  }
  return false;
}

std::size_t arity(WordOp op) {
  switch (op) {
    case WordOp::kUnion:
    case WordOp::kIntersection:
    case WordOp::kDifference:
    case WordOp::kConcat:
    case WordOp::kShuffle:
    case WordOp::kLeftResidual:
    case WordOp::kRightResidual:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

std::vector<Word> all_words(const Alphabet& alphabet, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (Symbol a = 0; a < alphabet.size(); ++a) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

bool member(const Nfa& nfa, const Word& w) { return member_from(nfa, initial(nfa), w); }

bool is_subword(const Word& u, const Word& v) {
  std::size_t i = 0;
  for (Symbol a : v)
    if (i < u.size() && u[i] == a) ++i;
  return i == u.size();
}

std::set<Word> brute_words(WordOp op, std::span<const Nfa> inputs, std::size_t max_len) {
  if (max_len > kMaxBruteLength) throw Error("brute-force bound exceeds " + std::to_string(kMaxBruteLength));
  if (inputs.size() != arity(op)) throw Error("wrong number of inputs for brute-force operator");
  const Nfa& a = inputs[0];
  const Nfa* b = inputs.size() > 1 ? &inputs[1] : nullptr;
  std::set<Word> out;
  for (const Word& w : all_words(a.alphabet(), max_len)) {
    bool in = false;
    switch (op) {
      case WordOp::kLanguage: in = member(a, w); break;
      case WordOp::kUnion: in = member(a, w) || member(*b, w); break;
      case WordOp::kIntersection: in = member(a, w) && member(*b, w); break;
      case WordOp::kComplement: in = !member(a, w); break;
      case WordOp::kDifference: in = member(a, w) && !member(*b, w); break;
      case WordOp::kConcat: in = concat_member(a, *b, w); break;
      case WordOp::kStar: in = star_member(a, w); break;
      case WordOp::kReverse: in = member(a, Word(w.rbegin(), w.rend())); break;
      case WordOp::kShuffle: in = shuffle_member(a, *b, w); break;
      case WordOp::kLeftResidual: in = left_residual_member(a, *b, w); break;
      case WordOp::kRightResidual: in = right_residual_member(a, *b, w); break;
      case WordOp::kUpClosure:
        // Every subword of w is no longer than w, so the bound is exact.
        for (const Word& u : subwords(w)) in = in || member(a, u);
        break;
      case WordOp::kDownClosure: in = has_superword_in(a, w); break;
      case WordOp::kUpKernel: in = !has_superword_outside(a, w); break;
      case WordOp::kDownKernel:
        in = true;
        for (const Word& u : subwords(w)) in = in && member(a, u);
        break;
    }
    if (in) out.insert(w);
  }
  return out;
}

}  // namespace wsmc::oracle
