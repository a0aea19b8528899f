#include "wsmc/automaton.hh"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "wsmc/error.hh"

namespace wsmc {

// ---------------------------------------------------------------------------
// Nfa

Nfa Nfa::empty_language(const Alphabet& alphabet) {
  Nfa n(alphabet);
  n.add_state(true, false);
  return n;
}

Nfa Nfa::epsilon(const Alphabet& alphabet) {
  Nfa n(alphabet);
  n.add_state(true, true);
  return n;
}

Nfa Nfa::universal(const Alphabet& alphabet) {
  Nfa n(alphabet);
  State s = n.add_state(true, true);
  for (Symbol a = 0; a < alphabet.size(); ++a) n.add_edge(s, a, s);
  return n;
}

Nfa Nfa::any_symbol(const Alphabet& alphabet) {
  Nfa n(alphabet);
  State s = n.add_state(true, false);
  State t = n.add_state(false, true);
  for (Symbol a = 0; a < alphabet.size(); ++a) n.add_edge(s, a, t);
  return n;
}

Nfa Nfa::word(const Alphabet& alphabet, const Word& w) {
  Nfa n(alphabet);
  State cur = n.add_state(true, w.empty());
  for (std::size_t i = 0; i < w.size(); ++i) {
    State nxt = n.add_state(false, i + 1 == w.size());
    n.add_edge(cur, w[i], nxt);
    cur = nxt;
  }
  return n;
}

State Nfa::add_state(bool initial, bool accepting) {
  edges_.emplace_back();
  initial_.push_back(initial);
  accepting_.push_back(accepting);
  return static_cast<State>(edges_.size() - 1);
}

State Nfa::add_states(std::size_t n) {
  auto first = static_cast<State>(edges_.size());
  edges_.resize(edges_.size() + n);
  initial_.resize(initial_.size() + n, false);
  accepting_.resize(accepting_.size() + n, false);
  return first;
}

void Nfa::add_edge(State from, Symbol symbol, State to) {
  if (from >= num_states() || to >= num_states()) throw Error("edge endpoint out of range");
  if (symbol != kEpsilon && symbol >= alphabet_.size()) throw Error("edge symbol not in alphabet");
  auto& out = edges_[from];
  Edge e{symbol, to};
  if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
}

bool Nfa::has_epsilon() const {
  for (const auto& out : edges_)
    for (const auto& e : out)
      if (e.symbol == kEpsilon) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Dfa

Dfa::Dfa(Alphabet alphabet, std::size_t num_states, State start)
    : alphabet_(std::move(alphabet)),
      width_(alphabet_.size()),
      delta_(num_states * width_, 0),
      accepting_(num_states, 0),
      start_(start) {}

bool Dfa::accepts(const Word& w) const {
  State s = start_;
  for (Symbol a : w) {
    if (a >= width_) throw Error("word symbol not in alphabet");
    s = next(s, a);
  }
  return is_accepting(s);
}

Nfa Dfa::to_nfa() const {
  Nfa n(alphabet_);
  n.add_states(num_states());
  for (State s = 0; s < num_states(); ++s) {
    n.set_accepting(s, is_accepting(s));
    for (Symbol a = 0; a < width_; ++a) n.add_edge(s, a, next(s, a));
  }
  n.set_initial(start_);
  return n;
}

// ---------------------------------------------------------------------------
// CanonicalDfa

bool CanonicalDfa::is_empty() const {
  for (State s = 0; s < num_states(); ++s)
    if (is_accepting(s)) return false;
  return true;
}

bool CanonicalDfa::is_universal() const {
  // Minimal and reachable: universal iff no rejecting state exists.
  for (State s = 0; s < num_states(); ++s)
    if (!is_accepting(s)) return false;
  return true;
}

std::size_t CanonicalDfa::hash() const noexcept {
  std::size_t h = num_states() * 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  const auto k = alphabet().size();
  for (State s = 0; s < num_states(); ++s) {
    mix(is_accepting(s));
    for (Symbol a = 0; a < k; ++a) mix(next(s, a));
  }
  return h;
}

// ---------------------------------------------------------------------------
// Algorithms

namespace {

using StateSet = std::vector<State>;

struct StateSetHash {
  std::size_t operator()(const StateSet& v) const noexcept {
    std::size_t h = v.size();
    for (State s : v) h ^= s + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

void epsilon_close(const Nfa& nfa, StateSet& set, std::vector<char>& mark) {
  std::vector<State> stack(set.begin(), set.end());
  for (State s : set) mark[s] = 1;
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    for (const auto& e : nfa.edges(s)) {
      if (e.symbol == kEpsilon && !mark[e.target]) {
        mark[e.target] = 1;
        set.push_back(e.target);
        stack.push_back(e.target);
      }
    }
  }
  for (State s : set) mark[s] = 0;
  std::sort(set.begin(), set.end());
}

}  // namespace

Dfa determinize(const Nfa& nfa) {
  const auto k = nfa.alphabet().size();
  std::vector<char> mark(nfa.num_states(), 0);
  std::unordered_map<StateSet, State, StateSetHash> index;
  std::vector<StateSet> subsets;
  // Transitions are collected first because the final state count is unknown.
  std::vector<State> table;

  StateSet start;
  for (State s = 0; s < nfa.num_states(); ++s)
    if (nfa.is_initial(s)) start.push_back(s);
  epsilon_close(nfa, start, mark);
  index.emplace(start, 0);
  subsets.push_back(std::move(start));

  std::vector<StateSet> buckets(k);
  for (std::size_t cur = 0; cur < subsets.size(); ++cur) {
    for (auto& b : buckets) b.clear();
    for (State s : subsets[cur])
      for (const auto& e : nfa.edges(s))
        if (e.symbol != kEpsilon) buckets[e.symbol].push_back(e.target);
    for (Symbol a = 0; a < k; ++a) {
      StateSet next = buckets[a];
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      epsilon_close(nfa, next, mark);
      auto [it, inserted] = index.emplace(next, static_cast<State>(subsets.size()));
      if (inserted) subsets.push_back(std::move(next));
      table.push_back(it->second);
    }
  }

  Dfa dfa(nfa.alphabet(), subsets.size(), 0);
  for (State s = 0; s < subsets.size(); ++s) {
    for (Symbol a = 0; a < k; ++a) dfa.set_next(s, a, table[s * k + a]);
    bool acc = std::any_of(subsets[s].begin(), subsets[s].end(),
                           [&](State q) { return nfa.is_accepting(q); });
    dfa.set_accepting(s, acc);
  }
  return dfa;
}

CanonicalDfa minimize(const Dfa& dfa) {
  const auto k = dfa.alphabet().size();

  // Restrict to states reachable from the start.
  std::vector<State> reach_id(dfa.num_states(), ~State{0});
  std::vector<State> reachable{dfa.start()};
  reach_id[dfa.start()] = 0;
  for (std::size_t i = 0; i < reachable.size(); ++i) {
    for (Symbol a = 0; a < k; ++a) {
      State t = dfa.next(reachable[i], a);
      if (reach_id[t] == ~State{0}) {
        reach_id[t] = static_cast<State>(reachable.size());
        reachable.push_back(t);
      }
    }
  }
  const std::size_t n = reachable.size();

  // Moore refinement: class(s) is refined by the classes of its successors.
  std::vector<State> cls(n);
  bool has_acc = false, has_rej = false;
  for (std::size_t i = 0; i < n; ++i) {
    bool acc = dfa.is_accepting(reachable[i]);
    cls[i] = acc ? 1 : 0;
    (acc ? has_acc : has_rej) = true;
  }
  std::size_t num_classes = (has_acc && has_rej) ? 2 : 1;
  if (num_classes == 1) std::fill(cls.begin(), cls.end(), 0);

  std::vector<State> signature(k + 1);
  while (true) {
    std::map<std::vector<State>, State> ids;
    std::vector<State> next_cls(n);
    for (std::size_t i = 0; i < n; ++i) {
      signature[0] = cls[i];
      for (Symbol a = 0; a < k; ++a) signature[a + 1] = cls[reach_id[dfa.next(reachable[i], a)]];
      auto [it, _] = ids.emplace(signature, static_cast<State>(ids.size()));
      next_cls[i] = it->second;
    }
    bool stable = ids.size() == num_classes;
    cls = std::move(next_cls);
    num_classes = ids.size();
    if (stable) break;
  }

  // Representative per class, then BFS renumbering from the start class.
  std::vector<std::size_t> rep(num_classes, n);
  for (std::size_t i = 0; i < n; ++i)
    if (rep[cls[i]] == n) rep[cls[i]] = i;

  std::vector<State> order_id(num_classes, ~State{0});
  std::vector<State> order{cls[0]};
  order_id[cls[0]] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::size_t r = rep[order[i]];
    for (Symbol a = 0; a < k; ++a) {
      State c = cls[reach_id[dfa.next(reachable[r], a)]];
      if (order_id[c] == ~State{0}) {
        order_id[c] = static_cast<State>(order.size());
        order.push_back(c);
      }
    }
  }

  Dfa out(dfa.alphabet(), order.size(), 0);
  for (State s = 0; s < order.size(); ++s) {
    std::size_t r = rep[order[s]];
    out.set_accepting(s, dfa.is_accepting(reachable[r]));
    for (Symbol a = 0; a < k; ++a) out.set_next(s, a, order_id[cls[reach_id[dfa.next(reachable[r], a)]]]);
  }
  return CanonicalDfa(std::move(out));
}

CanonicalDfa canonicalize(const Nfa& nfa) { return minimize(determinize(nfa)); }

}  // namespace wsmc
