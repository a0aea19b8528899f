#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "wsmc/alphabet.hh"

namespace wsmc {

using State = std::uint32_t;

/// Label of epsilon edges in an Nfa.
inline constexpr Symbol kEpsilon = ~Symbol{0};

/// Nondeterministic finite automaton with epsilon edges. States are dense
/// indices [0, num_states()).
class Nfa {
 public:
  struct Edge {
    Symbol symbol;
    State target;
    friend bool operator==(const Edge&, const Edge&) = default;
  };

  explicit Nfa(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  static Nfa empty_language(const Alphabet& alphabet);
  static Nfa epsilon(const Alphabet& alphabet);
  static Nfa universal(const Alphabet& alphabet);
  static Nfa any_symbol(const Alphabet& alphabet);
  static Nfa word(const Alphabet& alphabet, const Word& w);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return edges_.size(); }

  State add_state(bool initial = false, bool accepting = false);
  /// Adds `n` fresh states and returns the index of the first one.
  State add_states(std::size_t n);
  void add_edge(State from, Symbol symbol, State to);
  void add_epsilon(State from, State to) { add_edge(from, kEpsilon, to); }
  void set_initial(State s, bool value = true) { initial_.at(s) = value; }
  void set_accepting(State s, bool value = true) { accepting_.at(s) = value; }

  const std::vector<Edge>& edges(State s) const { return edges_.at(s); }
  bool is_initial(State s) const { return initial_.at(s); }
  bool is_accepting(State s) const { return accepting_.at(s); }
  bool has_epsilon() const;

 private:
  Alphabet alphabet_;
  std::vector<std::vector<Edge>> edges_;
  std::vector<bool> initial_;
  std::vector<bool> accepting_;
};

/// Complete deterministic automaton; the transition table has one entry per
/// (state, symbol).
class Dfa {
 public:
  Dfa(Alphabet alphabet, std::size_t num_states, State start = 0);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return accepting_.size(); }
  State start() const noexcept { return start_; }
  State next(State s, Symbol a) const { return delta_[s * width_ + a]; }
  bool is_accepting(State s) const { return accepting_[s] != 0; }

  void set_next(State s, Symbol a, State t) { delta_[s * width_ + a] = t; }
  void set_accepting(State s, bool value = true) { accepting_[s] = value ? 1 : 0; }
  void set_start(State s) { start_ = s; }

  bool accepts(const Word& w) const;
  Nfa to_nfa() const;

  friend bool operator==(const Dfa&, const Dfa&) = default;

 private:
  Alphabet alphabet_;
  std::size_t width_;
  std::vector<State> delta_;
  std::vector<std::uint8_t> accepting_;
  State start_;
};

/// Minimal complete DFA whose states are numbered in breadth-first discovery
/// order from the start state (symbols visited in alphabet order). Two values
/// are structurally equal iff they accept the same language.
class CanonicalDfa {
 public:
  const Dfa& dfa() const noexcept { return dfa_; }
  const Alphabet& alphabet() const noexcept { return dfa_.alphabet(); }
  std::size_t num_states() const noexcept { return dfa_.num_states(); }
  State next(State s, Symbol a) const { return dfa_.next(s, a); }
  bool is_accepting(State s) const { return dfa_.is_accepting(s); }
  bool accepts(const Word& w) const { return dfa_.accepts(w); }
  Nfa to_nfa() const { return dfa_.to_nfa(); }

  bool is_empty() const;
  bool is_universal() const;
  std::size_t hash() const noexcept;

  friend bool operator==(const CanonicalDfa&, const CanonicalDfa&) = default;

 private:
  friend CanonicalDfa minimize(const Dfa& dfa);
  explicit CanonicalDfa(Dfa dfa) : dfa_(std::move(dfa)) {}
  Dfa dfa_;
};

/// Subset construction; the result is complete (the empty subset becomes a
/// dead state when reachable).
Dfa determinize(const Nfa& nfa);

/// Moore partition refinement followed by canonical renumbering.
CanonicalDfa minimize(const Dfa& dfa);

CanonicalDfa canonicalize(const Nfa& nfa);

}  // namespace wsmc

template <>
struct std::hash<wsmc::CanonicalDfa> {
  std::size_t operator()(const wsmc::CanonicalDfa& d) const noexcept { return d.hash(); }
};
