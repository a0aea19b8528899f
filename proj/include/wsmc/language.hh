#pragma once

// Regular-language operations over a fixed alphabet. Every operation is pure;
// binary operations throw AlphabetMismatch when operand alphabets differ.
//
// The Nfa overloads build automata directly and never minimize. The
// CanonicalDfa overloads return canonical results, so fixpoint loops can
// compare successive values structurally.

#include "wsmc/automaton.hh"

namespace wsmc {

// Boolean operations.
Nfa unite(const Nfa& a, const Nfa& b);
Nfa intersect(const Nfa& a, const Nfa& b);
Nfa complement(const Nfa& a);
Nfa difference(const Nfa& a, const Nfa& b);

// Rational operations.
Nfa concat(const Nfa& a, const Nfa& b);
Nfa star(const Nfa& a);
Nfa reverse(const Nfa& a);
/// All interleavings of one word of `a` with one word of `b`.
Nfa shuffle(const Nfa& a, const Nfa& b);

/// {v | exists u in a, uv in b}
Nfa left_residual(const Nfa& a, const Nfa& b);
/// {u | exists v in b, uv in a}
Nfa right_residual(const Nfa& a, const Nfa& b);

// Closures and kernels for the subword ordering.
Nfa up_closure(const Nfa& a);
Nfa down_closure(const Nfa& a);
Nfa up_kernel(const Nfa& a);
Nfa down_kernel(const Nfa& a);

// Decisions.
bool is_empty(const Nfa& a);
bool is_universal(const Nfa& a);
bool accepts(const Nfa& a, const Word& w);
bool equivalent(const Nfa& a, const Nfa& b);
bool is_subset(const Nfa& a, const Nfa& b);

/// Same automaton with epsilon edges eliminated.
Nfa remove_epsilon(const Nfa& a);

// Canonical overloads.
CanonicalDfa unite(const CanonicalDfa& a, const CanonicalDfa& b);
CanonicalDfa intersect(const CanonicalDfa& a, const CanonicalDfa& b);
CanonicalDfa complement(const CanonicalDfa& a);
CanonicalDfa difference(const CanonicalDfa& a, const CanonicalDfa& b);
CanonicalDfa concat(const CanonicalDfa& a, const CanonicalDfa& b);
CanonicalDfa star(const CanonicalDfa& a);
CanonicalDfa reverse(const CanonicalDfa& a);
CanonicalDfa shuffle(const CanonicalDfa& a, const CanonicalDfa& b);
CanonicalDfa left_residual(const CanonicalDfa& a, const CanonicalDfa& b);
CanonicalDfa right_residual(const CanonicalDfa& a, const CanonicalDfa& b);
CanonicalDfa up_closure(const CanonicalDfa& a);
CanonicalDfa down_closure(const CanonicalDfa& a);
CanonicalDfa up_kernel(const CanonicalDfa& a);
CanonicalDfa down_kernel(const CanonicalDfa& a);
bool is_subset(const CanonicalDfa& a, const CanonicalDfa& b);

/// Canonical automata for the basic languages.
CanonicalDfa empty_dfa(const Alphabet& alphabet);
CanonicalDfa universal_dfa(const Alphabet& alphabet);
CanonicalDfa word_dfa(const Alphabet& alphabet, const Word& w);

}  // namespace wsmc
