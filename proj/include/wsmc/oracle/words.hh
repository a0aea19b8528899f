#pragma once

// Brute-force word-level reference semantics. These functions read automata
// only through their public structure (states, edges, flags) and decide every
// operator from its set-theoretic definition, so they can check the automata
// constructions without sharing code with them.

#include <set>
#include <span>

#include "wsmc/automaton.hh"

namespace wsmc::oracle {

enum class WordOp {
  kLanguage,  // the (single) input language itself
  kUnion,
  kIntersection,
  kComplement,
  kDifference,
  kConcat,
  kStar,
  kReverse,
  kShuffle,
  kLeftResidual,
  kRightResidual,
  kUpClosure,
  kDownClosure,
  kUpKernel,
  kDownKernel,
};

inline constexpr std::size_t kMaxBruteLength = 8;

/// All words of length <= max_len over `alphabet`, shortest first.
std::vector<Word> all_words(const Alphabet& alphabet, std::size_t max_len);

/// Naive membership by subset simulation.
bool member(const Nfa& nfa, const Word& w);

/// u is a scattered subsequence of v.
bool is_subword(const Word& u, const Word& v);

/// The words of length <= max_len in op(inputs). Exact on that range: the
/// closure and residual cases search for unbounded witnesses rather than
/// truncating them. Throws wsmc::Error when max_len > kMaxBruteLength or the
/// input count does not match the operator.
std::set<Word> brute_words(WordOp op, std::span<const Nfa> inputs, std::size_t max_len);

}  // namespace wsmc::oracle
