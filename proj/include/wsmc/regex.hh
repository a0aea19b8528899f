#pragma once

#include <string>
#include <string_view>

#include "wsmc/automaton.hh"

namespace wsmc {

/// Compiles a regular expression over `alphabet`.
///
/// Syntax: `e|f` alternation, juxtaposition for concatenation, postfix `*`,
/// `+`, `?`, grouping `( )`, `.` any symbol, `()` the empty word, `{}` the
/// empty language, prefix `~e` complement. Symbols are identifiers declared
/// in the alphabet; over a single-char alphabet an identifier such as `ab`
/// that is not itself a symbol reads as the concatenation of its characters.
/// Whitespace only separates tokens.
///
/// Throws SyntaxError (with column) on malformed input or unknown symbols.
Nfa compile_regex(std::string_view pattern, const Alphabet& alphabet);

/// Renders a regular expression for the language of `dfa` by state
/// elimination in increasing state order. The output is accepted by
/// compile_regex and is a deterministic function of the language.
std::string to_regex(const CanonicalDfa& dfa);

}  // namespace wsmc
