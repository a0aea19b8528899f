#pragma once

#include <filesystem>
#include <string_view>

#include "wsmc/glcs.hh"

namespace wsmc {

/// Parses a model description. Errors are SyntaxError with the 1-based
/// line number of the offending declaration.
///
///   alphabet: a b
///   channels: c d
///   locations: p[A] q[B]
///   region GOAL = (q; a*; .*)
///   rule p -> q : c!a
///   rule q -> p : c?a guard (q; .*a.*; .*)
GlcsModel parse_model(std::string_view text);
GlcsModel load_model(const std::filesystem::path& path);

/// Names that cannot be used for named regions because the formula
/// language reserves them.
bool is_reserved_name(std::string_view name);

}  // namespace wsmc
