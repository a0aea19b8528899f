#pragma once

#include <map>
#include <string>
#include <string_view>

#include "wsmc/region.hh"

namespace wsmc {

using NamedRegions = std::map<std::string, Region, std::less<>>;

/// Parses a region expression:
///
///     region ::= "{}" | "all" | term ("+" term)*
///     term   ::= "(" LOC (";" regex)^k ")" | NAME
///
/// with one regex per channel in declaration order (k = channel count) and
/// NAME a key of `named`. Throws SyntaxError with a column on failure.
Region parse_region(std::string_view text, const SignaturePtr& sig, const NamedRegions& named = {});

/// Renders a region in the syntax accepted by parse_region: "{}" for the
/// empty region, "all" for the universal one, otherwise the normalized
/// summands in order with one regex per channel.
std::string format_region(const Region& region);

/// Parses "loc : w1, w2, ..." (one word per channel; the colon part may be
/// omitted without channels).
Config parse_config(std::string_view text, const Signature& sig);
std::string format_config(const Config& config, const Signature& sig);

}  // namespace wsmc
