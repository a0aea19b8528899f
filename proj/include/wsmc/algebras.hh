#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "wsmc/automaton.hh"
#include "wsmc/glcs.hh"
#include "wsmc/region.hh"

namespace wsmc {

/// Languages over an alphabet ordered by the subword relation. Operators:
/// concat/2, star/1, reverse/1, shuffle/2, lres/2 (left residual), rres/2
/// (right residual), plus named constants.
class WordAlgebra {
 public:
  using Value = CanonicalDfa;
  using Element = Word;

  explicit WordAlgebra(Alphabet alphabet, std::map<std::string, CanonicalDfa, std::less<>> constants = {});

  const Alphabet& alphabet() const noexcept { return alphabet_; }

  Value empty() const;
  Value full() const;
  Value unite(const Value& a, const Value& b) const;
  Value intersect(const Value& a, const Value& b) const;
  Value complement(const Value& a) const;
  Value up(const Value& a) const;
  Value down(const Value& a) const;
  Value kup(const Value& a) const;
  Value kdown(const Value& a) const;
  Value apply(std::string_view name, std::span<const Value> args) const;
  std::optional<std::size_t> arity(std::string_view name) const;
  bool equal(const Value& a, const Value& b) const { return a == b; }
  bool subset(const Value& a, const Value& b) const;
  bool is_empty(const Value& a) const { return a.is_empty(); }
  bool is_universal(const Value& a) const { return a.is_universal(); }
  bool contains(const Value& a, const Word& w) const { return a.accepts(w); }
  std::size_t size(const Value& a) const { return a.num_states(); }

 private:
  Alphabet alphabet_;
  std::map<std::string, CanonicalDfa, std::less<>> constants_;
};

/// Regions of a channel system. Operators: pre, post, wpre (lossy steps),
/// prep, postp, wprep (perfect steps), confA, confB and the named regions
/// of the model plus any extra constants.
class ConfigAlgebra {
 public:
  using Value = Region;
  using Element = Config;

  explicit ConfigAlgebra(const GlcsModel& model, NamedRegions constants = {});

  const GlcsModel& model() const noexcept { return model_; }
  const NamedRegions& constants() const noexcept { return constants_; }

  Value empty() const;
  Value full() const;
  Value unite(const Value& a, const Value& b) const;
  Value intersect(const Value& a, const Value& b) const;
  Value complement(const Value& a) const;
  Value up(const Value& a) const;
  Value down(const Value& a) const;
  Value kup(const Value& a) const;
  Value kdown(const Value& a) const;
  Value apply(std::string_view name, std::span<const Value> args) const;
  std::optional<std::size_t> arity(std::string_view name) const;
  bool equal(const Value& a, const Value& b) const { return a == b; }
  bool subset(const Value& a, const Value& b) const;
  bool is_empty(const Value& a) const { return a.is_empty(); }
  bool is_universal(const Value& a) const { return a.is_universal(); }
  bool contains(const Value& a, const Config& c) const { return a.contains(c); }
  std::size_t size(const Value& a) const { return a.size(); }

 private:
  const Region* constant(std::string_view name) const;

  const GlcsModel& model_;
  NamedRegions constants_;
  Region conf_a_;
  Region conf_b_;
};

}  // namespace wsmc
