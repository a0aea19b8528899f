#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wsmc/region.hh"
#include "wsmc/region_text.hh"

namespace wsmc {

enum class StepMode { kPerfect, kLossy };

struct Operation {
  enum class Kind { kInternal, kSend, kReceive };
  Kind kind = Kind::kInternal;
  std::size_t channel = 0;
  Symbol symbol = 0;
};

/// A transition rule source -[guard : op]-> target. An absent guard means
/// the rule is enabled everywhere at its source.
struct Rule {
  Location source = 0;
  Location target = 0;
  Operation op;
  std::optional<Region> guard;
};

/// A channel system with regular guards, optionally partitioned between
/// two players. Immutable after construction.
class GlcsModel {
 public:
  GlcsModel(SignaturePtr sig, std::vector<Rule> rules, NamedRegions named = {});

  const SignaturePtr& signature() const noexcept { return sig_; }
  const Signature& sig() const noexcept { return *sig_; }
  const std::vector<Rule>& rules() const noexcept { return rules_; }
  const NamedRegions& named_regions() const noexcept { return named_; }

  /// Configurations at locations owned by `owner`.
  Region owned_by(Owner owner) const;

  std::string describe(const Rule& rule) const;

 private:
  SignaturePtr sig_;
  std::vector<Rule> rules_;
  NamedRegions named_;
};

/// Structural assumptions that do not hold: deadlock freedom (every
/// location has a non-receiving rule whose guards together cover the
/// location), complete ownership in game mode, and strict alternation.
std::vector<std::string> validate(const GlcsModel& model);

/// Perfect-step predecessors of `r` through one rule, intersected with its guard.
Region pre_perf_rule(const GlcsModel& model, const Rule& rule, const Region& r);
/// Perfect-step successors of `r` through one rule (guard applied first).
Region post_perf_rule(const GlcsModel& model, const Rule& rule, const Region& r);

Region pre(const GlcsModel& model, const Region& r, StepMode mode);
/// Configurations all of whose successors lie in `r`: not pre(not r).
Region wpre(const GlcsModel& model, const Region& r, StepMode mode);
Region post(const GlcsModel& model, const Region& r, StepMode mode);

/// Perfect successor of one configuration through one rule, if enabled.
std::optional<Config> fire(const GlcsModel& model, const Rule& rule, const Config& config);
/// All successors of a configuration, sorted and without duplicates. In
/// lossy mode this includes every subword configuration of each perfect
/// successor.
std::vector<Config> step_configs(const GlcsModel& model, const Config& config, StepMode mode);

}  // namespace wsmc
