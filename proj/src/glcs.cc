#include "wsmc/glcs.hh"

#include <algorithm>
#include <set>

#include "wsmc/error.hh"
#include "wsmc/language.hh"

namespace wsmc {

namespace {

void check_signature(const GlcsModel& model, const Region& r) {
  if (r.signature() != model.signature() && !(*r.signature() == model.sig())) throw SignatureMismatch();
}

Region guard_of(const GlcsModel& model, const Rule& rule) {
  std::vector<Location> at{rule.source};
  auto source = Region::at(model.signature(), at);
  return rule.guard ? intersect(*rule.guard, source) : source;
}

/// All subwords of w, including w and the empty word.
std::set<Word> subwords(const Word& w) {
  std::set<Word> out{Word{}};
  for (Symbol a : w) {
    std::set<Word> next = out;
    for (const auto& u : out) {
      auto v = u;
      v.push_back(a);
      next.insert(std::move(v));
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

GlcsModel::GlcsModel(SignaturePtr sig, std::vector<Rule> rules, NamedRegions named)
    : sig_(std::move(sig)), rules_(std::move(rules)), named_(std::move(named)) {
  for (const auto& r : rules_) {
    if (r.source >= sig_->num_locations() || r.target >= sig_->num_locations())
      throw ModelError("rule endpoint is not a declared location");
    if (r.op.kind != Operation::Kind::kInternal) {
      if (r.op.channel >= sig_->num_channels()) throw ModelError("rule uses an undeclared channel");
      if (r.op.symbol >= sig_->alphabet().size()) throw ModelError("rule uses a symbol outside the alphabet");
    }
    if (r.guard) check_signature(*this, *r.guard);
  }
  for (const auto& [name, region] : named_) check_signature(*this, region);
}

Region GlcsModel::owned_by(Owner owner) const {
  std::vector<Location> locs;
  for (Location l = 0; l < sig_->num_locations(); ++l)
    if (sig_->owner(l) == owner) locs.push_back(l);
  return Region::at(sig_, locs);
}

std::string GlcsModel::describe(const Rule& rule) const {
  std::string out = sig_->location_name(rule.source) + " -> " + sig_->location_name(rule.target) + " : ";
  switch (rule.op.kind) {
    case Operation::Kind::kInternal:
      out += "nop";
      break;
    case Operation::Kind::kSend:
      out += sig_->channels()[rule.op.channel] + "!" + sig_->alphabet().name(rule.op.symbol);
      break;
    case Operation::Kind::kReceive:
      out += sig_->channels()[rule.op.channel] + "?" + sig_->alphabet().name(rule.op.symbol);
      break;
  }
  return out;
}

std::vector<std::string> validate(const GlcsModel& model) {
  const auto& sig = model.sig();
  std::vector<std::string> report;
  for (Location l = 0; l < sig.num_locations(); ++l) {
    auto covered = Region::empty(model.signature());
    bool any = false;
    for (const auto& rule : model.rules()) {
      if (rule.source != l || rule.op.kind == Operation::Kind::kReceive) continue;
      any = true;
      covered = unite(covered, guard_of(model, rule));
    }
    std::vector<Location> at{l};
    if (!any)
      report.push_back("deadlock: location " + sig.location_name(l) + " has no non-receiving rule");
    else if (!is_subset(Region::at(model.signature(), at), covered))
      report.push_back("deadlock: guards of the non-receiving rules at " + sig.location_name(l) +
                       " do not cover every configuration");
  }
  if (sig.game_mode()) {
    for (Location l = 0; l < sig.num_locations(); ++l)
      if (sig.owner(l) == Owner::kNone)
        report.push_back("ownership: location " + sig.location_name(l) + " has no owner in a game model");
    for (const auto& rule : model.rules()) {
      auto from = sig.owner(rule.source);
      auto to = sig.owner(rule.target);
      if (from == Owner::kNone || to == Owner::kNone) continue;
      if (from == to) report.push_back("alternation: rule " + model.describe(rule) + " stays with one player");
    }
  }
  return report;
}

Region pre_perf_rule(const GlcsModel& model, const Rule& rule, const Region& r) {
  check_signature(model, r);
  const auto& sigma = model.sig().alphabet();
  std::vector<Product> out;
  for (const auto& p : r.summands()) {
    if (p.location != rule.target) continue;
    Product q{rule.source, p.channels};
    if (rule.op.kind != Operation::Kind::kInternal) {
      auto& lang = q.channels[rule.op.channel];
      auto m = word_dfa(sigma, Word{rule.op.symbol});
      lang = rule.op.kind == Operation::Kind::kReceive ? concat(m, lang) : right_residual(lang, m);
    }
    out.push_back(std::move(q));
  }
  return intersect(Region::from_products(model.signature(), out), guard_of(model, rule));
}

Region post_perf_rule(const GlcsModel& model, const Rule& rule, const Region& r) {
  check_signature(model, r);
  const auto& sigma = model.sig().alphabet();
  auto enabled = intersect(r, guard_of(model, rule));
  std::vector<Product> out;
  for (const auto& p : enabled.summands()) {
    Product q{rule.target, p.channels};
    if (rule.op.kind != Operation::Kind::kInternal) {
      auto& lang = q.channels[rule.op.channel];
      auto m = word_dfa(sigma, Word{rule.op.symbol});
      lang = rule.op.kind == Operation::Kind::kSend ? concat(lang, m) : left_residual(m, lang);
    }
    out.push_back(std::move(q));
  }
  return Region::from_products(model.signature(), out);
}

Region pre(const GlcsModel& model, const Region& r, StepMode mode) {
  const Region target = mode == StepMode::kLossy ? up_closure(r) : r;
  auto acc = Region::empty(model.signature());
  for (const auto& rule : model.rules()) acc = unite(acc, pre_perf_rule(model, rule, target));
  return acc;
}

Region wpre(const GlcsModel& model, const Region& r, StepMode mode) {
  return complement(pre(model, complement(r), mode));
}

Region post(const GlcsModel& model, const Region& r, StepMode mode) {
  auto acc = Region::empty(model.signature());
  for (const auto& rule : model.rules()) acc = unite(acc, post_perf_rule(model, rule, r));
  return mode == StepMode::kLossy ? down_closure(acc) : acc;
}

std::optional<Config> fire(const GlcsModel& model, const Rule& rule, const Config& config) {
  if (config.location != rule.source) return std::nullopt;
  if (rule.guard && !rule.guard->contains(config)) return std::nullopt;
  Config next{rule.target, config.contents};
  if (rule.op.kind == Operation::Kind::kSend) {
    next.contents[rule.op.channel].push_back(rule.op.symbol);
  } else if (rule.op.kind == Operation::Kind::kReceive) {
    auto& w = next.contents[rule.op.channel];
    if (w.empty() || w.front() != rule.op.symbol) return std::nullopt;
    w.erase(w.begin());
  }
  (void)model;
  return next;
}

std::vector<Config> step_configs(const GlcsModel& model, const Config& config, StepMode mode) {
  std::set<Config> out;
  for (const auto& rule : model.rules()) {
    auto next = fire(model, rule, config);
    if (!next) continue;
    if (mode == StepMode::kPerfect) {
      out.insert(*next);
      continue;
    }
    std::vector<Config> partial{Config{next->location, {}}};
    for (const auto& w : next->contents) {
      std::vector<Config> grown;
      for (const auto& u : subwords(w))
        for (const auto& c : partial) {
          auto d = c;
          d.contents.push_back(u);
          grown.push_back(std::move(d));
        }
      partial = std::move(grown);
    }
    out.insert(partial.begin(), partial.end());
  }
  return {out.begin(), out.end()};
}

}  // namespace wsmc
