#include "wsmc/oracle/explicit.hh"

#include <algorithm>
#include <deque>

#include "wsmc/error.hh"

namespace wsmc::oracle {

namespace {

// ---------------------------------------------------------------------------
// Explicit steps, written independently of the symbolic step operators.

bool enabled(const Rule& rule, const Config& c) {
  if (c.location != rule.source) return false;
  if (rule.guard && !rule.guard->contains(c)) return false;
  if (rule.op.kind == Operation::Kind::kReceive) {
    const auto& w = c.contents[rule.op.channel];
    return !w.empty() && w.front() == rule.op.symbol;
  }
  return true;
}

Config apply(const Rule& rule, Config c) {
  c.location = rule.target;
  if (rule.op.kind == Operation::Kind::kSend) c.contents[rule.op.channel].push_back(rule.op.symbol);
  if (rule.op.kind == Operation::Kind::kReceive) {
    auto& w = c.contents[rule.op.channel];
    w.erase(w.begin());
  }
  return c;
}

/// Every word obtained from `w` by deleting letters, via bit masks.
std::vector<Word> lossy_versions(const Word& w) {
  std::set<Word> out;
  const std::size_t n = w.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Word u;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) u.push_back(w[i]);
    out.insert(u);
  }
  return {out.begin(), out.end()};
}

std::vector<Config> successors(const GlcsModel& model, const Config& c, bool lossy) {
  std::set<Config> out;
  for (const auto& rule : model.rules()) {
    if (!enabled(rule, c)) continue;
    Config next = apply(rule, c);
    if (!lossy) {
      out.insert(next);
      continue;
    }
    std::vector<Config> acc{Config{next.location, {}}};
    for (const auto& w : next.contents) {
      std::vector<Config> grown;
      for (const auto& base : acc)
        for (const auto& u : lossy_versions(w)) {
          auto d = base;
          d.contents.push_back(u);
          grown.push_back(std::move(d));
        }
      acc = std::move(grown);
    }
    out.insert(acc.begin(), acc.end());
  }
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Finite evaluation

class FiniteEvaluator {
 public:
  FiniteEvaluator(const GlcsModel& model, const NamedRegions& constants) : model_(model), constants_(constants) {
    for (Location l = 0; l < model.sig().num_locations(); ++l) all_.insert(l);
  }

  LocationSet eval(const Term& t, std::map<std::string, LocationSet>& env) {
    switch (t.kind()) {
      case TermKind::kEmpty: return {};
      case TermKind::kFull: return all_;
      case TermKind::kVar: {
        auto it = env.find(t.name());
        if (it == env.end()) throw UnknownVariable(t.name());
        return it->second;
      }
      case TermKind::kUnion: {
        auto a = eval(t.child(0), env);
        auto b = eval(t.child(1), env);
        a.insert(b.begin(), b.end());
        return a;
      }
      case TermKind::kIntersect: {
        auto a = eval(t.child(0), env);
        auto b = eval(t.child(1), env);
        LocationSet out;
        for (Location l : a)
          if (b.count(l)) out.insert(l);
        return out;
      }
      case TermKind::kComplement: {
        auto a = eval(t.child(), env);
        LocationSet out;
        for (Location l : all_)
          if (!a.count(l)) out.insert(l);
        return out;
      }
      case TermKind::kUp:
      case TermKind::kDown:
      case TermKind::kKUp:
      case TermKind::kKDown: return eval(t.child(), env);
      case TermKind::kOp: return op(t, env);
      case TermKind::kMu:
      case TermKind::kNu: {
        auto saved = env.find(t.name()) == env.end() ? std::optional<LocationSet>() : env[t.name()];
        LocationSet current = t.kind() == TermKind::kMu ? LocationSet{} : all_;
        for (;;) {
          env[t.name()] = current;
          auto next = eval(t.child(), env);
          if (next == current) break;
          current = std::move(next);
        }
        if (saved)
          env[t.name()] = *saved;
        else
          env.erase(t.name());
        return current;
      }
    }
    throw TermError("unknown term kind");
  }

 private:
  Config config(Location l) const { return Config{l, {}}; }

  LocationSet op(const Term& t, std::map<std::string, LocationSet>& env) {
    const auto& name = t.name();
    if (name == "confA" || name == "confB") {
      Owner o = name == "confA" ? Owner::kA : Owner::kB;
      LocationSet out;
      for (Location l : all_)
        if (model_.sig().owner(l) == o) out.insert(l);
      return out;
    }
    if (t.children().empty()) {
      const Region* r = nullptr;
      if (auto it = constants_.find(name); it != constants_.end()) r = &it->second;
      if (auto it = model_.named_regions().find(name); !r && it != model_.named_regions().end()) r = &it->second;
      if (!r) throw TermError("unknown constant " + name);
      return locations_of(*r);
    }
    auto arg = eval(t.child(), env);
    LocationSet out;
    if (name == "pre" || name == "prep") {
      for (const auto& rule : model_.rules())
        if (arg.count(rule.target) && enabled(rule, config(rule.source))) out.insert(rule.source);
    } else if (name == "post" || name == "postp") {
      for (const auto& rule : model_.rules())
        if (arg.count(rule.source) && enabled(rule, config(rule.source))) out.insert(rule.target);
    } else if (name == "wpre" || name == "wprep") {
      for (Location l : all_) {
        bool all = true;
        for (const auto& rule : model_.rules())
          if (rule.source == l && enabled(rule, config(l)) && !arg.count(rule.target)) all = false;
        if (all) out.insert(l);
      }
    } else {
      throw TermError("unknown operator " + name);
    }
    return out;
  }

  const GlcsModel& model_;
  const NamedRegions& constants_;
  LocationSet all_;
};

// ---------------------------------------------------------------------------
// Game search

struct GameSearch {
  const GlcsModel& model;
  const ReachGoal& goal;
  std::set<Config> path;

  GameResult reacher_wins() const { return goal.player == 'A' ? GameResult::kWinA : GameResult::kWinB; }
  GameResult opponent_wins() const { return goal.player == 'A' ? GameResult::kWinB : GameResult::kWinA; }

  GameResult solve(const Config& c, std::size_t depth) {
    if (goal.target.contains(c)) return reacher_wins();
    if (path.count(c)) return opponent_wins();
    if (depth == 0) return GameResult::kUnknown;
    const Owner owner = model.sig().owner(c.location);
    const char mover = owner == Owner::kA ? 'A' : 'B';
    const bool lossy = !(goal.asymmetric && mover == 'A');
    auto next = successors(model, c, lossy);
    const bool reacher_moves = mover == goal.player;
    if (next.empty()) return reacher_moves ? opponent_wins() : reacher_wins();

    // The mover wins if one move wins for it; loses if every move loses.
    const GameResult good = reacher_moves ? reacher_wins() : opponent_wins();
    const GameResult bad = reacher_moves ? opponent_wins() : reacher_wins();
    path.insert(c);
    bool all_bad = true;
    GameResult result = GameResult::kUnknown;
    for (const auto& n : next) {
      auto r = solve(n, depth - 1);
      if (r == good) {
        result = good;
        break;
      }
      if (r != bad) all_bad = false;
    }
    path.erase(c);
    if (result == good) return good;
    return all_bad ? bad : GameResult::kUnknown;
  }
};

/// Locations where `player` forces the next step into `into`.
LocationSet controllable_pre(const GlcsModel& model, char player, const LocationSet& into) {
  LocationSet out;
  for (Location l = 0; l < model.sig().num_locations(); ++l) {
    const Owner owner = model.sig().owner(l);
    const bool mine = owner == Owner::kNone || (owner == Owner::kA) == (player == 'A');
    bool some = false, all = true;
    for (const auto& rule : model.rules()) {
      if (!enabled(rule, Config{l, {}})) continue;
      if (into.count(rule.target))
        some = true;
      else
        all = false;
    }
    if (mine ? some : all) out.insert(l);
  }
  return out;
}

}  // namespace

LocationSet attractor(const GlcsModel& model, char player, const LocationSet& target) {
  if (model.sig().num_channels() != 0) throw ModelError("the finite oracle needs a model without channels");
  LocationSet attr = target;
  for (;;) {
    auto next = controllable_pre(model, player, attr);
    next.insert(target.begin(), target.end());
    if (next == attr) return attr;
    attr = std::move(next);
  }
}

LocationSet buchi(const GlcsModel& model, char player, const LocationSet& target) {
  LocationSet win;
  for (Location l = 0; l < model.sig().num_locations(); ++l) win.insert(l);
  // Shrink to the set from which the player can force a visit to a target
  // location that again forces a step back into the set.
  for (;;) {
    LocationSet recurrent;
    for (Location l : controllable_pre(model, player, win))
      if (target.count(l)) recurrent.insert(l);
    auto next = attractor(model, player, recurrent);
    if (next == win) return win;
    win = std::move(next);
  }
}

LocationSet locations_of(const Region& r) {
  LocationSet out;
  if (r.signature()->num_channels() != 0) throw ModelError("explicit location sets need a model without channels");
  for (Location l = 0; l < r.signature()->num_locations(); ++l)
    if (r.contains(Config{l, {}})) out.insert(l);
  return out;
}

LocationSet finite_mc(const GlcsModel& model, const Term& t, const NamedRegions& constants,
                      const std::map<std::string, LocationSet>& env) {
  if (model.sig().num_channels() != 0) throw ModelError("the finite oracle needs a model without channels");
  auto scope = env;
  return FiniteEvaluator(model, constants).eval(t, scope);
}

Reach bounded_reach(const GlcsModel& model, const Config& start, const Region& target, std::size_t depth) {
  std::set<Config> seen{start};
  std::deque<std::pair<Config, std::size_t>> queue{{start, 0}};
  while (!queue.empty()) {
    auto [c, d] = queue.front();
    queue.pop_front();
    if (target.contains(c)) return Reach::kReachable;
    if (d == depth) continue;
    for (auto& n : successors(model, c, true))
      if (seen.insert(n).second) queue.emplace_back(std::move(n), d + 1);
  }
  return Reach::kUnknown;
}

GameResult bounded_game(const GlcsModel& model, const Config& start, const ReachGoal& goal, std::size_t depth) {
  if (goal.player != 'A' && goal.player != 'B') throw Error("player must be A or B");
  GameSearch search{model, goal, {}};
  return search.solve(start, depth);
}

}  // namespace wsmc::oracle
