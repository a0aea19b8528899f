#pragma once

// Brute-force reference procedures on explicit configurations. They share
// nothing with the symbolic engine beyond region membership tests for
// guards and targets.

#include <map>
#include <set>
#include <string>

#include "wsmc/glcs.hh"
#include "wsmc/term.hh"

namespace wsmc::oracle {

using LocationSet = std::set<Location>;

/// Knaster-Tarski evaluation of any term (guarded or not) on a model
/// without channels, where configurations are locations and the closure
/// and kernel operators are identities. Operators: pre, prep, wpre, wprep,
/// post, postp, confA, confB and the named regions of `model` and `constants`.
LocationSet finite_mc(const GlcsModel& model, const Term& t, const NamedRegions& constants = {},
                      const std::map<std::string, LocationSet>& env = {});

/// Classical solvers on a model without channels, computed by explicit loops
/// rather than from terms. `player` is 'A' or 'B'; locations without an owner
/// count as the player's own. A location whose owner is the opponent and that
/// has no enabled rule is attracted vacuously.
LocationSet attractor(const GlcsModel& model, char player, const LocationSet& target);
/// Locations from which `player` visits `target` infinitely often.
LocationSet buchi(const GlcsModel& model, char player, const LocationSet& target);

/// Locations of a region on a model without channels.
LocationSet locations_of(const Region& r);

enum class Reach { kReachable, kUnknown };

/// Breadth-first search over lossy steps from `start`, up to `depth` steps.
Reach bounded_reach(const GlcsModel& model, const Config& start, const Region& target, std::size_t depth);

enum class GameResult { kWinA, kWinB, kUnknown };

struct ReachGoal {
  char player = 'A';  // 'A' or 'B'
  Region target;
  /// Only B may lose messages; A's moves are perfect.
  bool asymmetric = false;
};

/// Minimax over the depth-bounded game tree for a reachability goal. The
/// mover is the owner of the current location. A repeated configuration on
/// the current path ends the play without reaching the target. A mover
/// without moves loses if it is the reaching player and wins otherwise.
GameResult bounded_game(const GlcsModel& model, const Config& start, const ReachGoal& goal, std::size_t depth);

}  // namespace wsmc::oracle
