#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wsmc/glcs.hh"
#include "wsmc/term.hh"

namespace wsmc {

enum class Player { kA, kB };

Player opponent(Player p);
char player_name(Player p);

// Terms over the configuration algebra. Region arguments are terms, usually
// nullary operators naming regions.

/// mu X. V | pre(up(X))
Term compile_pre_star(const Term& v);
/// nu X. V2 & (wpre(kdown(X)) | V1): all paths satisfy V1 release V2.
Term compile_forall_release(const Term& v1, const Term& v2);

/// Winning region of `p` for reaching V, in the guarded form obtained by
/// one unfolding and the alternation of turns.
Term compile_reach_game(Player p, const Term& v);
/// The same goal before the rewrite: mu X. V | (confP & pre(X)) | (confO & wpre(X)).
/// Not guarded; used to cross-check the rewrite.
Term compile_reach_game_unrewritten(Player p, const Term& v);
Term compile_invariant_game(Player p, const Term& v);
Term compile_buchi_game(Player p, const Term& v);
Term compile_persistence_game(Player p, const Term& v);

/// Asymmetric games, where only B loses messages. Only reach for B and
/// invariant for A are computable; the other two throw NonEffectiveQuery.
Term compile_asym_reach(Player p, const Term& v);
Term compile_asym_invariant(Player p, const Term& v);

/// Qualitative goals under probabilistic message losses.
Term compile_prob_reach_sure(Player p, const Term& v);
Term compile_prob_invariant_sure(Player p, const Term& v);
Term compile_prob_reach_positive(Player p, const Term& v);
Term compile_prob_invariant_positive(Player p, const Term& v);

/// Refusals for goals that cannot be computed; always throw NonEffectiveQuery.
[[noreturn]] void refuse_inevitability();
[[noreturn]] void refuse_recurrence();
[[noreturn]] void refuse_asymmetric_reach(Player p);

/// Parses and compiles a CTL formula over named regions:
///   f ::= f | f  |  f & f  |  !f  |  EX f | AX f | EF f | AG f
///       | E[f U g] | A[f R g] | true | false | NAME | (f)
/// AF, A[f U g] and EGF are refused as non-effective; EG and E[f R g] lie
/// outside the fragment and raise OutsideFragment.
Term compile_ctl(std::string_view formula, const ArityLookup& atoms);

/// Throws ModelError unless the model validates and, for games, is in game mode.
void require_valid(const GlcsModel& model, bool game);

/// A compiled property: the term plus the region constants it names.
struct Query {
  Term term;
  NamedRegions constants;
};

struct PropertyArgs {
  std::optional<std::string> target;
  std::optional<std::string> cond;
  std::optional<Player> player;
  std::optional<std::string> formula;
};

/// Property names understood by compile_property.
const std::vector<std::string>& property_names();

/// Compiles a named property against a model. Region arguments are region
/// expressions; a bare region name is referenced directly.
Query compile_property(std::string_view name, const GlcsModel& model, const PropertyArgs& args);

}  // namespace wsmc
