#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wsmc {

enum class TermKind {
  kEmpty,
  kFull,
  kVar,
  kOp,
  kUnion,
  kIntersect,
  kComplement,
  kUp,
  kDown,
  kKUp,
  kKDown,
  kMu,
  kNu,
};

/// Immutable fixpoint term. Copies share nodes; node identity is stable and
/// serves as a memoization key during evaluation.
class Term {
 public:
  static Term empty();
  static Term full();
  static Term var(std::string name);
  /// Operator application; nullary operators name region constants.
  static Term op(std::string name, std::vector<Term> args = {});
  static Term unite(Term a, Term b);
  static Term intersect(Term a, Term b);
  static Term complement(Term a);
  static Term up(Term a);
  static Term down(Term a);
  static Term kup(Term a);
  static Term kdown(Term a);
  static Term mu(std::string var, Term body);
  static Term nu(std::string var, Term body);

  TermKind kind() const noexcept { return node_->kind; }
  /// Variable, operator or binder name.
  const std::string& name() const noexcept { return node_->name; }
  const std::vector<Term>& children() const noexcept { return node_->children; }
  const Term& child(std::size_t i = 0) const { return node_->children.at(i); }
  bool is_binder() const noexcept { return kind() == TermKind::kMu || kind() == TermKind::kNu; }
  /// Free variables, sorted.
  const std::vector<std::string>& free_variables() const noexcept { return node_->free; }
  const void* id() const noexcept { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    TermKind kind;
    std::string name;
    std::vector<Term> children;
    std::vector<std::string> free;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Term make(TermKind kind, std::string name, std::vector<Term> children);

  std::shared_ptr<const Node> node_;
};

/// Operators available to the parser: name -> arity.
using ArityLookup = std::function<std::optional<std::size_t>(std::string_view)>;

/// Parses a formula. Binders are renamed apart so that no name is bound
/// twice or occurs both bound and free; every bound variable must occur
/// under an even number of complements. Identifiers that are neither bound
/// nor known operators are free variables.
Term parse_term(std::string_view text, const ArityLookup& arity);

std::string to_string(const Term& t);

struct GuardViolation {
  std::string binder;
  bool greatest = false;
  /// Child indices from the binder body down to the occurrence.
  std::vector<std::size_t> path;
};

/// Every bound variable of a least fixpoint must occur under an effective
/// upward guard (up or kup under an even number of complements, down or
/// kdown under an odd number) inside its binder; greatest fixpoints dually.
std::vector<GuardViolation> check_guarded(const Term& t);
bool is_guarded(const Term& t);
std::string describe(const GuardViolation& v);

/// Replaces the free occurrences of `var` in `t` by `value`, renaming
/// binders of `t` that would capture free variables of `value`.
Term substitute(const Term& t, std::string_view var, const Term& value);

/// Replaces binder `name` (mu X. phi) by mu X. phi[phi/X]. Binders inside
/// the copied body receive fresh names. Throws TermError for an unknown binder.
Term unfold(const Term& t, std::string_view binder);

/// Names of all binders in `t`, outermost first.
std::vector<std::string> binders(const Term& t);

}  // namespace wsmc
