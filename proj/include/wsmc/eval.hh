#pragma once

#include <chrono>
#include <concepts>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wsmc/error.hh"
#include "wsmc/term.hh"

namespace wsmc {

/// An effective region algebra: boolean operations, the four closure and
/// kernel operators, named monotone operators, and decidable comparisons.
template <typename A>
concept RegionAlgebra = requires(const A& a, const typename A::Value& v, std::span<const typename A::Value> args,
                                 std::string_view name) {
  { a.empty() } -> std::same_as<typename A::Value>;
  { a.full() } -> std::same_as<typename A::Value>;
  { a.unite(v, v) } -> std::same_as<typename A::Value>;
  { a.intersect(v, v) } -> std::same_as<typename A::Value>;
  { a.complement(v) } -> std::same_as<typename A::Value>;
  { a.up(v) } -> std::same_as<typename A::Value>;
  { a.down(v) } -> std::same_as<typename A::Value>;
  { a.kup(v) } -> std::same_as<typename A::Value>;
  { a.kdown(v) } -> std::same_as<typename A::Value>;
  { a.apply(name, args) } -> std::same_as<typename A::Value>;
  { a.arity(name) } -> std::same_as<std::optional<std::size_t>>;
  { a.equal(v, v) } -> std::same_as<bool>;
  { a.subset(v, v) } -> std::same_as<bool>;
  { a.is_empty(v) } -> std::same_as<bool>;
  { a.is_universal(v) } -> std::same_as<bool>;
  { a.size(v) } -> std::same_as<std::size_t>;
};

template <typename V>
using Env = std::map<std::string, V, std::less<>>;

struct BinderStats {
  std::string binder;
  bool greatest = false;
  /// Number of times the fixpoint was (re)computed.
  std::size_t runs = 0;
  /// Body evaluations summed over all runs.
  std::size_t iterations = 0;
  /// Longest approximant chain of a single run.
  std::size_t longest_run = 0;
};

struct EvalStats {
  std::vector<BinderStats> binders;
  std::size_t largest_value = 0;
  std::size_t cache_hits = 0;
  double seconds = 0;
};

class UnguardedTerm : public TermError {
 public:
  using TermError::TermError;
};

class IterationLimit : public TermError {
 public:
  IterationLimit(const std::string& binder, std::size_t cap, EvalStats stats)
      : TermError("binder " + binder + " did not stabilize within " + std::to_string(cap) + " iterations"),
        stats_(std::move(stats)) {}
  const EvalStats& stats() const noexcept { return stats_; }

 private:
  EvalStats stats_;
};

template <typename V>
struct EvalLimits {
  /// Evaluate unguarded terms without a cap; only sensible on finite lattices.
  bool allow_unguarded = false;
  /// Per-run cap on approximants; also permits unguarded terms.
  std::optional<std::size_t> max_iterations;
  /// Assert that approximant chains are monotone.
  bool check_monotone = false;
  /// Called with each binder, the environment of its run and the fixpoint reached.
  std::function<void(const Term& binder, const Env<V>& env, const V& value)> on_fixpoint;
};

/// Approximant-iteration evaluator. Each binder iterates from the bottom
/// (or top) element until two successive approximants are equal. Subterm
/// values are cached together with the values of their free variables.
template <RegionAlgebra Algebra>
class Evaluator {
 public:
  using Value = typename Algebra::Value;

  explicit Evaluator(const Algebra& algebra, EvalLimits<Value> limits = {})
      : algebra_(algebra), limits_(std::move(limits)) {}

  Value evaluate(const Term& t, const Env<Value>& env = {}) {
    if (!limits_.allow_unguarded && !limits_.max_iterations) {
      auto violations = check_guarded(t);
      if (!violations.empty()) throw UnguardedTerm(describe(violations.front()));
    }
    auto start = std::chrono::steady_clock::now();
    Env<Value> scope = env;
    auto v = eval(t, scope);
    stats_.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return v;
  }

  const EvalStats& stats() const noexcept { return stats_; }

 private:
  struct CacheEntry {
    std::vector<Value> inputs;
    Value value;
  };

  Value note(Value v) {
    stats_.largest_value = std::max(stats_.largest_value, algebra_.size(v));
    return v;
  }

  Value eval(const Term& t, Env<Value>& env) {
    const auto& fv = t.free_variables();
    std::vector<Value> inputs;
    inputs.reserve(fv.size());
    for (const auto& x : fv) {
      auto it = env.find(x);
      if (it == env.end()) throw UnknownVariable(x);
      inputs.push_back(it->second);
    }
    if (t.kind() != TermKind::kVar) {
      auto hit = cache_.find(t.id());
      if (hit != cache_.end() && same(hit->second.inputs, inputs)) {
        ++stats_.cache_hits;
        return hit->second.value;
      }
    }
    Value v = compute(t, env);
    if (t.kind() != TermKind::kVar) {
      auto [it, inserted] = cache_.try_emplace(t.id(), CacheEntry{inputs, v});
      if (!inserted) it->second = CacheEntry{std::move(inputs), v};
      keep_alive_.try_emplace(t.id(), t);
    }
    return v;
  }

  bool same(const std::vector<Value>& a, const std::vector<Value>& b) const {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!algebra_.equal(a[i], b[i])) return false;
    return true;
  }

  Value compute(const Term& t, Env<Value>& env) {
    switch (t.kind()) {
      case TermKind::kEmpty: return algebra_.empty();
      case TermKind::kFull: return algebra_.full();
      case TermKind::kVar: return env.find(t.name())->second;
      case TermKind::kOp: {
        std::vector<Value> args;
        for (const auto& c : t.children()) args.push_back(eval(c, env));
        return note(algebra_.apply(t.name(), args));
      }
      case TermKind::kUnion: return note(algebra_.unite(eval(t.child(0), env), eval(t.child(1), env)));
      case TermKind::kIntersect: return note(algebra_.intersect(eval(t.child(0), env), eval(t.child(1), env)));
      case TermKind::kComplement: return note(algebra_.complement(eval(t.child(), env)));
      case TermKind::kUp: return note(algebra_.up(eval(t.child(), env)));
      case TermKind::kDown: return note(algebra_.down(eval(t.child(), env)));
      case TermKind::kKUp: return note(algebra_.kup(eval(t.child(), env)));
      case TermKind::kKDown: return note(algebra_.kdown(eval(t.child(), env)));
      case TermKind::kMu:
      case TermKind::kNu: return fixpoint(t, env);
    }
    throw TermError("unknown term kind");
  }

  BinderStats& binder_stats(const Term& t) {
    for (auto& b : stats_.binders)
      if (b.binder == t.name()) return b;
    stats_.binders.push_back({t.name(), t.kind() == TermKind::kNu});
    return stats_.binders.back();
  }

  Value fixpoint(const Term& t, Env<Value>& env) {
    const bool greatest = t.kind() == TermKind::kNu;
    const std::string& x = t.name();
    std::optional<Value> saved;
    if (auto it = env.find(x); it != env.end()) saved = it->second;

    Value current = greatest ? algebra_.full() : algebra_.empty();
    std::size_t steps = 0;
    for (;;) {
      env.insert_or_assign(x, current);
      Value next = eval(t.child(), env);
      ++steps;
      if (limits_.check_monotone) {
        bool ok = greatest ? algebra_.subset(next, current) : algebra_.subset(current, next);
        if (!ok) throw TermError("approximant chain of " + x + " is not monotone");
      }
      if (algebra_.equal(next, current)) break;
      current = std::move(next);
      if (limits_.max_iterations && steps >= *limits_.max_iterations) {
        record(t, steps);
        throw IterationLimit(x, *limits_.max_iterations, stats_);
      }
    }
    record(t, steps);
    if (saved)
      env.insert_or_assign(x, *saved);
    else
      env.erase(x);
    if (limits_.on_fixpoint) limits_.on_fixpoint(t, env, current);
    return current;
  }

  void record(const Term& t, std::size_t steps) {
    auto& b = binder_stats(t);
    ++b.runs;
    b.iterations += steps;
    b.longest_run = std::max(b.longest_run, steps);
  }

  const Algebra& algebra_;
  EvalLimits<Value> limits_;
  EvalStats stats_;
  std::unordered_map<const void*, CacheEntry> cache_;
  std::unordered_map<const void*, Term> keep_alive_;
};

template <RegionAlgebra Algebra>
std::pair<typename Algebra::Value, EvalStats> evaluate(const Algebra& algebra, const Term& t,
                                                      const Env<typename Algebra::Value>& env = {},
                                                      EvalLimits<typename Algebra::Value> limits = {}) {
  Evaluator<Algebra> ev(algebra, std::move(limits));
  auto v = ev.evaluate(t, env);
  return {std::move(v), ev.stats()};
}

/// Decision queries on closed terms.
template <RegionAlgebra Algebra>
bool is_satisfiable(const Algebra& algebra, const Term& t, EvalLimits<typename Algebra::Value> limits = {}) {
  return !algebra.is_empty(evaluate(algebra, t, {}, std::move(limits)).first);
}

template <RegionAlgebra Algebra>
bool is_valid(const Algebra& algebra, const Term& t, EvalLimits<typename Algebra::Value> limits = {}) {
  return algebra.is_universal(evaluate(algebra, t, {}, std::move(limits)).first);
}

template <RegionAlgebra Algebra, typename Element>
bool is_member(const Algebra& algebra, const Term& t, const Element& e,
               EvalLimits<typename Algebra::Value> limits = {}) {
  return algebra.contains(evaluate(algebra, t, {}, std::move(limits)).first, e);
}

/// Parses `text` against the operators of `algebra`.
template <RegionAlgebra Algebra>
Term parse_term(std::string_view text, const Algebra& algebra) {
  return parse_term(text, ArityLookup([&](std::string_view name) { return algebra.arity(name); }));
}

}  // namespace wsmc
