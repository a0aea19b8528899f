#include "wsmc/language.hh"

#include <deque>
#include <unordered_map>
#include <utility>

#include "wsmc/error.hh"

namespace wsmc {

namespace {

void require_same(const Alphabet& a, const Alphabet& b) {
  if (!(a == b)) throw AlphabetMismatch();
}

/// Copies `src` into `dst` with state indices shifted; returns the offset.
State embed(Nfa& dst, const Nfa& src) {
  State off = dst.add_states(src.num_states());
  for (State s = 0; s < src.num_states(); ++s)
    for (const auto& e : src.edges(s)) dst.add_edge(off + s, e.symbol, off + e.target);
  return off;
}

std::uint64_t pair_key(State p, State q) { return (std::uint64_t{p} << 32) | q; }

template <typename Accept>
Dfa dfa_product(const Dfa& a, const Dfa& b, Accept accept) {
  require_same(a.alphabet(), b.alphabet());
  const auto k = a.alphabet().size();
  std::unordered_map<std::uint64_t, State> index;
  std::vector<std::pair<State, State>> pairs{{a.start(), b.start()}};
  index.emplace(pair_key(a.start(), b.start()), 0);
  std::vector<State> table;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [p, q] = pairs[i];
    for (Symbol s = 0; s < k; ++s) {
      State p2 = a.next(p, s), q2 = b.next(q, s);
      auto [it, inserted] = index.emplace(pair_key(p2, q2), static_cast<State>(pairs.size()));
      if (inserted) pairs.emplace_back(p2, q2);
      table.push_back(it->second);
    }
  }
  Dfa out(a.alphabet(), pairs.size(), 0);
  for (State i = 0; i < pairs.size(); ++i) {
    out.set_accepting(i, accept(a.is_accepting(pairs[i].first), b.is_accepting(pairs[i].second)));
    for (Symbol s = 0; s < k; ++s) out.set_next(i, s, table[i * k + s]);
  }
  return out;
}

/// True when some reachable pair satisfies `bad`.
template <typename Bad>
bool dfa_product_finds(const Dfa& a, const Dfa& b, Bad bad) {
  require_same(a.alphabet(), b.alphabet());
  const auto k = a.alphabet().size();
  std::unordered_map<std::uint64_t, char> seen;
  std::deque<std::pair<State, State>> work{{a.start(), b.start()}};
  seen.emplace(pair_key(a.start(), b.start()), 1);
  while (!work.empty()) {
    auto [p, q] = work.front();
    work.pop_front();
    if (bad(a.is_accepting(p), b.is_accepting(q))) return true;
    for (Symbol s = 0; s < k; ++s) {
      State p2 = a.next(p, s), q2 = b.next(q, s);
      if (seen.emplace(pair_key(p2, q2), 1).second) work.emplace_back(p2, q2);
    }
  }
  return false;
}

Dfa flip(const Dfa& d) {
  Dfa out = d;
  for (State s = 0; s < d.num_states(); ++s) out.set_accepting(s, !d.is_accepting(s));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Nfa operations

Nfa remove_epsilon(const Nfa& a) {
  if (!a.has_epsilon()) return a;
  Nfa out(a.alphabet());
  out.add_states(a.num_states());
  std::vector<char> mark(a.num_states(), 0);
  for (State s = 0; s < a.num_states(); ++s) {
    std::vector<State> closure{s}, stack{s};
    mark[s] = 1;
    while (!stack.empty()) {
      State q = stack.back();
      stack.pop_back();
      for (const auto& e : a.edges(q))
        if (e.symbol == kEpsilon && !mark[e.target]) {
          mark[e.target] = 1;
          closure.push_back(e.target);
          stack.push_back(e.target);
        }
    }
    for (State q : closure) {
      mark[q] = 0;
      if (a.is_accepting(q)) out.set_accepting(s);
      for (const auto& e : a.edges(q))
        if (e.symbol != kEpsilon) out.add_edge(s, e.symbol, e.target);
    }
    out.set_initial(s, a.is_initial(s));
  }
  return out;
}

Nfa unite(const Nfa& a, const Nfa& b) {
  require_same(a.alphabet(), b.alphabet());
  Nfa out(a.alphabet());
  for (const Nfa* src : {&a, &b}) {
    State off = embed(out, *src);
    for (State s = 0; s < src->num_states(); ++s) {
      out.set_initial(off + s, src->is_initial(s));
      out.set_accepting(off + s, src->is_accepting(s));
    }
  }
  return out;
}

Nfa intersect(const Nfa& a0, const Nfa& b0) {
  require_same(a0.alphabet(), b0.alphabet());
  Nfa a = remove_epsilon(a0), b = remove_epsilon(b0);
  Nfa out(a.alphabet());
  std::unordered_map<std::uint64_t, State> index;
  std::vector<std::pair<State, State>> pairs;
  auto get = [&](State p, State q) {
    auto [it, inserted] = index.emplace(pair_key(p, q), 0);
    if (inserted) {
      it->second = out.add_state(false, a.is_accepting(p) && b.is_accepting(q));
      pairs.emplace_back(p, q);
    }
    return it->second;
  };
  for (State p = 0; p < a.num_states(); ++p)
    if (a.is_initial(p))
      for (State q = 0; q < b.num_states(); ++q)
        if (b.is_initial(q)) out.set_initial(get(p, q));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [p, q] = pairs[i];
    for (const auto& ea : a.edges(p))
      for (const auto& eb : b.edges(q))
        if (ea.symbol == eb.symbol) {
          State t = get(ea.target, eb.target);
          out.add_edge(static_cast<State>(i), ea.symbol, t);
        }
  }
  if (out.num_states() == 0) return Nfa::empty_language(a.alphabet());
  return out;
}

Nfa complement(const Nfa& a) { return minimize(flip(determinize(a))).to_nfa(); }

Nfa difference(const Nfa& a, const Nfa& b) {
  require_same(a.alphabet(), b.alphabet());
  return intersect(a, complement(b));
}

Nfa concat(const Nfa& a, const Nfa& b) {
  require_same(a.alphabet(), b.alphabet());
  Nfa out(a.alphabet());
  State oa = embed(out, a);
  State ob = embed(out, b);
  for (State s = 0; s < a.num_states(); ++s) {
    out.set_initial(oa + s, a.is_initial(s));
    if (a.is_accepting(s))
      for (State t = 0; t < b.num_states(); ++t)
        if (b.is_initial(t)) out.add_epsilon(oa + s, ob + t);
  }
  for (State t = 0; t < b.num_states(); ++t) out.set_accepting(ob + t, b.is_accepting(t));
  return out;
}

Nfa star(const Nfa& a) {
  Nfa out(a.alphabet());
  State hub = out.add_state(true, true);
  State off = embed(out, a);
  for (State s = 0; s < a.num_states(); ++s) {
    if (a.is_initial(s)) out.add_epsilon(hub, off + s);
    if (a.is_accepting(s)) out.add_epsilon(off + s, hub);
  }
  return out;
}

Nfa reverse(const Nfa& a) {
  Nfa out(a.alphabet());
  out.add_states(a.num_states());
  for (State s = 0; s < a.num_states(); ++s) {
    out.set_initial(s, a.is_accepting(s));
    out.set_accepting(s, a.is_initial(s));
    for (const auto& e : a.edges(s)) out.add_edge(e.target, e.symbol, s);
  }
  return out;
}

Nfa shuffle(const Nfa& a0, const Nfa& b0) {
  require_same(a0.alphabet(), b0.alphabet());
  Nfa a = remove_epsilon(a0), b = remove_epsilon(b0);
  Nfa out(a.alphabet());
  const auto nb = b.num_states();
  if (a.num_states() == 0 || nb == 0) return Nfa::empty_language(a.alphabet());
  out.add_states(a.num_states() * nb);
  auto id = [nb](State p, State q) { return static_cast<State>(p * nb + q); };
  for (State p = 0; p < a.num_states(); ++p)
    for (State q = 0; q < nb; ++q) {
      State s = id(p, q);
      out.set_initial(s, a.is_initial(p) && b.is_initial(q));
      out.set_accepting(s, a.is_accepting(p) && b.is_accepting(q));
      for (const auto& e : a.edges(p)) out.add_edge(s, e.symbol, id(e.target, q));
      for (const auto& e : b.edges(q)) out.add_edge(s, e.symbol, id(p, e.target));
    }
  return out;
}

Nfa left_residual(const Nfa& a0, const Nfa& b0) {
  require_same(a0.alphabet(), b0.alphabet());
  Nfa a = remove_epsilon(a0), b = remove_epsilon(b0);
  // Pairs (p, q) reachable by reading the same word u in a and b.
  std::unordered_map<std::uint64_t, char> seen;
  std::vector<std::pair<State, State>> work;
  for (State p = 0; p < a.num_states(); ++p)
    if (a.is_initial(p))
      for (State q = 0; q < b.num_states(); ++q)
        if (b.is_initial(q) && seen.emplace(pair_key(p, q), 1).second) work.emplace_back(p, q);
  std::vector<bool> starts(b.num_states(), false);
  for (std::size_t i = 0; i < work.size(); ++i) {
    auto [p, q] = work[i];
    if (a.is_accepting(p)) starts[q] = true;
    for (const auto& ea : a.edges(p))
      for (const auto& eb : b.edges(q))
        if (ea.symbol == eb.symbol && seen.emplace(pair_key(ea.target, eb.target), 1).second)
          work.emplace_back(ea.target, eb.target);
  }
  Nfa out = b;
  for (State q = 0; q < b.num_states(); ++q) out.set_initial(q, starts[q]);
  return out;
}

Nfa right_residual(const Nfa& a0, const Nfa& b0) {
  require_same(a0.alphabet(), b0.alphabet());
  Nfa a = remove_epsilon(a0), b = remove_epsilon(b0);
  const auto na = a.num_states(), nb = b.num_states();
  // Backward search over the product for pairs that can read a common word
  // into (accepting, accepting).
  std::vector<std::vector<std::pair<Symbol, State>>> rev_a(na), rev_b(nb);
  for (State p = 0; p < na; ++p)
    for (const auto& e : a.edges(p)) rev_a[e.target].emplace_back(e.symbol, p);
  for (State q = 0; q < nb; ++q)
    for (const auto& e : b.edges(q)) rev_b[e.target].emplace_back(e.symbol, q);
  std::vector<char> good(na * nb, 0);
  std::vector<std::pair<State, State>> work;
  for (State p = 0; p < na; ++p)
    for (State q = 0; q < nb; ++q)
      if (a.is_accepting(p) && b.is_accepting(q)) {
        good[p * nb + q] = 1;
        work.emplace_back(p, q);
      }
  while (!work.empty()) {
    auto [p, q] = work.back();
    work.pop_back();
    for (const auto& [sa, pp] : rev_a[p])
      for (const auto& [sb, qq] : rev_b[q])
        if (sa == sb && !good[pp * nb + qq]) {
          good[pp * nb + qq] = 1;
          work.emplace_back(pp, qq);
        }
  }
  Nfa out = a;
  for (State p = 0; p < na; ++p) {
    bool acc = false;
    for (State q = 0; q < nb && !acc; ++q) acc = b.is_initial(q) && good[p * nb + q];
    out.set_accepting(p, acc);
  }
  return out;
}

Nfa up_closure(const Nfa& a) {
  Nfa out = a;
  for (State s = 0; s < a.num_states(); ++s)
    for (Symbol m = 0; m < a.alphabet().size(); ++m) out.add_edge(s, m, s);
  return out;
}

Nfa down_closure(const Nfa& a) {
  Nfa out = a;
  for (State s = 0; s < a.num_states(); ++s)
    for (const auto& e : a.edges(s))
      if (e.symbol != kEpsilon) out.add_epsilon(s, e.target);
  return out;
}

Nfa up_kernel(const Nfa& a) { return complement(down_closure(complement(a))); }
Nfa down_kernel(const Nfa& a) { return complement(up_closure(complement(a))); }

bool is_empty(const Nfa& a) {
  std::vector<char> seen(a.num_states(), 0);
  std::vector<State> stack;
  for (State s = 0; s < a.num_states(); ++s)
    if (a.is_initial(s)) {
      seen[s] = 1;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    if (a.is_accepting(s)) return false;
    for (const auto& e : a.edges(s))
      if (!seen[e.target]) {
        seen[e.target] = 1;
        stack.push_back(e.target);
      }
  }
  return true;
}

bool is_universal(const Nfa& a) { return is_empty(complement(a)); }

bool accepts(const Nfa& a, const Word& w) { return determinize(a).accepts(w); }

bool equivalent(const Nfa& a, const Nfa& b) {
  require_same(a.alphabet(), b.alphabet());
  return !dfa_product_finds(determinize(a), determinize(b), [](bool x, bool y) { return x != y; });
}

bool is_subset(const Nfa& a, const Nfa& b) {
  require_same(a.alphabet(), b.alphabet());
  return !dfa_product_finds(determinize(a), determinize(b), [](bool x, bool y) { return x && !y; });
}

// ---------------------------------------------------------------------------
// Canonical overloads

CanonicalDfa unite(const CanonicalDfa& a, const CanonicalDfa& b) {
  return minimize(dfa_product(a.dfa(), b.dfa(), [](bool x, bool y) { return x || y; }));
}

CanonicalDfa intersect(const CanonicalDfa& a, const CanonicalDfa& b) {
  return minimize(dfa_product(a.dfa(), b.dfa(), [](bool x, bool y) { return x && y; }));
}

CanonicalDfa complement(const CanonicalDfa& a) { return minimize(flip(a.dfa())); }

CanonicalDfa difference(const CanonicalDfa& a, const CanonicalDfa& b) {
  return minimize(dfa_product(a.dfa(), b.dfa(), [](bool x, bool y) { return x && !y; }));
}

CanonicalDfa concat(const CanonicalDfa& a, const CanonicalDfa& b) {
  return canonicalize(concat(a.to_nfa(), b.to_nfa()));
}
CanonicalDfa star(const CanonicalDfa& a) { return canonicalize(star(a.to_nfa())); }
CanonicalDfa reverse(const CanonicalDfa& a) { return canonicalize(reverse(a.to_nfa())); }
CanonicalDfa shuffle(const CanonicalDfa& a, const CanonicalDfa& b) {
  return canonicalize(shuffle(a.to_nfa(), b.to_nfa()));
}
CanonicalDfa left_residual(const CanonicalDfa& a, const CanonicalDfa& b) {
  return canonicalize(left_residual(a.to_nfa(), b.to_nfa()));
}
CanonicalDfa right_residual(const CanonicalDfa& a, const CanonicalDfa& b) {
  return canonicalize(right_residual(a.to_nfa(), b.to_nfa()));
}
CanonicalDfa up_closure(const CanonicalDfa& a) { return canonicalize(up_closure(a.to_nfa())); }
CanonicalDfa down_closure(const CanonicalDfa& a) { return canonicalize(down_closure(a.to_nfa())); }
CanonicalDfa up_kernel(const CanonicalDfa& a) { return complement(down_closure(complement(a))); }
CanonicalDfa down_kernel(const CanonicalDfa& a) { return complement(up_closure(complement(a))); }

bool is_subset(const CanonicalDfa& a, const CanonicalDfa& b) {
  return !dfa_product_finds(a.dfa(), b.dfa(), [](bool x, bool y) { return x && !y; });
}

CanonicalDfa empty_dfa(const Alphabet& alphabet) { return canonicalize(Nfa::empty_language(alphabet)); }
CanonicalDfa universal_dfa(const Alphabet& alphabet) { return canonicalize(Nfa::universal(alphabet)); }
CanonicalDfa word_dfa(const Alphabet& alphabet, const Word& w) {
  return canonicalize(Nfa::word(alphabet, w));
}

}  // namespace wsmc
