#include "wsmc/region.hh"

#include <algorithm>
#include <map>

#include "wsmc/error.hh"
#include "wsmc/language.hh"

namespace wsmc {

namespace {

const char* const kSeparatorName = "#";

std::vector<std::string> with_separator(const Alphabet& a) {
  auto names = a.symbols();
  names.push_back(kSeparatorName);
  return names;
}

void require_same(const Region& a, const Region& b) {
  if (a.signature() != b.signature() && !(*a.signature() == *b.signature())) throw SignatureMismatch();
}

/// Appends the chain L1 # L2 # ... # Lk of `p` to `nfa` (over the encoding alphabet).
void add_chain(Nfa& nfa, const Signature& sig, const Product& p) {
  if (p.channels.empty()) {
    nfa.add_state(true, true);
    return;
  }
  const auto k = sig.alphabet().size();
  std::vector<State> accepting_prev;
  for (std::size_t i = 0; i < p.channels.size(); ++i) {
    const auto& d = p.channels[i];
    State off = nfa.add_states(d.num_states());
    for (State s = 0; s < d.num_states(); ++s)
      for (Symbol a = 0; a < k; ++a) nfa.add_edge(off + s, a, off + d.next(s, a));
    if (i == 0) nfa.set_initial(off);
    for (State prev : accepting_prev) nfa.add_edge(prev, sig.separator(), off);
    accepting_prev.clear();
    for (State s = 0; s < d.num_states(); ++s)
      if (d.is_accepting(s)) accepting_prev.push_back(off + s);
  }
  for (State s : accepting_prev) nfa.set_accepting(s);
}

/// Language over the message alphabet read from `start` within `enc`
/// (message symbols only) ending in a state selected by `accept`.
template <typename Accept>
CanonicalDfa restrict_component(const Signature& sig, const CanonicalDfa& enc, State start, Accept accept) {
  const auto k = sig.alphabet().size();
  Dfa d(sig.alphabet(), enc.num_states(), start);
  for (State s = 0; s < enc.num_states(); ++s) {
    d.set_accepting(s, accept(s));
    for (Symbol a = 0; a < k; ++a) d.set_next(s, a, enc.next(s, a));
  }
  return minimize(d);
}

void decompose(const Signature& sig, Location loc, const CanonicalDfa& enc, std::vector<Product>& out) {
  const auto channels = sig.num_channels();
  if (channels == 0) {
    if (enc.is_accepting(0)) out.push_back(Product{loc, {}});
    return;
  }
  const auto n = enc.num_states();
  const auto k = sig.alphabet().size();
  const Symbol sep = sig.separator();

  std::vector<char> live(n, 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (State s = 0; s < n; ++s) {
      if (live[s]) continue;
      bool l = enc.is_accepting(s);
      for (Symbol a = 0; a <= k && !l; ++a) l = live[enc.next(s, a)];
      if (l) live[s] = changed = true;
    }
  }

  std::vector<CanonicalDfa> prefix;
  auto rec = [&](auto&& self, std::size_t i, State s) -> void {
    if (i + 1 == channels) {
      auto comp = restrict_component(sig, enc, s, [&](State q) { return enc.is_accepting(q); });
      if (!comp.is_empty()) {
        prefix.push_back(std::move(comp));
        out.push_back(Product{loc, prefix});
        prefix.pop_back();
      }
      return;
    }
    // States reachable from s on message symbols, then their separator targets.
    std::vector<char> seen(n, 0);
    std::vector<State> stack{s};
    seen[s] = 1;
    std::vector<State> targets;
    while (!stack.empty()) {
      State q = stack.back();
      stack.pop_back();
      State t = enc.next(q, sep);
      if (live[t]) targets.push_back(t);
      for (Symbol a = 0; a < k; ++a) {
        State r = enc.next(q, a);
        if (!seen[r]) {
          seen[r] = 1;
          stack.push_back(r);
        }
      }
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (State t : targets) {
      auto comp = restrict_component(sig, enc, s, [&](State q) { return enc.next(q, sep) == t; });
      if (comp.is_empty()) continue;
      prefix.push_back(std::move(comp));
      self(self, i + 1, t);
      prefix.pop_back();
    }
  };
  rec(rec, 0, 0);
}

}  // namespace

// ---------------------------------------------------------------------------
// Signature

Signature::Signature(Alphabet alphabet, std::vector<std::string> channels, std::vector<std::string> locations,
                     std::vector<Owner> owners)
    : alphabet_(std::move(alphabet)),
      channels_(std::move(channels)),
      locations_(std::move(locations)),
      owners_(std::move(owners)),
      encoding_(with_separator(alphabet_)) {
  if (locations_.empty()) throw Error("a model needs at least one location");
  if (owners_.empty()) owners_.assign(locations_.size(), Owner::kNone);
  if (owners_.size() != locations_.size()) throw Error("owner list does not match locations");
  for (std::size_t i = 0; i < locations_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (locations_[i] == locations_[j]) throw Error("duplicate location '" + locations_[i] + "'");
  for (std::size_t i = 0; i < channels_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (channels_[i] == channels_[j]) throw Error("duplicate channel '" + channels_[i] + "'");

  // (Sigma* #)^{k-1} Sigma*, or {epsilon} without channels.
  Nfa shape(encoding_);
  if (channels_.empty()) {
    shape.add_state(true, true);
  } else {
    shape.add_states(channels_.size());
    shape.set_initial(0);
    shape.set_accepting(static_cast<State>(channels_.size() - 1));
    for (State s = 0; s < channels_.size(); ++s) {
      for (Symbol a = 0; a < alphabet_.size(); ++a) shape.add_edge(s, a, s);
      if (s + 1 < channels_.size()) shape.add_edge(s, separator(), s + 1);
    }
  }
  shape_ = std::make_shared<const CanonicalDfa>(canonicalize(shape));
}

bool Signature::game_mode() const noexcept {
  return std::any_of(owners_.begin(), owners_.end(), [](Owner o) { return o != Owner::kNone; });
}

std::optional<Location> Signature::find_location(std::string_view name) const {
  for (std::size_t i = 0; i < locations_.size(); ++i)
    if (locations_[i] == name) return static_cast<Location>(i);
  return std::nullopt;
}

std::optional<std::size_t> Signature::find_channel(std::string_view name) const {
  for (std::size_t i = 0; i < channels_.size(); ++i)
    if (channels_[i] == name) return i;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Region

Region::Region(SignaturePtr sig, std::vector<Part> parts) : sig_(std::move(sig)), parts_(std::move(parts)) {
  std::sort(parts_.begin(), parts_.end(), [](const Part& a, const Part& b) { return a.location < b.location; });
  for (const auto& p : parts_) decompose(*sig_, p.location, p.encoded, summands_);
}

Region Region::empty(SignaturePtr sig) { return Region(std::move(sig), {}); }

Region Region::full(SignaturePtr sig) {
  std::vector<Part> parts;
  for (Location l = 0; l < sig->num_locations(); ++l) parts.push_back({l, sig->shape()});
  return Region(std::move(sig), std::move(parts));
}

Region Region::at(SignaturePtr sig, std::span<const Location> locations) {
  std::vector<Location> locs(locations.begin(), locations.end());
  std::sort(locs.begin(), locs.end());
  locs.erase(std::unique(locs.begin(), locs.end()), locs.end());
  std::vector<Part> parts;
  for (Location l : locs) {
    if (l >= sig->num_locations()) throw Error("location index out of range");
    parts.push_back({l, sig->shape()});
  }
  return Region(std::move(sig), std::move(parts));
}

Region Region::singleton(SignaturePtr sig, const Config& config) {
  if (config.contents.size() != sig->num_channels()) throw Error("configuration has wrong channel count");
  Product p{config.location, {}};
  for (const auto& w : config.contents) p.channels.push_back(word_dfa(sig->alphabet(), w));
  return from_products(std::move(sig), std::span<const Product>(&p, 1));
}

Region Region::from_products(SignaturePtr sig, std::span<const Product> products) {
  std::map<Location, Nfa> per_location;
  for (const auto& p : products) {
    if (p.location >= sig->num_locations()) throw Error("location index out of range");
    if (p.channels.size() != sig->num_channels()) throw Error("product has wrong channel count");
    bool empty = false;
    for (const auto& c : p.channels) {
      if (!(c.alphabet() == sig->alphabet())) throw AlphabetMismatch();
      empty = empty || c.is_empty();
    }
    if (empty) continue;
    auto it = per_location.try_emplace(p.location, sig->encoding_alphabet()).first;
    add_chain(it->second, *sig, p);
  }
  std::vector<Part> parts;
  for (const auto& [loc, nfa] : per_location) parts.push_back({loc, canonicalize(nfa)});
  return Region(std::move(sig), std::move(parts));
}

std::vector<Location> Region::locations() const {
  std::vector<Location> out;
  for (const auto& p : parts_) out.push_back(p.location);
  return out;
}

const CanonicalDfa* Region::encoding(Location l) const {
  for (const auto& p : parts_)
    if (p.location == l) return &p.encoded;
  return nullptr;
}

std::size_t Region::size() const noexcept {
  std::size_t n = 0;
  for (const auto& p : parts_) n += p.encoded.num_states();
  return n;
}

bool Region::is_universal() const {
  if (parts_.size() != sig_->num_locations()) return false;
  return std::all_of(parts_.begin(), parts_.end(), [&](const Part& p) { return p.encoded == sig_->shape(); });
}

bool Region::contains(const Config& config) const {
  if (config.contents.size() != sig_->num_channels()) throw Error("configuration has wrong channel count");
  const CanonicalDfa* enc = encoding(config.location);
  if (enc == nullptr) return false;
  Word encoded;
  for (std::size_t i = 0; i < config.contents.size(); ++i) {
    if (i > 0) encoded.push_back(sig_->separator());
    for (Symbol a : config.contents[i]) {
      if (a >= sig_->alphabet().size()) throw Error("configuration symbol not in alphabet");
      encoded.push_back(a);
    }
  }
  return enc->accepts(encoded);
}

bool operator==(const Region& a, const Region& b) {
  require_same(a, b);
  return a.parts_ == b.parts_;
}

Region unite(const Region& a, const Region& b) {
  require_same(a, b);
  std::map<Location, CanonicalDfa> merged;
  for (const auto& p : a.parts_) merged.emplace(p.location, p.encoded);
  for (const auto& p : b.parts_) {
    auto [it, inserted] = merged.emplace(p.location, p.encoded);
    if (!inserted) it->second = unite(it->second, p.encoded);
  }
  std::vector<Region::Part> parts;
  for (auto& [loc, enc] : merged) parts.push_back({loc, std::move(enc)});
  return Region(a.sig_, std::move(parts));
}

Region intersect(const Region& a, const Region& b) {
  require_same(a, b);
  std::vector<Region::Part> parts;
  for (const auto& p : a.parts_) {
    const CanonicalDfa* other = b.encoding(p.location);
    if (other == nullptr) continue;
    auto enc = intersect(p.encoded, *other);
    if (!enc.is_empty()) parts.push_back({p.location, std::move(enc)});
  }
  return Region(a.sig_, std::move(parts));
}

Region complement(const Region& a) {
  const auto& sig = *a.sig_;
  std::vector<Region::Part> parts;
  for (Location l = 0; l < sig.num_locations(); ++l) {
    const CanonicalDfa* enc = a.encoding(l);
    if (enc == nullptr) {
      parts.push_back({l, sig.shape()});
      continue;
    }
    auto rest = difference(sig.shape(), *enc);
    if (!rest.is_empty()) parts.push_back({l, std::move(rest)});
  }
  return Region(a.sig_, std::move(parts));
}

Region difference(const Region& a, const Region& b) { return intersect(a, complement(b)); }

bool is_subset(const Region& a, const Region& b) {
  require_same(a, b);
  for (const auto& p : a.parts_) {
    const CanonicalDfa* other = b.encoding(p.location);
    if (other == nullptr || !is_subset(p.encoded, *other)) return false;
  }
  return true;
}

namespace {

template <typename Op>
Region map_channels(const Region& a, Op op) {
  std::vector<Product> products = a.summands();
  for (auto& p : products)
    for (auto& c : p.channels) c = op(c);
  return Region::from_products(a.signature(), products);
}

}  // namespace

Region up_closure(const Region& a) {
  return map_channels(a, [](const CanonicalDfa& d) { return up_closure(d); });
}

Region down_closure(const Region& a) {
  return map_channels(a, [](const CanonicalDfa& d) { return down_closure(d); });
}

Region up_kernel(const Region& a) { return complement(down_closure(complement(a))); }
Region down_kernel(const Region& a) { return complement(up_closure(complement(a))); }

Region normalize(SignaturePtr sig, std::span<const Product> products) {
  return Region::from_products(std::move(sig), products);
}

Product full_product(const Signature& sig, Location l) {
  Product p{l, {}};
  for (std::size_t i = 0; i < sig.num_channels(); ++i) p.channels.push_back(universal_dfa(sig.alphabet()));
  return p;
}

bool config_leq(const Config& small, const Config& large) {
  if (small.location != large.location || small.contents.size() != large.contents.size()) return false;
  for (std::size_t i = 0; i < small.contents.size(); ++i) {
    std::size_t j = 0;
    for (Symbol a : large.contents[i])
      if (j < small.contents[i].size() && small.contents[i][j] == a) ++j;
    if (j != small.contents[i].size()) return false;
  }
  return true;
}

}  // namespace wsmc
