#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wsmc/automaton.hh"

namespace wsmc {

using Location = std::uint32_t;

/// Which player moves at a location; kNone outside game mode.
enum class Owner { kNone, kA, kB };

/// The configuration space a region lives in: locations, channels and the
/// message alphabet of one model.
class Signature {
 public:
  Signature(Alphabet alphabet, std::vector<std::string> channels, std::vector<std::string> locations,
            std::vector<Owner> owners = {});

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_channels() const noexcept { return channels_.size(); }
  std::size_t num_locations() const noexcept { return locations_.size(); }
  const std::vector<std::string>& channels() const noexcept { return channels_; }
  const std::vector<std::string>& locations() const noexcept { return locations_; }
  const std::string& location_name(Location l) const { return locations_.at(l); }
  Owner owner(Location l) const { return owners_.at(l); }
  /// True when at least one location has an owner.
  bool game_mode() const noexcept;

  std::optional<Location> find_location(std::string_view name) const;
  std::optional<std::size_t> find_channel(std::string_view name) const;

  /// Message alphabet extended with one separator symbol; a configuration
  /// (q, w1, ..., wk) at location q is encoded as the word w1 # ... # wk.
  const Alphabet& encoding_alphabet() const noexcept { return encoding_; }
  Symbol separator() const noexcept { return static_cast<Symbol>(alphabet_.size()); }
  /// Canonical automaton for all well-formed encodings (exactly k-1 separators).
  const CanonicalDfa& shape() const noexcept { return *shape_; }

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.alphabet_ == b.alphabet_ && a.channels_ == b.channels_ && a.locations_ == b.locations_;
  }

 private:
  Alphabet alphabet_;
  std::vector<std::string> channels_;
  std::vector<std::string> locations_;
  std::vector<Owner> owners_;
  Alphabet encoding_;
  std::shared_ptr<const CanonicalDfa> shape_;
};

using SignaturePtr = std::shared_ptr<const Signature>;

/// One summand (q, L1, ..., Lk): a location and one language per channel.
struct Product {
  Location location;
  std::vector<CanonicalDfa> channels;
  friend bool operator==(const Product&, const Product&) = default;
};

/// One configuration: a location and the content of every channel.
struct Config {
  Location location;
  std::vector<Word> contents;
  friend auto operator<=>(const Config&, const Config&) = default;
};

/// A finite sum of products over a signature. Values are always kept in
/// normal form: per location, the union of its products is stored as one
/// canonical automaton over the encoding alphabet, and the summands are the
/// deterministic decomposition of that automaton into disjoint products.
/// Equal sets therefore have identical representations.
class Region {
 public:
  static Region empty(SignaturePtr sig);
  static Region full(SignaturePtr sig);
  /// All configurations at the given locations.
  static Region at(SignaturePtr sig, std::span<const Location> locations);
  static Region singleton(SignaturePtr sig, const Config& config);
  /// Normalizes an arbitrary sum of products (which may contain empty
  /// products and repeated locations).
  static Region from_products(SignaturePtr sig, std::span<const Product> products);

  const SignaturePtr& signature() const noexcept { return sig_; }
  const std::vector<Product>& summands() const noexcept { return summands_; }
  /// Locations with a nonempty part, ascending.
  std::vector<Location> locations() const;
  /// Canonical per-location encoding; nullptr when the location is absent.
  const CanonicalDfa* encoding(Location l) const;
  /// Total state count of the per-location encodings.
  std::size_t size() const noexcept;

  bool is_empty() const noexcept { return parts_.empty(); }
  bool is_universal() const;
  bool contains(const Config& config) const;

  friend bool operator==(const Region& a, const Region& b);

 private:
  struct Part {
    Location location;
    CanonicalDfa encoded;
    friend bool operator==(const Part&, const Part&) = default;
  };

  Region(SignaturePtr sig, std::vector<Part> parts);

  friend Region unite(const Region&, const Region&);
  friend Region intersect(const Region&, const Region&);
  friend Region complement(const Region&);
  friend bool is_subset(const Region&, const Region&);

  SignaturePtr sig_;
  std::vector<Part> parts_;
  std::vector<Product> summands_;
};

Region unite(const Region& a, const Region& b);
Region intersect(const Region& a, const Region& b);
Region complement(const Region& a);
Region difference(const Region& a, const Region& b);
bool is_subset(const Region& a, const Region& b);

/// Componentwise subword closures, applied per summand and per channel.
Region up_closure(const Region& a);
Region down_closure(const Region& a);
/// Kernels by duality: K_up = not . C_down . not, K_down = not . C_up . not.
Region up_kernel(const Region& a);
Region down_kernel(const Region& a);

/// Normal form of a raw sum of products (same as Region::from_products).
Region normalize(SignaturePtr sig, std::span<const Product> products);

/// Product (q, L1, ..., Lk) with every Li = Sigma*.
Product full_product(const Signature& sig, Location l);

/// Componentwise subword order on configurations.
bool config_leq(const Config& small, const Config& large);

}  // namespace wsmc
