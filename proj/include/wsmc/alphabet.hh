#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wsmc {

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

/// Ordered finite set of message symbols. Copies share storage; two alphabets
/// are equal when they list the same names in the same order.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const noexcept { return data_->names.size(); }
  const std::vector<std::string>& symbols() const noexcept { return data_->names; }
  const std::string& name(Symbol s) const { return data_->names.at(s); }

  std::optional<Symbol> find(std::string_view name) const;

  /// True when every symbol name is one character long; words and regexes
  /// may then be written without separating spaces.
  bool single_char() const noexcept { return data_->single_char; }

  /// Parses a word written as symbol names separated by whitespace, or as
  /// juxtaposed characters when the alphabet is single-char.
  Word parse_word(std::string_view text) const;
  std::string format_word(const Word& word) const;

  /// Resolves one identifier token to a symbol sequence (see parse_word).
  /// Returns nullopt when the token cannot be read over this alphabet.
  std::optional<Word> resolve_token(std::string_view token) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) noexcept {
    return a.data_ == b.data_ || a.data_->names == b.data_->names;
  }

 private:
  struct Data {
    std::vector<std::string> names;
    bool single_char = true;
  };
  std::shared_ptr<const Data> data_;
};

}  // namespace wsmc
