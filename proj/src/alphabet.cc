#include "wsmc/alphabet.hh"

#include <algorithm>
#include <cctype>
#include <set>

#include "wsmc/error.hh"

namespace wsmc {

Alphabet::Alphabet(std::vector<std::string> symbols) {
  if (symbols.empty()) throw Error("alphabet must contain at least one symbol");
  std::set<std::string> seen;
  auto data = std::make_shared<Data>();
  for (auto& s : symbols) {
    if (s.empty()) throw Error("alphabet symbols must be nonempty");
    if (!seen.insert(s).second) throw Error("duplicate alphabet symbol '" + s + "'");
    if (s.size() != 1) data->single_char = false;
  }
  data->names = std::move(symbols);
  data_ = std::move(data);
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
  const auto& names = data_->names;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<Symbol>(i);
  return std::nullopt;
}

std::optional<Word> Alphabet::resolve_token(std::string_view token) const {
  if (auto s = find(token)) return Word{*s};
  if (!single_char()) return std::nullopt;
  Word w;
  for (char c : token) {
    auto s = find(std::string_view(&c, 1));
    if (!s) return std::nullopt;
    w.push_back(*s);
  }
  return w;
}

Word Alphabet::parse_word(std::string_view text) const {
  Word word;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    auto token = text.substr(i, j - i);
    auto part = resolve_token(token);
    if (!part) throw SyntaxError("unknown symbol '" + std::string(token) + "'", 0, i + 1);
    word.insert(word.end(), part->begin(), part->end());
    i = j;
  }
  return word;
}

std::string Alphabet::format_word(const Word& word) const {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0 && !single_char()) out += ' ';
    out += name(word[i]);
  }
  return out;
}

}  // namespace wsmc
