#include "wsmc/region_text.hh"

#include <cctype>

#include "wsmc/error.hh"
#include "wsmc/language.hh"
#include "wsmc/regex.hh"

namespace wsmc {

namespace {

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

class RegionParser {
 public:
  RegionParser(std::string_view text, const SignaturePtr& sig, const NamedRegions& named)
      : text_(text), sig_(sig), named_(named) {}

  Region parse() {
    skip_ws();
    if (consume("{}")) {
      expect_end();
      return Region::empty(sig_);
    }
    Region acc = term();
    skip_ws();
    while (pos_ < text_.size() && text_[pos_] == '+') {
      ++pos_;
      acc = unite(acc, term());
      skip_ws();
    }
    expect_end();
    return acc;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const { throw SyntaxError(msg, 0, at + 1); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(std::string_view s) {
    if (text_.substr(pos_, s.size()) == s) {
      pos_ += s.size();
      return true;
    }
    return false;
  }

  void expect_end() {
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected text in region expression", pos_);
  }

  std::string_view ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected an identifier", start);
    return text_.substr(start, pos_ - start);
  }

  Region term() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') return atom();
    std::size_t start = pos_;
    auto name = ident();
    if (name == "all") return Region::full(sig_);
    auto it = named_.find(name);
    if (it == named_.end()) fail("unknown region '" + std::string(name) + "'", start);
    return it->second;
  }

  Region atom() {
    ++pos_;  // '('
    skip_ws();
    std::size_t at = pos_;
    auto loc_name = ident();
    auto loc = sig_->find_location(loc_name);
    if (!loc) fail("unknown location '" + std::string(loc_name) + "'", at);
    Product p{*loc, {}};
    for (std::size_t c = 0; c < sig_->num_channels(); ++c) {
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ';')
        fail("expected ';' (one regex per channel, " + std::to_string(sig_->num_channels()) + " channels)", pos_);
      ++pos_;
      std::size_t begin = pos_;
      int depth = 0;
      while (pos_ < text_.size()) {
        char ch = text_[pos_];
        if (ch == '(') ++depth;
        if (ch == ')') {
          if (depth == 0) break;
          --depth;
        }
        if (ch == ';' && depth == 0) break;
        ++pos_;
      }
      auto pattern = text_.substr(begin, pos_ - begin);
      try {
        p.channels.push_back(canonicalize(compile_regex(pattern, sig_->alphabet())));
      } catch (const SyntaxError& e) {
        throw SyntaxError(std::string(e.what()) + " in channel '" + sig_->channels()[c] + "'", 0,
                          begin + (e.column() == 0 ? 1 : e.column()));
      }
    }
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'", pos_);
    ++pos_;
    return Region::from_products(sig_, std::span<const Product>(&p, 1));
  }

  std::string_view text_;
  const SignaturePtr& sig_;
  const NamedRegions& named_;
  std::size_t pos_ = 0;
};

}  // namespace

Region parse_region(std::string_view text, const SignaturePtr& sig, const NamedRegions& named) {
  return RegionParser(text, sig, named).parse();
}

std::string format_region(const Region& region) {
  if (region.is_empty()) return "{}";
  if (region.is_universal()) return "all";
  const auto& sig = *region.signature();
  std::string out;
  for (const auto& p : region.summands()) {
    if (!out.empty()) out += " + ";
    out += "(" + sig.location_name(p.location);
    for (const auto& c : p.channels) out += "; " + to_regex(c);
    out += ")";
  }
  return out;
}

Config parse_config(std::string_view text, const Signature& sig) {
  auto colon = text.find(':');
  auto loc_text = trim(text.substr(0, colon));
  auto loc = sig.find_location(loc_text);
  if (!loc) throw SyntaxError("unknown location '" + std::string(loc_text) + "'", 0, 1);
  Config c{*loc, {}};
  if (colon == std::string_view::npos) {
    if (sig.num_channels() != 0) throw SyntaxError("expected ':' followed by channel contents", 0, text.size() + 1);
    return c;
  }
  auto rest = text.substr(colon + 1);
  if (sig.num_channels() == 0) {
    if (!trim(rest).empty()) throw SyntaxError("model has no channels", 0, colon + 2);
    return c;
  }
  std::size_t start = 0;
  while (true) {
    auto comma = rest.find(',', start);
    auto piece = rest.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    c.contents.push_back(sig.alphabet().parse_word(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (c.contents.size() != sig.num_channels())
    throw SyntaxError("expected " + std::to_string(sig.num_channels()) + " channel words, got " +
                          std::to_string(c.contents.size()),
                      0, colon + 2);
  return c;
}

std::string format_config(const Config& config, const Signature& sig) {
  std::string out = sig.location_name(config.location);
  if (sig.num_channels() == 0) return out;
  out += " :";
  for (std::size_t i = 0; i < config.contents.size(); ++i) {
    out += i == 0 ? " " : ", ";
    out += sig.alphabet().format_word(config.contents[i]);
  }
  return out;
}

}  // namespace wsmc
