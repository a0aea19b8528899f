#include "wsmc/model_text.hh"

#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include "wsmc/error.hh"

namespace wsmc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s.front()))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

struct Line {
  std::size_t number;
  std::string_view text;
};

class ModelParser {
 public:
  explicit ModelParser(std::string_view text) {
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++number;
      auto line = text.substr(start, end - start);
      line = line.substr(0, line.find('#'));
      line = trim(line);
      if (!line.empty()) lines_.push_back({number, line});
      start = end + 1;
    }
  }

  GlcsModel parse() {
    std::optional<std::vector<std::string>> alphabet;
    std::vector<std::string> channels;
    std::vector<std::string> locations;
    std::vector<Owner> owners;
    bool have_locations = false;

    std::size_t i = 0;
    for (; i < lines_.size(); ++i) {
      const auto& [number, text] = lines_[i];
      auto [key, rest] = header(text);
      if (key == "alphabet") {
        if (alphabet) fail(number, "alphabet declared twice");
        alphabet.emplace();
        for (auto tok : split_ws(rest)) {
          if (!is_identifier(tok)) fail(number, "invalid symbol name '" + std::string(tok) + "'");
          alphabet->emplace_back(tok);
        }
        if (alphabet->empty()) fail(number, "the alphabet needs at least one symbol");
      } else if (key == "channels") {
        for (auto tok : split_ws(rest)) {
          if (!is_identifier(tok)) fail(number, "invalid channel name '" + std::string(tok) + "'");
          channels.emplace_back(tok);
        }
      } else if (key == "locations") {
        have_locations = true;
        for (auto tok : split_ws(rest)) {
          Owner owner = Owner::kNone;
          auto bracket = tok.find('[');
          if (bracket != std::string_view::npos) {
            auto tag = tok.substr(bracket);
            if (tag == "[A]")
              owner = Owner::kA;
            else if (tag == "[B]")
              owner = Owner::kB;
            else
              fail(number, "owner must be [A] or [B] in '" + std::string(tok) + "'");
            tok = tok.substr(0, bracket);
          }
          if (!is_identifier(tok)) fail(number, "invalid location name '" + std::string(tok) + "'");
          locations.emplace_back(tok);
          owners.push_back(owner);
        }
        if (locations.empty()) fail(number, "at least one location is required");
      } else {
        break;
      }
    }
    std::size_t first_body = i < lines_.size() ? lines_[i].number : lines_.empty() ? 1 : lines_.back().number;
    if (!alphabet) fail(first_body, "missing 'alphabet:' declaration");
    if (!have_locations) fail(first_body, "missing 'locations:' declaration");

    SignaturePtr sig;
    try {
      sig = std::make_shared<const Signature>(Alphabet(*alphabet), channels, locations, owners);
    } catch (const Error& e) {
      fail(first_body, e.what());
    }

    NamedRegions named;
    std::vector<Rule> rules;
    for (; i < lines_.size(); ++i) {
      const auto& [number, text] = lines_[i];
      auto words = split_ws(text);
      if (words.front() == "region") {
        parse_region_decl(number, text.substr(6), sig, named);
      } else if (words.front() == "rule") {
        rules.push_back(parse_rule(number, text.substr(4), sig, named));
      } else if (header(text).first == "alphabet" || header(text).first == "channels" ||
                 header(text).first == "locations") {
        fail(number, "declarations must precede regions and rules");
      } else {
        fail(number, "expected 'region' or 'rule'");
      }
    }
    try {
      return GlcsModel(sig, std::move(rules), std::move(named));
    } catch (const Error& e) {
      fail(first_body, e.what());
    }
  }

 private:
  [[noreturn]] static void fail(std::size_t line, const std::string& msg) { throw SyntaxError(msg, line, 0); }

  static std::pair<std::string_view, std::string_view> header(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) return {{}, {}};
    return {trim(text.substr(0, colon)), text.substr(colon + 1)};
  }

  static Region region_at(std::size_t line, std::string_view text, const SignaturePtr& sig,
                          const NamedRegions& named) {
    try {
      return parse_region(trim(text), sig, named);
    } catch (const SyntaxError& e) {
      throw SyntaxError(std::string(e.what()) + " in region expression", line, 0);
    } catch (const Error& e) {
      fail(line, e.what());
    }
  }

  static void parse_region_decl(std::size_t line, std::string_view text, const SignaturePtr& sig,
                                NamedRegions& named) {
    auto eq = text.find('=');
    if (eq == std::string_view::npos) fail(line, "expected 'region NAME = expression'");
    auto name = trim(text.substr(0, eq));
    if (!is_identifier(name)) fail(line, "invalid region name '" + std::string(name) + "'");
    if (is_reserved_name(name)) fail(line, "region name '" + std::string(name) + "' is reserved");
    if (sig->find_location(name) || sig->alphabet().find(name))
      fail(line, "region name '" + std::string(name) + "' clashes with a location or symbol");
    if (named.count(name)) fail(line, "region '" + std::string(name) + "' declared twice");
    auto value = region_at(line, text.substr(eq + 1), sig, named);
    named.emplace(std::string(name), std::move(value));
  }

  static Rule parse_rule(std::size_t line, std::string_view text, const SignaturePtr& sig,
                         const NamedRegions& named) {
    Rule rule;
    auto arrow = text.find("->");
    auto colon = text.find(':');
    if (arrow == std::string_view::npos || colon == std::string_view::npos || colon < arrow)
      fail(line, "expected 'rule SOURCE -> TARGET : OP [guard REGION]'");
    auto source = trim(text.substr(0, arrow));
    auto target = trim(text.substr(arrow + 2, colon - arrow - 2));
    auto src = sig->find_location(source);
    if (!src) fail(line, "unknown location '" + std::string(source) + "'");
    auto dst = sig->find_location(target);
    if (!dst) fail(line, "unknown location '" + std::string(target) + "'");
    rule.source = *src;
    rule.target = *dst;

    auto rest = trim(text.substr(colon + 1));
    std::string_view op_text = rest;
    std::string_view guard_text;
    auto space = rest.find_first_of(" \t");
    if (space != std::string_view::npos) {
      op_text = rest.substr(0, space);
      auto tail = trim(rest.substr(space));
      if (tail.substr(0, 5) != "guard" ||
          (tail.size() > 5 && !std::isspace(static_cast<unsigned char>(tail[5]))))
        fail(line, "expected 'guard' after the operation");
      guard_text = trim(tail.substr(5));
      if (guard_text.empty()) fail(line, "missing guard region");
    }
    if (op_text == "nop") {
      rule.op.kind = Operation::Kind::kInternal;
    } else {
      auto mark = op_text.find_first_of("!?");
      if (mark == std::string_view::npos) fail(line, "operation must be c!m, c?m or nop");
      auto channel = op_text.substr(0, mark);
      auto symbol = op_text.substr(mark + 1);
      auto c = sig->find_channel(channel);
      if (!c) fail(line, "unknown channel '" + std::string(channel) + "'");
      auto m = sig->alphabet().find(symbol);
      if (!m) fail(line, "unknown symbol '" + std::string(symbol) + "'");
      rule.op.kind = op_text[mark] == '!' ? Operation::Kind::kSend : Operation::Kind::kReceive;
      rule.op.channel = *c;
      rule.op.symbol = *m;
    }
    if (!guard_text.empty()) rule.guard = region_at(line, guard_text, sig, named);
    return rule;
  }

  std::vector<Line> lines_;
};

}  // namespace

bool is_reserved_name(std::string_view name) {
  static constexpr std::array<std::string_view, 20> kReserved{
      "mu",  "nu",   "up",   "down",  "kup",   "kdown", "empty", "all",   "pre",  "prep",
      "post", "postp", "wpre", "wprep", "confA", "confB", "true",  "false", "guard", "rule"};
  for (auto r : kReserved)
    if (r == name) return true;
  return false;
}

GlcsModel parse_model(std::string_view text) { return ModelParser(text).parse(); }

GlcsModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read model file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_model(buffer.str());
}

}  // namespace wsmc
