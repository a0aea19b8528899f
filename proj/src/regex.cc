#include "wsmc/regex.hh"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "wsmc/error.hh"
#include "wsmc/language.hh"

namespace wsmc {

namespace {

struct Token {
  enum Kind { kSymbol, kPunct, kEnd } kind;
  char punct = 0;
  Symbol symbol = 0;
  std::size_t column = 0;
};

std::vector<Token> lex(std::string_view text, const Alphabet& alphabet) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (is_ident(c)) {
      std::size_t j = i;
      while (j < text.size() && is_ident(text[j])) ++j;
      auto ident = text.substr(i, j - i);
      auto word = alphabet.resolve_token(ident);
      if (!word) throw SyntaxError("unknown symbol '" + std::string(ident) + "'", 0, i + 1);
      for (std::size_t k = 0; k < word->size(); ++k)
        out.push_back({Token::kSymbol, 0, (*word)[k], word->size() == 1 ? i + 1 : i + 1 + k});
      i = j;
      continue;
    }
    if (std::string_view("|*+?().{}~").find(c) == std::string_view::npos)
      throw SyntaxError(std::string("unexpected character '") + c + "'", 0, i + 1);
    out.push_back({Token::kPunct, c, 0, i + 1});
    ++i;
  }
  out.push_back({Token::kEnd, 0, 0, text.size() + 1});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Alphabet& alphabet)
      : tokens_(std::move(tokens)), alphabet_(alphabet) {}

  Nfa parse() {
    Nfa n = alternation();
    if (peek().kind != Token::kEnd) fail("unexpected token");
    return n;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  bool at(char c) const { return peek().kind == Token::kPunct && peek().punct == c; }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, 0, peek().column); }

  void expect(char c) {
    if (!at(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool starts_unary() const {
    const auto& t = peek();
    if (t.kind == Token::kSymbol) return true;
    return t.kind == Token::kPunct && (t.punct == '(' || t.punct == '.' || t.punct == '{' || t.punct == '~');
  }

  Nfa alternation() {
    Nfa n = concatenation();
    while (at('|')) {
      ++pos_;
      n = unite(n, concatenation());
    }
    return n;
  }

  Nfa concatenation() {
    if (!starts_unary()) fail("expected an expression");
    Nfa n = unary();
    while (starts_unary()) n = concat(n, unary());
    return n;
  }

  Nfa unary() {
    if (at('~')) {
      ++pos_;
      if (!starts_unary()) fail("expected an expression after '~'");
      return complement(unary());
    }
    return postfix();
  }

  Nfa postfix() {
    Nfa n = atom();
    while (at('*') || at('+') || at('?')) {
      char op = peek().punct;
      ++pos_;
      if (op == '*') n = star(n);
      else if (op == '+') n = concat(n, star(n));
      else n = unite(n, Nfa::epsilon(alphabet_));
    }
    return n;
  }

  Nfa atom() {
    const auto& t = peek();
    if (t.kind == Token::kSymbol) {
      ++pos_;
      return Nfa::word(alphabet_, {t.symbol});
    }
    if (at('.')) {
      ++pos_;
      return Nfa::any_symbol(alphabet_);
    }
    if (at('{')) {
      ++pos_;
      expect('}');
      return Nfa::empty_language(alphabet_);
    }
    if (at('(')) {
      ++pos_;
      if (at(')')) {
        ++pos_;
        return Nfa::epsilon(alphabet_);
      }
      Nfa n = alternation();
      expect(')');
      return n;
    }
    fail("expected an expression");
  }

  std::vector<Token> tokens_;
  const Alphabet& alphabet_;
  std::size_t pos_ = 0;
};

// Regular expressions under construction during state elimination. A value
// is a set of alternatives for nonempty words plus a flag for the empty word.
struct Piece {
  std::string text;
  int prec;  // 0 alternation, 1 concatenation, 2 atom or postfix
  bool starred = false;
  auto operator<=>(const Piece& o) const { return text <=> o.text; }
  bool operator==(const Piece& o) const { return text == o.text; }
};

struct Rx {
  bool has_eps = false;
  std::set<Piece> alts;

  bool is_empty() const { return !has_eps && alts.empty(); }
  bool is_eps() const { return has_eps && alts.empty(); }
};

std::string group(const Piece& p, int min_prec) {
  return p.prec >= min_prec ? p.text : "(" + p.text + ")";
}

Piece render(const Rx& r) {
  if (r.is_empty()) return {"{}", 2};
  if (r.is_eps()) return {"()", 2};
  Piece body;
  if (r.alts.size() == 1) {
    body = *r.alts.begin();
  } else {
    std::string text;
    for (const auto& p : r.alts) {
      if (!text.empty()) text += "|";
      text += group(p, 1);
    }
    body = {text, 0};
  }
  if (!r.has_eps) return body;
  if (body.starred) return body;  // x* already contains the empty word
  return {group(body, 2) + "?", 2};
}

class Builder {
 public:
  explicit Builder(const Alphabet& alphabet) : sep_(alphabet.single_char() ? "" : " ") {}

  Rx alt(const Rx& a, const Rx& b) const {
    Rx r = a;
    r.has_eps = a.has_eps || b.has_eps;
    r.alts.insert(b.alts.begin(), b.alts.end());
    // x* absorbs the empty word; drop a redundant flag so x*|() prints as x*.
    if (r.has_eps && r.alts.size() == 1 && r.alts.begin()->starred) r.has_eps = false;
    return r;
  }

  Rx cat(const Rx& a, const Rx& b) const {
    if (a.is_empty() || b.is_empty()) return {};
    if (a.is_eps()) return b;
    if (b.is_eps()) return a;
    Piece pa = render(a), pb = render(b);
    Rx r;
    r.alts.insert({group(pa, 1) + sep_ + group(pb, 1), 1});
    return r;
  }

  Rx star(const Rx& a) const {
    Rx r;
    if (a.alts.empty()) {
      r.has_eps = true;
      return r;
    }
    Rx inner = a;
    inner.has_eps = false;
    Piece p = render(inner);
    if (p.starred) {
      r.alts.insert(p);
      return r;
    }
    r.alts.insert({group(p, 2) + "*", 2, true});
    return r;
  }

 private:
  std::string sep_;
};

}  // namespace

Nfa compile_regex(std::string_view pattern, const Alphabet& alphabet) {
  Parser p(lex(pattern, alphabet), alphabet);
  return p.parse();
}

std::string to_regex(const CanonicalDfa& dfa) {
  if (dfa.is_empty()) return "{}";
  if (dfa.is_universal()) return ".*";
  const auto& alphabet = dfa.alphabet();
  const auto k = alphabet.size();
  const auto n = dfa.num_states();

  // Live states: co-reachable to acceptance (all states are reachable).
  std::vector<char> live(n, 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (State s = 0; s < n; ++s) {
      if (live[s]) continue;
      bool l = dfa.is_accepting(s);
      for (Symbol a = 0; a < k && !l; ++a) l = live[dfa.next(s, a)];
      if (l) {
        live[s] = 1;
        changed = true;
      }
    }
  }

  Builder b(alphabet);
  // Node n is the fresh initial node, n + 1 the fresh final node.
  const std::size_t N = n + 2;
  std::vector<std::vector<Rx>> edge(N, std::vector<Rx>(N));
  for (State s = 0; s < n; ++s) {
    if (!live[s]) continue;
    std::map<State, std::vector<Symbol>> by_target;
    for (Symbol a = 0; a < k; ++a)
      if (live[dfa.next(s, a)]) by_target[dfa.next(s, a)].push_back(a);
    for (const auto& [t, syms] : by_target) {
      Rx r;
      if (syms.size() == k) {
        r.alts.insert({".", 2});
      } else {
        for (Symbol a : syms) r.alts.insert({alphabet.name(a), 2});
      }
      edge[s][t] = r;
    }
    if (dfa.is_accepting(s)) edge[s][n + 1].has_eps = true;
  }
  edge[n][0].has_eps = true;

  for (State m = 0; m < n; ++m) {
    if (!live[m]) continue;
    Rx loop = b.star(edge[m][m]);
    for (std::size_t i = 0; i < N; ++i) {
      if (i == m || edge[i][m].is_empty()) continue;
      Rx head = b.cat(edge[i][m], loop);
      for (std::size_t j = 0; j < N; ++j) {
        if (j == m || edge[m][j].is_empty()) continue;
        edge[i][j] = b.alt(edge[i][j], b.cat(head, edge[m][j]));
      }
    }
    for (std::size_t i = 0; i < N; ++i) {
      edge[i][m] = Rx{};
      edge[m][i] = Rx{};
    }
  }
  return render(edge[n][n + 1]).text;
}

}  // namespace wsmc
