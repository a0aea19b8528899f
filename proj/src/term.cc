#include "wsmc/term.hh"

#include <algorithm>
#include <cctype>
#include <set>

#include "wsmc/error.hh"

namespace wsmc {

// ---------------------------------------------------------------------------
// Construction

Term Term::make(TermKind kind, std::string name, std::vector<Term> children) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->name = std::move(name);
  node->children = std::move(children);
  std::set<std::string> free;
  if (kind == TermKind::kVar) free.insert(node->name);
  for (const auto& c : node->children) free.insert(c.free_variables().begin(), c.free_variables().end());
  if (kind == TermKind::kMu || kind == TermKind::kNu) free.erase(node->name);
  node->free.assign(free.begin(), free.end());
  return Term(std::move(node));
}

Term Term::empty() { return make(TermKind::kEmpty, {}, {}); }
Term Term::full() { return make(TermKind::kFull, {}, {}); }
Term Term::var(std::string name) { return make(TermKind::kVar, std::move(name), {}); }
Term Term::op(std::string name, std::vector<Term> args) { return make(TermKind::kOp, std::move(name), std::move(args)); }
Term Term::unite(Term a, Term b) { return make(TermKind::kUnion, {}, {std::move(a), std::move(b)}); }
Term Term::intersect(Term a, Term b) { return make(TermKind::kIntersect, {}, {std::move(a), std::move(b)}); }
Term Term::complement(Term a) { return make(TermKind::kComplement, {}, {std::move(a)}); }
Term Term::up(Term a) { return make(TermKind::kUp, {}, {std::move(a)}); }
Term Term::down(Term a) { return make(TermKind::kDown, {}, {std::move(a)}); }
Term Term::kup(Term a) { return make(TermKind::kKUp, {}, {std::move(a)}); }
Term Term::kdown(Term a) { return make(TermKind::kKDown, {}, {std::move(a)}); }
Term Term::mu(std::string var, Term body) { return make(TermKind::kMu, std::move(var), {std::move(body)}); }
Term Term::nu(std::string var, Term body) { return make(TermKind::kNu, std::move(var), {std::move(body)}); }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  return a.kind() == b.kind() && a.name() == b.name() && a.children() == b.children();
}

namespace {

Term rebuild(const Term& t, std::vector<Term> children, std::string name) {
  switch (t.kind()) {
    case TermKind::kEmpty: return Term::empty();
    case TermKind::kFull: return Term::full();
    case TermKind::kVar: return Term::var(std::move(name));
    case TermKind::kOp: return Term::op(std::move(name), std::move(children));
    case TermKind::kUnion: return Term::unite(children[0], children[1]);
    case TermKind::kIntersect: return Term::intersect(children[0], children[1]);
    case TermKind::kComplement: return Term::complement(children[0]);
    case TermKind::kUp: return Term::up(children[0]);
    case TermKind::kDown: return Term::down(children[0]);
    case TermKind::kKUp: return Term::kup(children[0]);
    case TermKind::kKDown: return Term::kdown(children[0]);
    case TermKind::kMu: return Term::mu(std::move(name), children[0]);
    case TermKind::kNu: return Term::nu(std::move(name), children[0]);
  }
  return t;
}

void collect_names(const Term& t, std::set<std::string>& out) {
  if (!t.name().empty()) out.insert(t.name());
  for (const auto& c : t.children()) collect_names(c, out);
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  for (std::size_t n = 1;; ++n) {
    auto candidate = base + "_" + std::to_string(n);
    if (!avoid.count(candidate)) return candidate;
  }
}

// ---------------------------------------------------------------------------
// Renaming binders apart, with the complement-parity check.

struct Scoped {
  std::string original;
  std::string renamed;
  std::size_t depth;
};

class Freshener {
 public:
  explicit Freshener(const Term& t) {
    collect_names(t, avoid_);
    taken_.insert(t.free_variables().begin(), t.free_variables().end());
    collect_ops(t);
  }

  Term run(const Term& t, std::size_t depth) {
    switch (t.kind()) {
      case TermKind::kVar: {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
          if (it->original == t.name()) {
            if ((depth - it->depth) % 2 != 0)
              throw TermError("bound variable " + t.name() + " occurs under an odd number of complements");
            return Term::var(it->renamed);
          }
        return t;
      }
      case TermKind::kMu:
      case TermKind::kNu: {
        std::string name = t.name();
        if (taken_.count(name)) name = fresh_name(name, merged());
        taken_.insert(name);
        scope_.push_back({t.name(), name, depth});
        auto body = run(t.child(), depth);
        scope_.pop_back();
        return rebuild(t, {body}, name);
      }
      default: {
        std::vector<Term> children;
        std::size_t d = depth + (t.kind() == TermKind::kComplement ? 1 : 0);
        for (const auto& c : t.children()) children.push_back(run(c, d));
        return rebuild(t, std::move(children), t.name());
      }
    }
  }

 private:
  void collect_ops(const Term& t) {
    if (t.kind() == TermKind::kOp) taken_.insert(t.name());
    for (const auto& c : t.children()) collect_ops(c);
  }

  std::set<std::string> merged() const {
    auto all = avoid_;
    all.insert(taken_.begin(), taken_.end());
    return all;
  }

  std::set<std::string> avoid_;
  std::set<std::string> taken_;
  std::vector<Scoped> scope_;
};

// ---------------------------------------------------------------------------
// Parser

class TermParser {
 public:
  TermParser(std::string_view text, const ArityLookup& arity) : text_(text), arity_(arity) {}

  Term parse() {
    auto t = formula();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, 0, pos_ + 1); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::optional<std::string> peek_ident() {
    skip_ws();
    std::size_t p = pos_;
    if (p >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[p])) || text_[p] == '_'))
      return std::nullopt;
    while (p < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[p])) || text_[p] == '_')) ++p;
    return std::string(text_.substr(pos_, p - pos_));
  }

  std::string ident() {
    auto id = peek_ident();
    if (!id) fail("expected an identifier");
    pos_ += id->size();
    return *id;
  }

  Term formula() {
    auto id = peek_ident();
    if (id && (*id == "mu" || *id == "nu")) {
      pos_ += id->size();
      std::size_t at = pos_;
      auto var = ident();
      if (arity_(var) && *arity_(var) > 0) {
        pos_ = at;
        fail("binder name " + var + " is an operator");
      }
      expect('.');
      bound_.push_back(var);
      auto body = formula();
      bound_.pop_back();
      return *id == "mu" ? Term::mu(var, body) : Term::nu(var, body);
    }
    auto t = conjunction();
    while (peek('|')) {
      ++pos_;
      t = Term::unite(t, conjunction());
    }
    return t;
  }

  Term conjunction() {
    auto t = unary();
    while (peek('&')) {
      ++pos_;
      t = Term::intersect(t, unary());
    }
    return t;
  }

  Term unary() {
    if (peek('!')) {
      ++pos_;
      return Term::complement(unary());
    }
    auto id = peek_ident();
    if (id && (*id == "mu" || *id == "nu")) return formula();
    return atom();
  }

  Term atom() {
    if (peek('(')) {
      ++pos_;
      auto t = formula();
      expect(')');
      return t;
    }
    std::size_t at = pos_;
    auto id = peek_ident();
    if (!id) fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'" : "unexpected end of formula");
    pos_ += id->size();
    if (*id == "empty") return Term::empty();
    if (*id == "all") return Term::full();
    static const std::pair<const char*, Term (*)(Term)> kGuards[] = {
        {"up", &Term::up}, {"down", &Term::down}, {"kup", &Term::kup}, {"kdown", &Term::kdown}};
    for (const auto& [name, make] : kGuards)
      if (*id == name) {
        expect('(');
        auto t = formula();
        expect(')');
        return make(t);
      }
    if (std::find(bound_.begin(), bound_.end(), *id) != bound_.end()) {
      if (peek('(')) fail(*id + " is a bound variable, not an operator");
      return Term::var(*id);
    }
    auto arity = arity_(*id);
    if (peek('(')) {
      if (!arity) {
        pos_ = at;
        fail("unknown operator " + *id);
      }
      ++pos_;
      std::vector<Term> args;
      if (!peek(')')) {
        args.push_back(formula());
        while (peek(',')) {
          ++pos_;
          args.push_back(formula());
        }
      }
      expect(')');
      if (args.size() != *arity) {
        pos_ = at;
        fail("operator " + *id + " expects " + std::to_string(*arity) + " argument(s), got " +
             std::to_string(args.size()));
      }
      return Term::op(*id, std::move(args));
    }
    if (arity) {
      if (*arity != 0) {
        pos_ = at;
        fail("operator " + *id + " expects " + std::to_string(*arity) + " argument(s)");
      }
      return Term::op(*id);
    }
    return Term::var(*id);
  }

  std::string_view text_;
  const ArityLookup& arity_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

// ---------------------------------------------------------------------------
// Printer

enum Prec { kTop = 0, kOr = 1, kAnd = 2, kUnary = 3 };

void print(const Term& t, int ctx, std::string& out) {
  auto wrap = [&](int own, auto&& body) {
    bool parens = own < ctx;
    if (parens) out += '(';
    body();
    if (parens) out += ')';
  };
  switch (t.kind()) {
    case TermKind::kEmpty: out += "empty"; return;
    case TermKind::kFull: out += "all"; return;
    case TermKind::kVar: out += t.name(); return;
    case TermKind::kOp:
      out += t.name();
      if (!t.children().empty()) {
        out += '(';
        for (std::size_t i = 0; i < t.children().size(); ++i) {
          if (i > 0) out += ", ";
          print(t.child(i), kTop, out);
        }
        out += ')';
      }
      return;
    case TermKind::kUnion:
      wrap(kOr, [&] {
        print(t.child(0), kOr, out);
        out += " | ";
        print(t.child(1), kAnd, out);
      });
      return;
    case TermKind::kIntersect:
      wrap(kAnd, [&] {
        print(t.child(0), kAnd, out);
        out += " & ";
        print(t.child(1), kUnary, out);
      });
      return;
    case TermKind::kComplement:
      out += '!';
      print(t.child(), kUnary, out);
      return;
    case TermKind::kUp:
    case TermKind::kDown:
    case TermKind::kKUp:
    case TermKind::kKDown: {
      static const char* const kNames[] = {"up", "down", "kup", "kdown"};
      out += kNames[static_cast<int>(t.kind()) - static_cast<int>(TermKind::kUp)];
      out += '(';
      print(t.child(), kTop, out);
      out += ')';
      return;
    }
    case TermKind::kMu:
    case TermKind::kNu:
      wrap(kTop, [&] {
        out += t.kind() == TermKind::kMu ? "mu " : "nu ";
        out += t.name();
        out += ". ";
        print(t.child(), kTop, out);
      });
      return;
  }
}

// ---------------------------------------------------------------------------
// Guardedness

void scan_occurrences(const Term& t, const std::string& var, bool greatest, bool odd, bool up, bool down,
                      std::vector<std::size_t>& path, std::vector<GuardViolation>& out) {
  switch (t.kind()) {
    case TermKind::kVar:
      if (t.name() == var && !(greatest ? down : up)) out.push_back({var, greatest, path});
      return;
    case TermKind::kMu:
    case TermKind::kNu:
      if (t.name() == var) return;
      break;
    default:
      break;
  }
  bool is_up = t.kind() == TermKind::kUp || t.kind() == TermKind::kKUp;
  bool is_down = t.kind() == TermKind::kDown || t.kind() == TermKind::kKDown;
  bool next_up = up || (is_up && !odd) || (is_down && odd);
  bool next_down = down || (is_down && !odd) || (is_up && odd);
  bool next_odd = odd != (t.kind() == TermKind::kComplement);
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    path.push_back(i);
    scan_occurrences(t.child(i), var, greatest, next_odd, next_up, next_down, path, out);
    path.pop_back();
  }
}

void collect_violations(const Term& t, std::vector<GuardViolation>& out) {
  if (t.is_binder()) {
    std::vector<std::size_t> path;
    scan_occurrences(t.child(), t.name(), t.kind() == TermKind::kNu, false, false, false, path, out);
  }
  for (const auto& c : t.children()) collect_violations(c, out);
}

void collect_binders(const Term& t, std::vector<std::string>& out) {
  if (t.is_binder()) out.push_back(t.name());
  for (const auto& c : t.children()) collect_binders(c, out);
}

Term substitute_avoiding(const Term& t, std::string_view var, const Term& value, std::set<std::string>& avoid) {
  if (std::find(t.free_variables().begin(), t.free_variables().end(), var) == t.free_variables().end()) return t;
  if (t.kind() == TermKind::kVar) return value;
  if (t.is_binder()) {
    Term body = t.child();
    std::string name = t.name();
    const auto& fv = value.free_variables();
    if (std::find(fv.begin(), fv.end(), name) != fv.end()) {
      auto renamed = fresh_name(name, avoid);
      avoid.insert(renamed);
      body = substitute_avoiding(body, name, Term::var(renamed), avoid);
      name = renamed;
    }
    return rebuild(t, {substitute_avoiding(body, var, value, avoid)}, name);
  }
  std::vector<Term> children;
  for (const auto& c : t.children()) children.push_back(substitute_avoiding(c, var, value, avoid));
  return rebuild(t, std::move(children), t.name());
}

/// Copy of `t` with every binder renamed to a name outside `avoid`.
Term rename_binders(const Term& t, std::set<std::string>& avoid) {
  if (t.is_binder()) {
    auto renamed = fresh_name(t.name(), avoid);
    avoid.insert(renamed);
    auto body = substitute_avoiding(t.child(), t.name(), Term::var(renamed), avoid);
    return rebuild(t, {rename_binders(body, avoid)}, renamed);
  }
  if (t.children().empty()) return t;
  std::vector<Term> children;
  for (const auto& c : t.children()) children.push_back(rename_binders(c, avoid));
  return rebuild(t, std::move(children), t.name());
}

bool unfold_in(const Term& t, std::string_view binder, std::set<std::string>& avoid, Term& out) {
  if (t.is_binder() && t.name() == binder) {
    auto copy = rename_binders(t.child(), avoid);
    out = rebuild(t, {substitute_avoiding(t.child(), binder, copy, avoid)}, t.name());
    return true;
  }
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    Term replaced = t.child(i);
    if (unfold_in(t.child(i), binder, avoid, replaced)) {
      auto children = t.children();
      children[i] = replaced;
      out = rebuild(t, std::move(children), t.name());
      return true;
    }
  }
  return false;
}

}  // namespace

Term parse_term(std::string_view text, const ArityLookup& arity) {
  auto raw = TermParser(text, arity).parse();
  return Freshener(raw).run(raw, 0);
}

std::string to_string(const Term& t) {
  std::string out;
  print(t, kTop, out);
  return out;
}

std::vector<GuardViolation> check_guarded(const Term& t) {
  std::vector<GuardViolation> out;
  collect_violations(t, out);
  return out;
}

bool is_guarded(const Term& t) { return check_guarded(t).empty(); }

std::string describe(const GuardViolation& v) {
  std::string out = "unguarded binder " + v.binder + ": an occurrence of " + v.binder + " is not under ";
  out += v.greatest ? "down/kdown" : "up/kup";
  out += " (path ";
  if (v.path.empty()) out += "body";
  for (std::size_t i = 0; i < v.path.size(); ++i) {
    if (i > 0) out += '.';
    out += std::to_string(v.path[i]);
  }
  return out + ")";
}

Term substitute(const Term& t, std::string_view var, const Term& value) {
  std::set<std::string> avoid;
  collect_names(t, avoid);
  collect_names(value, avoid);
  return substitute_avoiding(t, var, value, avoid);
}

Term unfold(const Term& t, std::string_view binder) {
  std::set<std::string> avoid;
  collect_names(t, avoid);
  Term out = t;
  if (!unfold_in(t, binder, avoid, out)) throw TermError("no binder named " + std::string(binder));
  return out;
}

std::vector<std::string> binders(const Term& t) {
  std::vector<std::string> out;
  collect_binders(t, out);
  return out;
}

}  // namespace wsmc
