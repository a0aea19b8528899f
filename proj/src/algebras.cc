#include "wsmc/algebras.hh"

#include "wsmc/error.hh"
#include "wsmc/language.hh"

namespace wsmc {

namespace {

struct OpInfo {
  std::string_view name;
  std::size_t arity;
};

constexpr OpInfo kWordOps[] = {{"concat", 2}, {"star", 1}, {"reverse", 1}, {"shuffle", 2}, {"lres", 2}, {"rres", 2}};
constexpr OpInfo kConfigOps[] = {{"pre", 1},  {"prep", 1},  {"post", 1}, {"postp", 1},
                                 {"wpre", 1}, {"wprep", 1}, {"confA", 0}, {"confB", 0}};

template <std::size_t N>
std::optional<std::size_t> lookup(const OpInfo (&table)[N], std::string_view name) {
  for (const auto& op : table)
    if (op.name == name) return op.arity;
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------
// Words

WordAlgebra::WordAlgebra(Alphabet alphabet, std::map<std::string, CanonicalDfa, std::less<>> constants)
    : alphabet_(std::move(alphabet)), constants_(std::move(constants)) {
  for (const auto& [name, value] : constants_) {
    if (lookup(kWordOps, name)) throw TermError("constant " + name + " shadows an operator");
    if (!(value.alphabet() == alphabet_)) throw AlphabetMismatch();
  }
}

WordAlgebra::Value WordAlgebra::empty() const { return empty_dfa(alphabet_); }
WordAlgebra::Value WordAlgebra::full() const { return universal_dfa(alphabet_); }
WordAlgebra::Value WordAlgebra::unite(const Value& a, const Value& b) const { return wsmc::unite(a, b); }
WordAlgebra::Value WordAlgebra::intersect(const Value& a, const Value& b) const { return wsmc::intersect(a, b); }
WordAlgebra::Value WordAlgebra::complement(const Value& a) const { return wsmc::complement(a); }
WordAlgebra::Value WordAlgebra::up(const Value& a) const { return up_closure(a); }
WordAlgebra::Value WordAlgebra::down(const Value& a) const { return down_closure(a); }
WordAlgebra::Value WordAlgebra::kup(const Value& a) const { return up_kernel(a); }
WordAlgebra::Value WordAlgebra::kdown(const Value& a) const { return down_kernel(a); }
bool WordAlgebra::subset(const Value& a, const Value& b) const { return is_subset(a, b); }

std::optional<std::size_t> WordAlgebra::arity(std::string_view name) const {
  if (auto a = lookup(kWordOps, name)) return a;
  if (constants_.find(name) != constants_.end()) return 0;
  return std::nullopt;
}

WordAlgebra::Value WordAlgebra::apply(std::string_view name, std::span<const Value> args) const {
  auto expected = arity(name);
  if (!expected) throw TermError("unknown operator " + std::string(name));
  if (*expected != args.size()) throw TermError("wrong number of arguments for " + std::string(name));
  if (name == "concat") return concat(args[0], args[1]);
  if (name == "star") return star(args[0]);
  if (name == "reverse") return reverse(args[0]);
  if (name == "shuffle") return shuffle(args[0], args[1]);
  if (name == "lres") return left_residual(args[0], args[1]);
  if (name == "rres") return right_residual(args[0], args[1]);
  return constants_.find(name)->second;
}

// ---------------------------------------------------------------------------
// Configurations

ConfigAlgebra::ConfigAlgebra(const GlcsModel& model, NamedRegions constants)
    : model_(model),
      constants_(std::move(constants)),
      conf_a_(model.owned_by(Owner::kA)),
      conf_b_(model.owned_by(Owner::kB)) {
  for (const auto& [name, value] : constants_) {
    if (lookup(kConfigOps, name)) throw TermError("constant " + name + " shadows an operator");
    if (!(*value.signature() == model.sig())) throw SignatureMismatch();
  }
}

ConfigAlgebra::Value ConfigAlgebra::empty() const { return Region::empty(model_.signature()); }
ConfigAlgebra::Value ConfigAlgebra::full() const { return Region::full(model_.signature()); }
ConfigAlgebra::Value ConfigAlgebra::unite(const Value& a, const Value& b) const { return wsmc::unite(a, b); }
ConfigAlgebra::Value ConfigAlgebra::intersect(const Value& a, const Value& b) const { return wsmc::intersect(a, b); }
ConfigAlgebra::Value ConfigAlgebra::complement(const Value& a) const { return wsmc::complement(a); }
ConfigAlgebra::Value ConfigAlgebra::up(const Value& a) const { return up_closure(a); }
ConfigAlgebra::Value ConfigAlgebra::down(const Value& a) const { return down_closure(a); }
ConfigAlgebra::Value ConfigAlgebra::kup(const Value& a) const { return up_kernel(a); }
ConfigAlgebra::Value ConfigAlgebra::kdown(const Value& a) const { return down_kernel(a); }
bool ConfigAlgebra::subset(const Value& a, const Value& b) const { return is_subset(a, b); }

const Region* ConfigAlgebra::constant(std::string_view name) const {
  if (auto it = constants_.find(name); it != constants_.end()) return &it->second;
  if (auto it = model_.named_regions().find(name); it != model_.named_regions().end()) return &it->second;
  return nullptr;
}

std::optional<std::size_t> ConfigAlgebra::arity(std::string_view name) const {
  if (auto a = lookup(kConfigOps, name)) return a;
  if (constant(name)) return 0;
  return std::nullopt;
}

ConfigAlgebra::Value ConfigAlgebra::apply(std::string_view name, std::span<const Value> args) const {
  auto expected = arity(name);
  if (!expected) throw TermError("unknown operator " + std::string(name));
  if (*expected != args.size()) throw TermError("wrong number of arguments for " + std::string(name));
  if (name == "pre") return pre(model_, args[0], StepMode::kLossy);
  if (name == "prep") return pre(model_, args[0], StepMode::kPerfect);
  if (name == "post") return post(model_, args[0], StepMode::kLossy);
  if (name == "postp") return post(model_, args[0], StepMode::kPerfect);
  if (name == "wpre") return wpre(model_, args[0], StepMode::kLossy);
  if (name == "wprep") return wpre(model_, args[0], StepMode::kPerfect);
  if (name == "confA") return conf_a_;
  if (name == "confB") return conf_b_;
  return *constant(name);
}

}  // namespace wsmc
