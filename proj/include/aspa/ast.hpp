// Abstract syntax of ASP^A programs: constants, terms, atoms, aggregate atoms, rules.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "aspa/error.hpp"

namespace aspa {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::strong_ordering compare_integers(const Integer& a, const Integer& b) {
  int c = a.compare(b);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

// Integers precede symbols; integers by value, symbols lexicographically.
class Constant {
 public:
  Constant() = default;
  static Constant integer(Integer v) {
    Constant c;
    c.value_ = std::move(v);
    return c;
  }
  static Constant integer(long long v) { return integer(Integer(v)); }
  static Constant symbol(std::string s) {
    Constant c;
    c.value_ = std::move(s);
    return c;
  }

  bool is_integer() const noexcept { return value_.index() == 0; }
  const Integer& integer_value() const {
    if (!is_integer()) throw EvaluationError("non-integer constant '" + to_string() + "' used as a number");
    return std::get<0>(value_);
  }
  const std::string& symbol_name() const { return std::get<1>(value_); }

  std::string to_string() const {
    if (is_integer()) return std::get<0>(value_).str();
    return std::get<1>(value_);
  }

  friend std::strong_ordering operator<=>(const Constant& a, const Constant& b) {
    if (a.value_.index() != b.value_.index()) return a.value_.index() <=> b.value_.index();
    if (a.is_integer()) return compare_integers(std::get<0>(a.value_), std::get<0>(b.value_));
    return std::get<1>(a.value_) <=> std::get<1>(b.value_);
  }
  friend bool operator==(const Constant& a, const Constant& b) { return (a <=> b) == 0; }

 private:
  std::variant<Integer, std::string> value_{Integer(0)};
};

enum class VarKind : std::uint8_t { Global, Local };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Global;
  friend auto operator<=>(const Variable&, const Variable&) = default;
  friend bool operator==(const Variable&, const Variable&) = default;
};

using Term = std::variant<Constant, Variable>;

inline bool is_ground(const Term& t) { return std::holds_alternative<Constant>(t); }
inline std::string to_string(const Term& t) {
  if (auto c = std::get_if<Constant>(&t)) return c->to_string();
  return std::get<Variable>(t).name;
}

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  bool ground() const {
    for (const auto& t : args)
      if (!is_ground(t)) return false;
    return true;
  }
  std::string to_string() const {
    if (args.empty()) return predicate;
    std::string s = predicate + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) s += ",";
      s += aspa::to_string(args[i]);
    }
    return s + ")";
  }
  friend auto operator<=>(const Atom&, const Atom&) = default;
  friend bool operator==(const Atom&, const Atom&) = default;
};

using Interpretation = std::set<Atom>;

enum class AggFunc : std::uint8_t { Count, Sum, Min, Max, Avg };
enum class Relation : std::uint8_t { Eq, Ne, Lt, Le, Gt, Ge };
enum class Collection : std::uint8_t { Set, Multiset };

inline const char* to_string(AggFunc f) {
  switch (f) {
    case AggFunc::Count: return "COUNT";
    case AggFunc::Sum: return "SUM";
    case AggFunc::Min: return "MIN";
    case AggFunc::Max: return "MAX";
    case AggFunc::Avg: return "AVG";
  }
  return "?";
}

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::Eq: return "=";
    case Relation::Ne: return "!=";
    case Relation::Lt: return "<";
    case Relation::Le: return "<=";
    case Relation::Gt: return ">";
    case Relation::Ge: return ">=";
  }
  return "?";
}

// a REL b  <=>  b flip(REL) a
inline Relation flip(Relation r) {
  switch (r) {
    case Relation::Lt: return Relation::Gt;
    case Relation::Le: return Relation::Ge;
    case Relation::Gt: return Relation::Lt;
    case Relation::Ge: return Relation::Le;
    default: return r;
  }
}

template <class T>
bool holds(const T& a, Relation r, const T& b) {
  switch (r) {
    case Relation::Eq: return a == b;
    case Relation::Ne: return a != b;
    case Relation::Lt: return a < b;
    case Relation::Le: return a <= b;
    case Relation::Gt: return a > b;
    case Relation::Ge: return a >= b;
  }
  return false;
}

// {X : p(...)} or {{X : p(...)}}; `locals` are the non-collected local variables.
struct IntensionalSpec {
  Variable collected;
  std::vector<Variable> locals;
  Atom pattern;
  Collection collection = Collection::Set;
  friend auto operator<=>(const IntensionalSpec&, const IntensionalSpec&) = default;
  friend bool operator==(const IntensionalSpec&, const IntensionalSpec&) = default;
};

struct AggregateAtom {
  AggFunc func = AggFunc::Count;
  IntensionalSpec spec;
  Relation rel = Relation::Eq;
  Term guard;

  bool ground() const {
    if (!is_ground(guard)) return false;
    for (const auto& t : spec.pattern.args)
      if (auto v = std::get_if<Variable>(&t); v && v->kind == VarKind::Global) return false;
    return true;
  }
  std::string to_string() const {
    std::string open = spec.collection == Collection::Set ? "{ " : "{{ ";
    std::string close = spec.collection == Collection::Set ? " }" : " }}";
    return std::string(aspa::to_string(func)) + open + spec.collected.name + " : " +
           spec.pattern.to_string() + close + " " + aspa::to_string(rel) + " " + aspa::to_string(guard);
  }
  friend auto operator<=>(const AggregateAtom&, const AggregateAtom&) = default;
  friend bool operator==(const AggregateAtom&, const AggregateAtom&) = default;
};

enum class ArithOp : std::uint8_t { Plus, Minus };

// first [op second]
struct Expr {
  Term first;
  std::optional<std::pair<ArithOp, Term>> tail;
  friend auto operator<=>(const Expr&, const Expr&) = default;
  friend bool operator==(const Expr&, const Expr&) = default;
  std::string to_string() const {
    std::string s = aspa::to_string(first);
    if (tail) s += (tail->first == ArithOp::Plus ? " + " : " - ") + aspa::to_string(tail->second);
    return s;
  }
};

// left REL right; with REL '=' and an unbound left variable this is an assignment.
struct Builtin {
  Term left;
  Relation rel = Relation::Eq;
  Expr right;
  friend auto operator<=>(const Builtin&, const Builtin&) = default;
  friend bool operator==(const Builtin&, const Builtin&) = default;
  std::string to_string() const {
    return aspa::to_string(left) + " " + aspa::to_string(rel) + " " + right.to_string();
  }
};

struct Falsum {
  friend auto operator<=>(const Falsum&, const Falsum&) = default;
  friend bool operator==(const Falsum&, const Falsum&) = default;
};

using Head = std::variant<Falsum, Atom, AggregateAtom>;

struct Rule {
  Head head;
  std::vector<Atom> pos;
  std::vector<Atom> neg;
  std::vector<AggregateAtom> aggs;
  std::vector<Builtin> builtins;

  bool is_constraint() const { return std::holds_alternative<Falsum>(head); }
  bool has_aggregate_head() const { return std::holds_alternative<AggregateAtom>(head); }
  const Atom* head_atom() const { return std::get_if<Atom>(&head); }
  bool body_empty() const { return pos.empty() && neg.empty() && aggs.empty() && builtins.empty(); }
  bool is_fact() const { return head_atom() && body_empty(); }

  friend auto operator<=>(const Rule&, const Rule&) = default;
  friend bool operator==(const Rule&, const Rule&) = default;
};

// One #const_domain item: an integer interval or a single constant.
struct DomainItem {
  std::optional<Constant> single;
  Integer lo = 0, hi = -1;
  friend bool operator==(const DomainItem& a, const DomainItem& b) {
    return a.single == b.single && a.lo == b.lo && a.hi == b.hi;
  }
};

struct Program {
  std::vector<Rule> rules;
  std::vector<DomainItem> domain;
  std::set<Constant> constants;  // F_P
  friend bool operator==(const Program&, const Program&) = default;
};

inline std::string to_string(const Head& h) {
  if (std::holds_alternative<Falsum>(h)) return "";
  if (auto a = std::get_if<Atom>(&h)) return a->to_string();
  return std::get<AggregateAtom>(h).to_string();
}

inline std::string to_string(const Rule& r) {
  std::string s = to_string(r.head);
  if (r.body_empty()) return r.is_constraint() ? ":- ." : s + ".";
  std::vector<std::string> parts;
  for (const auto& a : r.pos) parts.push_back(a.to_string());
  for (const auto& a : r.neg) parts.push_back("not " + a.to_string());
  for (const auto& a : r.aggs) parts.push_back(a.to_string());
  for (const auto& b : r.builtins) parts.push_back(b.to_string());
  s += r.is_constraint() ? ":- " : " :- ";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : "") + parts[i];
  return s + ".";
}

inline std::string to_string(const Interpretation& I) {
  std::string s = "{";
  bool first = true;
  for (const auto& a : I) {
    s += (first ? "" : ", ") + a.to_string();
    first = false;
  }
  return s + "}";
}

inline std::ostream& operator<<(std::ostream& os, const Atom& a) { return os << a.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const Constant& c) { return os << c.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const AggregateAtom& a) { return os << a.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const Rule& r) { return os << to_string(r); }

inline Atom make_atom(std::string pred, std::vector<Constant> args) {
  Atom a{std::move(pred), {}};
  for (auto& c : args) a.args.emplace_back(std::move(c));
  return a;
}

// Smallest atom with the given predicate under the atom order; used for range scans.
inline Atom predicate_lower_bound(const std::string& pred) { return Atom{pred, {}}; }

struct PredicateSig {
  std::string name;
  std::size_t arity = 0;
  friend auto operator<=>(const PredicateSig&, const PredicateSig&) = default;
  friend bool operator==(const PredicateSig&, const PredicateSig&) = default;
  std::string to_string() const { return name + "/" + std::to_string(arity); }
};

inline PredicateSig signature(const Atom& a) { return {a.predicate, a.args.size()}; }

inline std::set<PredicateSig> predicates(const Program& p) {
  std::set<PredicateSig> out;
  for (const auto& r : p.rules) {
    if (auto a = r.head_atom()) out.insert(signature(*a));
    if (auto g = std::get_if<AggregateAtom>(&r.head)) out.insert(signature(g->spec.pattern));
    for (const auto& a : r.pos) out.insert(signature(a));
    for (const auto& a : r.neg) out.insert(signature(a));
    for (const auto& g : r.aggs) out.insert(signature(g.spec.pattern));
  }
  return out;
}

// B_P: every predicate of P applied to every tuple over F_P.
inline Interpretation herbrand_base(const Program& p, std::size_t max_atoms = 1'000'000) {
  Interpretation out;
  std::vector<Constant> consts(p.constants.begin(), p.constants.end());
  for (const auto& sig : predicates(p)) {
    if (sig.arity > 0 && consts.empty()) continue;
    std::vector<std::size_t> idx(sig.arity, 0);
    while (true) {
      Atom a{sig.name, {}};
      for (auto i : idx) a.args.emplace_back(consts[i]);
      out.insert(std::move(a));
      if (out.size() > max_atoms) throw ResourceError("Herbrand base exceeds " + std::to_string(max_atoms) + " atoms");
      std::size_t k = 0;
      while (k < sig.arity && ++idx[k] == consts.size()) idx[k++] = 0;
      if (k == sig.arity) break;
    }
  }
  return out;
}

// Ground smodels-style weight constraint  L <= { l1 = w1, ..., not r1 = v1, ... } <= U.
struct WeightLiteral {
  Atom atom;
  bool negated = false;
  Integer weight = 1;
  friend bool operator==(const WeightLiteral&, const WeightLiteral&) = default;
};

struct WeightConstraint {
  std::optional<Integer> lower, upper;
  std::vector<WeightLiteral> literals;
  friend bool operator==(const WeightConstraint&, const WeightConstraint&) = default;
  std::string to_string() const {
    std::string s;
    if (lower) s += lower->str() + " <= ";
    s += "{ ";
    for (std::size_t i = 0; i < literals.size(); ++i) {
      if (i) s += ", ";
      if (literals[i].negated) s += "not ";
      s += literals[i].atom.to_string() + " = " + literals[i].weight.str();
    }
    s += " }";
    if (upper) s += " <= " + upper->str();
    return s;
  }
};

struct WeightRule {
  Rule rule;
  std::vector<WeightConstraint> constraints;
};

struct WeightConstraintProgram {
  std::vector<WeightRule> rules;
  std::vector<DomainItem> domain;
  std::set<Constant> constants;
};

}  // namespace aspa
