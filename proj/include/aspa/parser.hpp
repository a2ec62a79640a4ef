// Lexer, recursive-descent parser and pretty-printer for the .aspa surface syntax.
#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aspa/ast.hpp"
#include "aspa/error.hpp"

namespace aspa {

namespace detail {

enum class Tok {
  Ident,     // lowercase-initial identifier
  Var,       // uppercase- or underscore-initial identifier
  Int,       // unsigned decimal literal
  LParen, RParen, LBrace, RBrace, LLBrace, RRBrace,
  Comma, Dot, DotDot, Colon, Bar, If,
  Eq, Ne, Lt, Le, Gt, Ge,
  Plus, Minus,
  Directive,  // #name
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePosition pos;
};

inline std::vector<Token> lex(std::string_view src, std::vector<ParseDiagnostic>& diags) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto peek = [&](std::size_t k) -> char { return i + k < src.size() ? src[i + k] : '\0'; };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '%') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    SourcePosition pos{line, col};
    auto push = [&](Tok k, std::size_t n) {
      out.push_back({k, std::string(src.substr(i, n)), pos});
      advance(n);
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '#') {
      std::size_t j = i + 1;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      Tok k = c == '#' ? Tok::Directive
                       : (std::islower(static_cast<unsigned char>(c)) ? Tok::Ident : Tok::Var);
      push(k, j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      push(Tok::Int, j - i);
      continue;
    }
    switch (c) {
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case '{': peek(1) == '{' ? push(Tok::LLBrace, 2) : push(Tok::LBrace, 1); continue;
      case '}': peek(1) == '}' ? push(Tok::RRBrace, 2) : push(Tok::RBrace, 1); continue;
      case ',': push(Tok::Comma, 1); continue;
      case '.': peek(1) == '.' ? push(Tok::DotDot, 2) : push(Tok::Dot, 1); continue;
      case ':': peek(1) == '-' ? push(Tok::If, 2) : push(Tok::Colon, 1); continue;
      case '|': push(Tok::Bar, 1); continue;
      case '+': push(Tok::Plus, 1); continue;
      case '-': push(Tok::Minus, 1); continue;
      case '=': peek(1) == '=' ? push(Tok::Eq, 2) : push(Tok::Eq, 1); continue;
      case '!':
        if (peek(1) == '=') {
          push(Tok::Ne, 2);
          continue;
        }
        break;
      case '<':
        if (peek(1) == '=') push(Tok::Le, 2);
        else if (peek(1) == '>') push(Tok::Ne, 2);
        else push(Tok::Lt, 1);
        continue;
      case '>': peek(1) == '=' ? push(Tok::Ge, 2) : push(Tok::Gt, 1); continue;
      default: break;
    }
    diags.push_back({pos, std::string("unexpected character '") + c + "'"});
    advance(1);
  }
  SourcePosition end{line, col};
  if (!out.empty() && col > 1) end = {line, col - 1};
  else if (!out.empty()) end = out.back().pos;
  out.push_back({Tok::End, "", end});
  return out;
}

inline bool is_relation(Tok t) {
  return t == Tok::Eq || t == Tok::Ne || t == Tok::Lt || t == Tok::Le || t == Tok::Gt || t == Tok::Ge;
}

inline Relation to_relation(Tok t) {
  switch (t) {
    case Tok::Eq: return Relation::Eq;
    case Tok::Ne: return Relation::Ne;
    case Tok::Lt: return Relation::Lt;
    case Tok::Le: return Relation::Le;
    case Tok::Gt: return Relation::Gt;
    default: return Relation::Ge;
  }
}

struct StatementError {
  ParseDiagnostic diag;
};

struct ParsedRule {
  Rule rule;
  std::vector<WeightConstraint> weights;
  SourcePosition pos;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, bool allow_weights) : t_(std::move(toks)), allow_weights_(allow_weights) {}

  std::vector<ParsedRule> rules;
  std::vector<DomainItem> domain;
  std::vector<ParseDiagnostic> diags;

  void parse_all() {
    while (cur().kind != Tok::End) {
      std::size_t start = p_;
      try {
        statement();
      } catch (const StatementError& e) {
        diags.push_back(e.diag);
        // resynchronise after the next '.'
        if (p_ == start) ++p_;
        while (cur().kind != Tok::End && cur().kind != Tok::Dot) ++p_;
        if (cur().kind == Tok::Dot) ++p_;
      }
    }
  }

  // Ground atom list: "p(1), q" / "{p(1) q}" / "p(1). q."
  Interpretation interpretation() {
    Interpretation I;
    while (cur().kind != Tok::End) {
      Tok k = cur().kind;
      if (k == Tok::Comma || k == Tok::Dot || k == Tok::LBrace || k == Tok::RBrace) {
        ++p_;
        continue;
      }
      Atom a = atom();
      if (!a.ground()) fail(cur().pos, "interpretation atoms must be ground");
      I.insert(std::move(a));
    }
    return I;
  }

 private:
  std::vector<Token> t_;
  std::size_t p_ = 0;
  bool allow_weights_;

  const Token& cur() const { return t_[p_]; }
  const Token& at(std::size_t k) const { return t_[std::min(p_ + k, t_.size() - 1)]; }
  [[noreturn]] void fail(SourcePosition pos, std::string msg) { throw StatementError{{pos, std::move(msg)}}; }
  [[noreturn]] void fail_here(const std::string& expected) {
    std::string got = cur().kind == Tok::End ? "end of input" : "'" + cur().text + "'";
    fail(cur().pos, "expected " + expected + ", found " + got);
  }
  const Token& expect(Tok k, const char* what) {
    if (cur().kind != k) fail_here(what);
    return t_[p_++];
  }
  bool accept(Tok k) {
    if (cur().kind == k) {
      ++p_;
      return true;
    }
    return false;
  }

  void statement() {
    SourcePosition pos = cur().pos;
    if (cur().kind == Tok::Directive) {
      directive();
      return;
    }
    ParsedRule pr;
    pr.pos = pos;
    if (accept(Tok::If)) {
      pr.rule.head = Falsum{};
      body(pr);
      expect(Tok::Dot, "'.'");
    } else {
      pr.rule.head = head();
      if (accept(Tok::If)) body(pr);
      expect(Tok::Dot, "'.' or ':-'");
    }
    rules.push_back(std::move(pr));
  }

  void directive() {
    const Token& d = t_[p_++];
    if (d.text != "#const_domain") fail(d.pos, "unknown directive '" + d.text + "'");
    do {
      SourcePosition pos = cur().pos;
      if (cur().kind == Tok::Ident) {
        domain.push_back({Constant::symbol(t_[p_++].text), 0, -1});
        continue;
      }
      Integer lo = integer_literal();
      if (accept(Tok::DotDot)) {
        Integer hi = integer_literal();
        if (hi < lo) fail(pos, "empty interval in #const_domain");
        domain.push_back({std::nullopt, lo, hi});
      } else {
        domain.push_back({Constant::integer(lo), 0, -1});
      }
    } while (accept(Tok::Comma));
    expect(Tok::Dot, "'.'");
  }

  Integer integer_literal() {
    bool negative = accept(Tok::Minus);
    const Token& n = expect(Tok::Int, "integer");
    Integer v(n.text);
    return negative ? Integer(-v) : v;
  }

  bool at_aggregate_start() const {
    return (cur().kind == Tok::Var || cur().kind == Tok::Ident) &&
           (at(1).kind == Tok::LBrace || at(1).kind == Tok::LLBrace);
  }

  bool at_term_start() const {
    return cur().kind == Tok::Var || cur().kind == Tok::Int || cur().kind == Tok::Minus;
  }

  Head head() {
    if (at_aggregate_start()) return aggregate_with_guard();
    if (cur().kind == Tok::LBrace || (cur().kind == Tok::Int && at(1).kind == Tok::LBrace))
      fail(cur().pos, "weight constraint in head is not supported");
    if (at_term_start() && is_relation(at(1).kind)) {
      Term g = term();
      Relation r = to_relation(t_[p_++].kind);
      if (cur().kind == Tok::LBrace) fail(cur().pos, "weight constraint in head is not supported");
      if (!at_aggregate_start()) fail_here("aggregate atom");
      return aggregate_body(flip(r), std::move(g));
    }
    if (cur().kind != Tok::Ident) fail_here("atom, aggregate atom or ':-'");
    return atom();
  }

  void body(ParsedRule& pr) {
    if (cur().kind == Tok::Dot) return;
    do {
      literal(pr);
    } while (accept(Tok::Comma));
  }

  void literal(ParsedRule& pr) {
    Rule& r = pr.rule;
    if (cur().kind == Tok::Ident && cur().text == "not") {
      ++p_;
      r.neg.push_back(atom());
      return;
    }
    if (at_aggregate_start()) {
      r.aggs.push_back(aggregate_with_guard());
      return;
    }
    if (cur().kind == Tok::LBrace) {
      pr.weights.push_back(weight_constraint(std::nullopt));
      return;
    }
    if (cur().kind == Tok::Int && at(1).kind == Tok::LBrace) {
      Integer lo = integer_literal();
      pr.weights.push_back(weight_constraint(lo));
      return;
    }
    if (cur().kind == Tok::Ident) {
      if (is_relation(at(1).kind)) {
        Term left = Constant::symbol(t_[p_++].text);
        builtin_rest(r, std::move(left));
        return;
      }
      r.pos.push_back(atom());
      return;
    }
    if (at_term_start()) {
      SourcePosition pos = cur().pos;
      Term left = term();
      if (!is_relation(cur().kind)) fail_here("comparison operator");
      Tok rt = cur().kind;
      if (at(1).kind == Tok::LBrace) {
        if (rt != Tok::Le) fail(pos, "weight constraint lower bound must use '<='");
        ++p_;
        if (!std::holds_alternative<Constant>(left) || !std::get<Constant>(left).is_integer())
          fail(pos, "weight constraint bounds must be integers");
        pr.weights.push_back(weight_constraint(std::get<Constant>(left).integer_value()));
        return;
      }
      ++p_;
      if (at_aggregate_start()) {
        r.aggs.push_back(aggregate_body(flip(to_relation(rt)), std::move(left)));
        return;
      }
      Builtin b{std::move(left), to_relation(rt), expr()};
      r.builtins.push_back(std::move(b));
      return;
    }
    fail_here("body literal");
  }

  void builtin_rest(Rule& r, Term left) {
    Relation rel = to_relation(t_[p_++].kind);
    r.builtins.push_back(Builtin{std::move(left), rel, expr()});
  }

  Expr expr() {
    Expr e{term(), std::nullopt};
    if (cur().kind == Tok::Plus || cur().kind == Tok::Minus) {
      ArithOp op = cur().kind == Tok::Plus ? ArithOp::Plus : ArithOp::Minus;
      ++p_;
      e.tail = std::make_pair(op, term());
    }
    return e;
  }

  Term term() {
    if (cur().kind == Tok::Var) return Variable{t_[p_++].text, VarKind::Global};
    if (cur().kind == Tok::Ident && cur().text != "not") return Constant::symbol(t_[p_++].text);
    if (cur().kind == Tok::Int || cur().kind == Tok::Minus) return Constant::integer(integer_literal());
    fail_here("term");
  }

  Atom atom() {
    if (cur().kind != Tok::Ident || cur().text == "not") fail_here("atom");
    Atom a{t_[p_++].text, {}};
    if (accept(Tok::LParen)) {
      do {
        a.args.push_back(term());
      } while (accept(Tok::Comma));
      expect(Tok::RParen, "')'");
    }
    return a;
  }

  static std::optional<AggFunc> agg_func(std::string name) {
    if (!name.empty() && name[0] == '#') name.erase(0, 1);
    for (auto& ch : name) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (name == "COUNT") return AggFunc::Count;
    if (name == "SUM") return AggFunc::Sum;
    if (name == "MIN") return AggFunc::Min;
    if (name == "MAX") return AggFunc::Max;
    if (name == "AVG") return AggFunc::Avg;
    return std::nullopt;
  }

  AggregateAtom aggregate_with_guard() {
    AggregateAtom a = aggregate_core();
    if (!is_relation(cur().kind)) fail_here("comparison operator after aggregate");
    a.rel = to_relation(t_[p_++].kind);
    a.guard = guard_term();
    return a;
  }

  AggregateAtom aggregate_body(Relation rel, Term guard) {
    check_guard(guard);
    AggregateAtom a = aggregate_core();
    a.rel = rel;
    a.guard = std::move(guard);
    return a;
  }

  Term guard_term() {
    SourcePosition pos = cur().pos;
    Term g = term();
    check_guard(g, pos);
    return g;
  }

  void check_guard(const Term& g, SourcePosition pos = {}) {
    if (auto c = std::get_if<Constant>(&g); c && !c->is_integer())
      fail(pos.line ? pos : cur().pos, "aggregate guard must be an integer or a variable");
  }

  AggregateAtom aggregate_core() {
    const Token& f = t_[p_++];
    auto func = agg_func(f.text);
    if (!func) fail(f.pos, "unknown aggregate function '" + f.text + "'");
    AggregateAtom a;
    a.func = *func;
    bool multi = cur().kind == Tok::LLBrace;
    a.spec.collection = multi ? Collection::Multiset : Collection::Set;
    ++p_;
    const Token& v = expect(Tok::Var, "collected variable");
    a.spec.collected = Variable{v.text, VarKind::Local};
    if (!accept(Tok::Colon) && !accept(Tok::Bar)) fail_here("':'");
    if (cur().kind == Tok::Var) fail(cur().pos, "only a single collected variable is supported");
    a.spec.pattern = atom();
    if (cur().kind == Tok::Comma) fail(cur().pos, "aggregate conditions must consist of a single atom");
    expect(multi ? Tok::RRBrace : Tok::RBrace, multi ? "'}}'" : "'}'");
    return a;
  }

  WeightConstraint weight_constraint(std::optional<Integer> lower) {
    SourcePosition pos = cur().pos;
    if (!allow_weights_) fail(pos, "weight constraints are only accepted by translate-weights");
    WeightConstraint c;
    c.lower = std::move(lower);
    expect(Tok::LBrace, "'{'");
    if (cur().kind != Tok::RBrace) {
      do {
        WeightLiteral l;
        if (cur().kind == Tok::Ident && cur().text == "not") {
          ++p_;
          l.negated = true;
        }
        l.atom = atom();
        if (accept(Tok::Eq)) {
          SourcePosition wp = cur().pos;
          l.weight = integer_literal();
          if (l.weight < 0) fail(wp, "negative weight");
        }
        c.literals.push_back(std::move(l));
      } while (accept(Tok::Comma));
    }
    expect(Tok::RBrace, "'}'");
    if (accept(Tok::Le)) c.upper = integer_literal();
    else if (cur().kind == Tok::Int || (cur().kind == Tok::Minus && at(1).kind == Tok::Int))
      c.upper = integer_literal();
    for (const auto& l : c.literals)
      if (!l.atom.ground()) fail(pos, "weight constraints must be ground");
    return c;
  }
};

inline void collect_vars(const Term& t, std::set<std::string>& out) {
  if (auto v = std::get_if<Variable>(&t)) out.insert(v->name);
}
inline void collect_vars(const Atom& a, std::set<std::string>& out) {
  for (const auto& t : a.args) collect_vars(t, out);
}
inline void collect_vars(const Builtin& b, std::set<std::string>& out) {
  collect_vars(b.left, out);
  collect_vars(b.right.first, out);
  if (b.right.tail) collect_vars(b.right.tail->second, out);
}

inline void set_kind(Atom& a, const std::string& name, VarKind k, const std::string& rename) {
  for (auto& t : a.args)
    if (auto v = std::get_if<Variable>(&t); v && v->name == name) {
      v->kind = k;
      v->name = rename;
    }
}

// Variable classification, renaming apart and safety for one rule.
inline void analyse_rule(Rule& r, SourcePosition pos) {
  auto err = [&](std::string m) { throw StatementError{{pos, std::move(m)}}; };
  std::set<std::string> outer;
  if (auto a = r.head_atom()) collect_vars(*a, outer);
  for (const auto& a : r.pos) collect_vars(a, outer);
  for (const auto& a : r.neg) collect_vars(a, outer);
  for (const auto& b : r.builtins) collect_vars(b, outer);
  std::vector<AggregateAtom*> aggs;
  for (auto& g : r.aggs) aggs.push_back(&g);
  if (auto g = std::get_if<AggregateAtom>(&r.head)) aggs.push_back(g);
  for (auto* g : aggs) collect_vars(g->guard, outer);

  std::set<std::string> used = outer, pattern_globals;
  for (auto* g : aggs) {
    IntensionalSpec& s = g->spec;
    const std::string cname = s.collected.name;
    if (outer.count(cname)) err("collected variable " + cname + " also occurs outside its aggregate");
    std::set<std::string> pv;
    collect_vars(s.pattern, pv);
    if (!pv.count(cname)) err("collected variable " + cname + " does not occur in the aggregate pattern");
    std::vector<std::string> locals;
    for (const auto& n : pv) {
      if (outer.count(n)) {
        set_kind(s.pattern, n, VarKind::Global, n);
        pattern_globals.insert(n);
      } else {
        locals.push_back(n);
      }
    }
    if (s.collection == Collection::Set && locals.size() > 1)
      err("set aggregate over " + s.pattern.predicate +
          " has local variables besides the collected one; use a multiset {{...}}");
    s.locals.clear();
    for (const auto& n : locals) {
      std::string fresh = n;
      for (int k = 2; used.count(fresh); ++k) fresh = n + "_" + std::to_string(k);
      used.insert(fresh);
      set_kind(s.pattern, n, VarKind::Local, fresh);
      if (n == cname) s.collected = Variable{fresh, VarKind::Local};
      else s.locals.push_back(Variable{fresh, VarKind::Local});
    }
  }

  // safety
  std::set<std::string> safe = pattern_globals;
  for (const auto& a : r.pos) collect_vars(a, safe);
  for (auto* g : aggs) collect_vars(g->guard, safe);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& b : r.builtins) {
      if (b.rel != Relation::Eq) continue;
      std::set<std::string> rv;
      collect_vars(b.right.first, rv);
      if (b.right.tail) collect_vars(b.right.tail->second, rv);
      auto all_safe = [&](const std::set<std::string>& vs) {
        for (const auto& v : vs)
          if (!safe.count(v)) return false;
        return true;
      };
      if (auto v = std::get_if<Variable>(&b.left); v && !safe.count(v->name) && all_safe(rv)) {
        safe.insert(v->name);
        changed = true;
      }
      if (!b.right.tail) {
        auto rvar = std::get_if<Variable>(&b.right.first);
        std::set<std::string> lv;
        collect_vars(b.left, lv);
        if (rvar && !safe.count(rvar->name) && all_safe(lv)) {
          safe.insert(rvar->name);
          changed = true;
        }
      }
    }
  }
  for (const auto& v : outer)
    if (!safe.count(v)) err("unsafe variable " + v);
}

inline std::set<Constant> program_constants(const std::vector<const Rule*>& rules,
                                            const std::vector<DomainItem>& domain) {
  std::set<Constant> out;
  auto add = [&](const Atom& a) {
    for (const auto& t : a.args)
      if (auto c = std::get_if<Constant>(&t)) out.insert(*c);
  };
  for (const Rule* r : rules) {
    if (auto a = r->head_atom()) add(*a);
    if (auto g = std::get_if<AggregateAtom>(&r->head)) add(g->spec.pattern);
    for (const auto& a : r->pos) add(a);
    for (const auto& a : r->neg) add(a);
    for (const auto& g : r->aggs) add(g.spec.pattern);
  }
  for (const auto& d : domain) {
    if (d.single) {
      out.insert(*d.single);
    } else {
      if (d.hi - d.lo > 1'000'000) throw ParseError({{{1, 1}, "#const_domain interval too large"}});
      for (Integer i = d.lo; i <= d.hi; ++i) out.insert(Constant::integer(i));
    }
  }
  return out;
}

inline Parser run_parser(std::string_view src, bool allow_weights) {
  std::vector<ParseDiagnostic> lex_diags;
  auto toks = lex(src, lex_diags);
  Parser p(std::move(toks), allow_weights);
  p.parse_all();
  for (auto& pr : p.rules) {
    try {
      analyse_rule(pr.rule, pr.pos);
    } catch (const StatementError& e) {
      p.diags.push_back(e.diag);
    }
  }
  p.diags.insert(p.diags.begin(), lex_diags.begin(), lex_diags.end());
  if (!p.diags.empty()) throw ParseError(p.diags);
  return p;
}

}  // namespace detail

// Parses an .aspa program; throws ParseError with every diagnostic found.
inline Program parse_program(std::string_view src) {
  auto p = detail::run_parser(src, false);
  Program out;
  std::vector<const Rule*> ptrs;
  for (auto& pr : p.rules) out.rules.push_back(std::move(pr.rule));
  for (const auto& r : out.rules) ptrs.push_back(&r);
  out.domain = std::move(p.domain);
  out.constants = detail::program_constants(ptrs, out.domain);
  return out;
}

// Accepts additionally ground weight constraints in rule bodies.
inline WeightConstraintProgram parse_weight_program(std::string_view src) {
  auto p = detail::run_parser(src, true);
  WeightConstraintProgram out;
  std::vector<const Rule*> ptrs;
  for (auto& pr : p.rules) out.rules.push_back({std::move(pr.rule), std::move(pr.weights)});
  for (const auto& r : out.rules) ptrs.push_back(&r.rule);
  out.domain = std::move(p.domain);
  out.constants = detail::program_constants(ptrs, out.domain);
  for (const auto& r : out.rules)
    for (const auto& c : r.constraints)
      for (const auto& l : c.literals)
        for (const auto& t : l.atom.args) out.constants.insert(std::get<Constant>(t));
  return out;
}

inline bool has_weight_constraints(const WeightConstraintProgram& w) {
  for (const auto& r : w.rules)
    if (!r.constraints.empty()) return true;
  return false;
}

inline Interpretation parse_interpretation(std::string_view src) {
  std::vector<ParseDiagnostic> diags;
  auto toks = detail::lex(src, diags);
  if (!diags.empty()) throw ParseError(diags);
  detail::Parser p(std::move(toks), false);
  try {
    return p.interpretation();
  } catch (const detail::StatementError& e) {
    throw ParseError({e.diag});
  }
}

inline Atom parse_ground_atom(std::string_view src) {
  auto I = parse_interpretation(src);
  if (I.size() != 1) throw ParseError({{{1, 1}, "expected exactly one ground atom"}});
  return *I.begin();
}

inline std::string format_domain(const std::vector<DomainItem>& domain) {
  if (domain.empty()) return "";
  std::string s = "#const_domain ";
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (i) s += ", ";
    const auto& d = domain[i];
    s += d.single ? d.single->to_string() : d.lo.str() + ".." + d.hi.str();
  }
  return s + ".\n";
}

inline std::string format_program(const Program& p) {
  std::string s = format_domain(p.domain);
  for (const auto& r : p.rules) s += to_string(r) + "\n";
  return s;
}

}  // namespace aspa
