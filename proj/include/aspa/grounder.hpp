// Instantiation of programs, aggregate bases, dependency analysis and classification.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aspa/aggregates.hpp"
#include "aspa/ast.hpp"
#include "aspa/limits.hpp"
#include "aspa/model.hpp"

namespace aspa {

struct GroundProgram {
  std::vector<Rule> rules;
  std::set<Constant> constants;             // F_P
  Interpretation atoms;                     // every ground atom occurring in a rule or head base
  Interpretation heads;                     // rule heads plus full bases of head aggregates
  std::vector<AggregateAtom> aggregates;    // sorted, unique

  bool has_aggregate_heads() const {
    for (const auto& r : rules)
      if (r.has_aggregate_head()) return true;
    return false;
  }
};

inline bool is_model(const Interpretation& I, const GroundProgram& G) { return is_model(I, G.rules); }

namespace detail {

using Binding = std::map<std::string, Constant>;

inline Term substitute(const Term& t, const Binding& b) {
  if (auto v = std::get_if<Variable>(&t); v && v->kind == VarKind::Global) {
    auto it = b.find(v->name);
    if (it != b.end()) return it->second;
  }
  return t;
}

inline Atom substitute(const Atom& a, const Binding& b) {
  Atom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const auto& t : a.args) out.args.push_back(substitute(t, b));
  return out;
}

inline AggregateAtom substitute(const AggregateAtom& l, const Binding& b) {
  AggregateAtom out = l;
  out.spec.pattern = substitute(l.spec.pattern, b);
  out.guard = substitute(l.guard, b);
  return out;
}

// Instances of the pattern's local variables over the given constants.
inline std::vector<Atom> pattern_instances(const AggregateAtom& l, const std::set<Constant>& consts,
                                           std::size_t cap) {
  std::vector<Variable> vars = l.spec.locals;
  vars.push_back(l.spec.collected);
  std::vector<Constant> all(consts.begin(), consts.end()), ints;
  for (const auto& c : all)
    if (c.is_integer()) ints.push_back(c);
  std::vector<Atom> out;
  Binding b;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == vars.size()) {
      Atom a{l.spec.pattern.predicate, {}};
      for (const auto& t : l.spec.pattern.args) {
        if (auto v = std::get_if<Variable>(&t)) a.args.push_back(b.at(v->name));
        else a.args.push_back(t);
      }
      out.push_back(std::move(a));
      if (out.size() > cap) throw ResourceError("full-pattern base exceeds " + std::to_string(cap) + " atoms");
      return;
    }
    bool numeric = vars[i].name == l.spec.collected.name && l.func != AggFunc::Count;
    for (const auto& c : numeric ? ints : all) {
      b[vars[i].name] = c;
      self(self, i + 1);
    }
    b.erase(vars[i].name);
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct EvalResult {
  enum { Unbound, Invalid, Value } state = Unbound;
  Constant value;
};

inline EvalResult eval_term(const Term& t, const Binding& b) {
  if (auto c = std::get_if<Constant>(&t)) return {EvalResult::Value, *c};
  auto it = b.find(std::get<Variable>(t).name);
  if (it == b.end()) return {};
  return {EvalResult::Value, it->second};
}

inline EvalResult eval_expr(const Expr& e, const Binding& b) {
  EvalResult x = eval_term(e.first, b);
  if (!e.tail || x.state != EvalResult::Value) return x;
  EvalResult y = eval_term(e.tail->second, b);
  if (y.state != EvalResult::Value) return y;
  if (!x.value.is_integer() || !y.value.is_integer()) return {EvalResult::Invalid, {}};
  const Integer& a = x.value.integer_value();
  const Integer& c = y.value.integer_value();
  return {EvalResult::Value, Constant::integer(e.tail->first == ArithOp::Plus ? Integer(a + c) : Integer(a - c))};
}

inline bool compare_constants(const Constant& a, Relation r, const Constant& b) {
  if (r == Relation::Eq) return a == b;
  if (r == Relation::Ne) return !(a == b);
  return holds(a, r, b);
}

class RuleInstantiator {
 public:
  RuleInstantiator(const Rule& r, const std::set<Constant>& consts,
                   const std::map<PredicateSig, std::vector<Atom>>& index)
      : r_(r), consts_(consts), index_(index) {
    for (const auto& c : consts)
      if (c.is_integer()) ints_.push_back(c);
    std::set<std::string> seen;
    auto note = [&](const Term& t, std::map<std::string, int>& dom, int kind) {
      if (auto v = std::get_if<Variable>(&t); v && v->kind == VarKind::Global) {
        if (seen.insert(v->name).second) order_.push_back(v->name);
        dom[v->name] = std::max(dom[v->name], kind);
      }
    };
    std::vector<const AggregateAtom*> aggs;
    for (const auto& g : r.aggs) aggs.push_back(&g);
    if (auto g = std::get_if<AggregateAtom>(&r.head)) aggs.push_back(g);
    for (const auto* g : aggs) {
      for (const auto& t : g->spec.pattern.args) note(t, domain_, 2);  // 2: all constants
      note(g->guard, domain_, 1);                                       // 1: integers only
    }
  }

  void run(const std::function<void(const Binding&)>& emit) {
    emit_ = &emit;
    join(0);
  }

 private:
  const Rule& r_;
  const std::set<Constant>& consts_;
  const std::map<PredicateSig, std::vector<Atom>>& index_;
  std::vector<Constant> ints_;
  std::vector<std::string> order_;
  std::map<std::string, int> domain_;
  Binding b_;
  const std::function<void(const Binding&)>* emit_ = nullptr;

  void join(std::size_t i) {
    if (i == r_.pos.size()) {
      resolve();
      return;
    }
    const Atom& pat = r_.pos[i];
    auto it = index_.find(signature(pat));
    if (it == index_.end()) return;
    for (const auto& a : it->second) {
      std::vector<std::string> added;
      bool ok = true;
      for (std::size_t k = 0; k < pat.args.size() && ok; ++k) {
        const Constant& c = std::get<Constant>(a.args[k]);
        if (auto pc = std::get_if<Constant>(&pat.args[k])) {
          ok = *pc == c;
        } else {
          const auto& name = std::get<Variable>(pat.args[k]).name;
          auto bit = b_.find(name);
          if (bit == b_.end()) {
            b_.emplace(name, c);
            added.push_back(name);
          } else {
            ok = bit->second == c;
          }
        }
      }
      if (ok) join(i + 1);
      for (const auto& n : added) b_.erase(n);
    }
  }

  // Fires builtin assignments, then enumerates remaining pattern/guard variables.
  void resolve() {
    std::vector<std::string> added;
    bool pruned = false;
    for (bool changed = true; changed && !pruned;) {
      changed = false;
      for (const auto& bi : r_.builtins) {
        if (bi.rel != Relation::Eq) continue;
        auto lv = std::get_if<Variable>(&bi.left);
        EvalResult rv = eval_expr(bi.right, b_);
        if (lv && !b_.count(lv->name) && rv.state != EvalResult::Unbound) {
          if (rv.state == EvalResult::Invalid || !consts_.count(rv.value)) {
            pruned = true;
            break;
          }
          b_.emplace(lv->name, rv.value);
          added.push_back(lv->name);
          changed = true;
          continue;
        }
        auto rvar = std::get_if<Variable>(&bi.right.first);
        if (!bi.right.tail && rvar && !b_.count(rvar->name)) {
          EvalResult l = eval_term(bi.left, b_);
          if (l.state == EvalResult::Value) {
            if (!consts_.count(l.value)) {
              pruned = true;
              break;
            }
            b_.emplace(rvar->name, l.value);
            added.push_back(rvar->name);
            changed = true;
          }
        }
      }
    }
    if (!pruned) {
      std::string next;
      for (const auto& v : order_)
        if (!b_.count(v)) {
          next = v;
          break;
        }
      if (!next.empty()) {
        const auto& dom = domain_.at(next) == 2 ? std::vector<Constant>(consts_.begin(), consts_.end()) : ints_;
        for (const auto& c : dom) {
          b_.emplace(next, c);
          resolve();
          b_.erase(next);
        }
      } else if (check_builtins()) {
        (*emit_)(b_);
      }
    }
    for (const auto& n : added) b_.erase(n);
  }

  bool check_builtins() const {
    for (const auto& bi : r_.builtins) {
      EvalResult l = eval_term(bi.left, b_), rv = eval_expr(bi.right, b_);
      if (l.state != EvalResult::Value || rv.state != EvalResult::Value)
        throw InvariantError("builtin left unbound after instantiation: " + bi.to_string());
      if (!compare_constants(l.value, bi.rel, rv.value)) return false;
    }
    return true;
  }
};

inline Rule instantiate(const Rule& r, const Binding& b) {
  Rule g;
  if (auto a = r.head_atom()) g.head = substitute(*a, b);
  else if (auto l = std::get_if<AggregateAtom>(&r.head)) g.head = substitute(*l, b);
  else g.head = Falsum{};
  for (const auto& a : r.pos) g.pos.push_back(substitute(a, b));
  for (const auto& a : r.neg) g.neg.push_back(substitute(a, b));
  for (const auto& l : r.aggs) g.aggs.push_back(substitute(l, b));
  return g;
}

}  // namespace detail

// ground(P): positive bodies are joined against the atoms derivable when naf literals and
// aggregates are ignored; instances with an underivable positive body atom are omitted.
inline GroundProgram ground_program(const Program& P, const Limits& lim = {}) {
  GroundProgram G;
  G.constants = P.constants;
  Interpretation D;
  std::vector<Rule> out;
  while (true) {
    std::map<PredicateSig, std::vector<Atom>> index;
    for (const auto& a : D) index[signature(a)].push_back(a);
    Interpretation pending;
    std::set<Rule> seen;
    out.clear();
    for (const auto& r : P.rules) {
      detail::RuleInstantiator inst(r, P.constants, index);
      inst.run([&](const detail::Binding& b) {
        Rule g = detail::instantiate(r, b);
        if (!seen.insert(g).second) return;
        if (auto h = g.head_atom(); h && !D.count(*h)) pending.insert(*h);
        if (auto l = std::get_if<AggregateAtom>(&g.head))
          for (auto& a : detail::pattern_instances(*l, P.constants, lim.max_ground_rules))
            if (!D.count(a)) pending.insert(std::move(a));
        out.push_back(std::move(g));
        if (out.size() > lim.max_ground_rules)
          throw ResourceError("grounding exceeds " + std::to_string(lim.max_ground_rules) + " ground rules");
      });
    }
    if (pending.empty()) break;
    D.merge(pending);
  }
  G.rules = std::move(out);
  std::set<AggregateAtom> aggs;
  for (const auto& r : G.rules) {
    if (auto h = r.head_atom()) G.heads.insert(*h);
    if (auto l = std::get_if<AggregateAtom>(&r.head)) {
      aggs.insert(*l);
      for (auto& a : detail::pattern_instances(*l, G.constants, lim.max_ground_rules)) G.heads.insert(std::move(a));
    }
    for (const auto& a : r.pos) G.atoms.insert(a);
    for (const auto& a : r.neg) G.atoms.insert(a);
    for (const auto& l : r.aggs) aggs.insert(l);
  }
  G.atoms.insert(G.heads.begin(), G.heads.end());
  G.aggregates.assign(aggs.begin(), aggs.end());
  return G;
}

// H(l) for a ground aggregate atom of G.
inline std::vector<Atom> aggregate_base(const AggregateAtom& l, const GroundProgram& G,
                                        BaseMode mode = BaseMode::HeadRestricted, const Limits& lim = {}) {
  if (mode == BaseMode::FullPattern) return detail::pattern_instances(l, G.constants, lim.max_ground_rules);
  std::vector<Atom> out;
  // heads are ordered by predicate then arguments: seek past the leading constant arguments
  Atom lo{l.spec.pattern.predicate, {}};
  for (const auto& t : l.spec.pattern.args) {
    if (!std::holds_alternative<Constant>(t)) break;
    lo.args.push_back(t);
  }
  const std::size_t fixed = lo.args.size();
  for (auto it = G.heads.lower_bound(lo); it != G.heads.end() && it->predicate == lo.predicate; ++it) {
    if (!std::equal(lo.args.begin(), lo.args.end(), it->args.begin(), it->args.begin() + std::min(fixed, it->args.size())))
      break;
    if (auto v = match_pattern(l.spec, *it)) {
      if (l.func != AggFunc::Count && !v->is_integer()) continue;
      out.push_back(*it);
    }
  }
  return out;
}

enum class EdgeKind { Positive, Negative, Aggregate };

inline const char* to_string(EdgeKind k) {
  return k == EdgeKind::Positive ? "positive" : (k == EdgeKind::Negative ? "negative" : "aggregate");
}

struct DependencyEdge {
  PredicateSig from, to;
  EdgeKind kind;
  friend auto operator<=>(const DependencyEdge&, const DependencyEdge&) = default;
  friend bool operator==(const DependencyEdge&, const DependencyEdge&) = default;
};

struct DependencyGraph {
  std::set<PredicateSig> nodes;
  std::set<DependencyEdge> edges;
};

inline std::optional<PredicateSig> head_predicate(const Rule& r) {
  if (auto a = r.head_atom()) return signature(*a);
  if (auto l = std::get_if<AggregateAtom>(&r.head)) return signature(l->spec.pattern);
  return std::nullopt;
}

inline DependencyGraph dependency_graph(const std::vector<Rule>& rules) {
  DependencyGraph g;
  for (const auto& r : rules) {
    auto h = head_predicate(r);
    if (h) g.nodes.insert(*h);
    auto add = [&](const Atom& a, EdgeKind k) {
      g.nodes.insert(signature(a));
      if (h) g.edges.insert({*h, signature(a), k});
    };
    for (const auto& a : r.pos) add(a, EdgeKind::Positive);
    for (const auto& a : r.neg) add(a, EdgeKind::Negative);
    for (const auto& l : r.aggs) add(l.spec.pattern, EdgeKind::Aggregate);
  }
  return g;
}

inline DependencyGraph dependency_graph(const Program& P) { return dependency_graph(P.rules); }

// Strongly connected components (Tarjan); component ids are in reverse topological order.
inline std::map<PredicateSig, int> scc_ids(const DependencyGraph& g) {
  std::map<PredicateSig, std::vector<PredicateSig>> adj;
  for (const auto& e : g.edges) adj[e.from].push_back(e.to);
  std::map<PredicateSig, int> index, low, comp;
  std::vector<PredicateSig> stack;
  std::set<PredicateSig> on;
  int counter = 0, ncomp = 0;
  std::function<void(const PredicateSig&)> visit = [&](const PredicateSig& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on.insert(v);
    for (const auto& w : adj[v]) {
      if (!index.count(w)) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on.count(w)) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      while (true) {
        auto w = stack.back();
        stack.pop_back();
        on.erase(w);
        comp[w] = ncomp;
        if (w == v) break;
      }
      ++ncomp;
    }
  };
  for (const auto& v : g.nodes)
    if (!index.count(v)) visit(v);
  return comp;
}

// lev: predicate -> level, or nullopt when some SCC contains a negative or aggregate edge.
inline std::optional<std::map<PredicateSig, int>> stratification(const DependencyGraph& g) {
  auto comp = scc_ids(g);
  for (const auto& e : g.edges)
    if (e.kind != EdgeKind::Positive && comp.at(e.from) == comp.at(e.to)) return std::nullopt;
  int ncomp = 0;
  for (const auto& [_, c] : comp) ncomp = std::max(ncomp, c + 1);
  // Tarjan ids: dependencies get smaller ids, so increasing id order is topological.
  std::vector<int> level(ncomp, 0);
  std::map<int, std::vector<const DependencyEdge*>> out_edges;
  for (const auto& e : g.edges) out_edges[comp.at(e.from)].push_back(&e);
  for (int c = 0; c < ncomp; ++c)
    for (const auto* e : out_edges[c]) {
      int t = comp.at(e->to);
      if (t == c) continue;
      level[c] = std::max(level[c], level[t] + (e->kind == EdgeKind::Positive ? 0 : 1));
    }
  std::map<PredicateSig, int> lev;
  for (const auto& [p, c] : comp) lev[p] = level[c];
  return lev;
}

// Predicates defined only by facts.
inline std::set<PredicateSig> edb_predicates(const std::vector<Rule>& rules) {
  std::set<PredicateSig> all, idb;
  for (const auto& r : rules) {
    for (const auto& a : r.pos) all.insert(signature(a));
    for (const auto& a : r.neg) all.insert(signature(a));
    for (const auto& l : r.aggs) all.insert(signature(l.spec.pattern));
    auto h = head_predicate(r);
    if (!h) continue;
    all.insert(*h);
    if (!r.is_fact()) idb.insert(*h);
  }
  std::set<PredicateSig> out;
  for (const auto& p : all)
    if (!idb.count(p)) out.insert(p);
  return out;
}

// B: the facts over EDB predicates.
inline Interpretation edb_facts(const std::vector<Rule>& rules) {
  auto edb = edb_predicates(rules);
  Interpretation B;
  for (const auto& r : rules)
    if (r.is_fact() && edb.count(signature(*r.head_atom()))) B.insert(*r.head_atom());
  return B;
}

struct ProgramClass {
  bool has_head_aggregates = false;
  bool is_aggregate_stratified = false;
  bool is_normal = false;  // no aggregates anywhere
  bool has_constraints = false;
  Tri is_monotone = Tri::False;
  std::map<PredicateSig, int> levels;
};

inline ProgramClass classify(const Program& P, const GroundProgram& G, BaseMode mode = BaseMode::HeadRestricted,
                             const Limits& lim = {}) {
  ProgramClass c;
  bool has_naf = false, has_aggs = false;
  for (const auto& r : P.rules) {
    c.has_head_aggregates |= r.has_aggregate_head();
    c.has_constraints |= r.is_constraint();
    has_naf |= !r.neg.empty();
    has_aggs |= !r.aggs.empty() || r.has_aggregate_head();
  }
  c.is_normal = !has_aggs;
  auto lev = stratification(dependency_graph(P));
  c.is_aggregate_stratified = lev.has_value() && !c.has_head_aggregates;
  if (lev) c.levels = *lev;
  if (has_naf || c.has_head_aggregates || c.has_constraints) {
    c.is_monotone = Tri::False;
  } else {
    Interpretation B = edb_facts(G.rules);
    c.is_monotone = Tri::True;
    for (const auto& l : G.aggregates) {
      Tri t = is_monotone_atom(l, aggregate_base(l, G, mode, lim), B, lim);
      if (t == Tri::False) {
        c.is_monotone = Tri::False;
        break;
      }
      if (t == Tri::Unknown) c.is_monotone = Tri::Unknown;
    }
  }
  return c;
}

inline ProgramClass classify(const Program& P, const Limits& lim = {}) {
  return classify(P, ground_program(P, lim), BaseMode::HeadRestricted, lim);
}

// Ground program rendered as a Program value (for printing and re-grounding).
inline Program to_program(const GroundProgram& G) {
  Program p;
  p.rules = G.rules;
  p.constants = G.constants;
  for (const auto& c : G.constants) p.domain.push_back({c, 0, -1});
  return p;
}

}  // namespace aspa
