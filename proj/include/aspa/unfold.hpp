// Unfolding of aggregate programs, the interpretation-relative unfolding, the aggregate-free head
// reduct, and the translation of weight constraints into aggregates.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "aspa/aggregates.hpp"
#include "aspa/grounder.hpp"
#include "aspa/parser.hpp"
#include "aspa/solver.hpp"

namespace aspa {

enum class SolutionMode { Full, Minimal };

using SolutionTable = std::map<AggregateAtom, SolutionSet>;

inline SolutionSet solutions_for(const AggregateAtom& l, const std::vector<Atom>& base, SolutionMode mode,
                                 const Limits& lim) {
  return mode == SolutionMode::Full ? all_solutions(l, base, lim) : minimal_complete_solutions(l, base, lim);
}

// Solution sets for every body aggregate of G.
inline SolutionTable solution_table(const GroundProgram& G, SolutionMode mode, BaseMode base_mode = BaseMode::HeadRestricted,
                                    const Limits& lim = {}) {
  SolutionTable t;
  for (const auto& r : G.rules)
    for (const auto& l : r.aggs)
      if (!t.count(l)) t.emplace(l, solutions_for(l, aggregate_base(l, G, base_mode, lim), mode, lim));
  return t;
}

inline std::vector<NormalRule> unfold_rule(const Rule& r, const SolutionTable& sols) {
  if (r.has_aggregate_head()) throw PreconditionError("unfold_rule: aggregate head in " + to_string(r));
  std::vector<const SolutionSet*> sets;
  for (const auto& l : r.aggs) {
    auto it = sols.find(l);
    if (it == sols.end()) throw PreconditionError("no solution set for " + l.to_string());
    sets.push_back(&it->second);
  }
  std::vector<NormalRule> out;
  std::set<NormalRule> seen;
  NormalRule base;
  if (auto h = r.head_atom()) base.head = *h;
  std::vector<std::size_t> choice(sets.size(), 0);
  for (const auto* s : sets)
    if (s->solutions.empty()) return out;
  while (true) {
    NormalRule u = base;
    u.pos = r.pos;
    u.neg = r.neg;
    for (std::size_t k = 0; k < sets.size(); ++k) {
      const auto& sol = sets[k]->solutions[choice[k]];
      u.pos.insert(u.pos.end(), sol.p.begin(), sol.p.end());
      u.neg.insert(u.neg.end(), sol.n.begin(), sol.n.end());
    }
    normalize(u.pos);
    normalize(u.neg);
    if (seen.insert(u).second) out.push_back(std::move(u));
    std::size_t k = sets.size();
    while (k > 0) {
      --k;
      if (++choice[k] < sets[k]->solutions.size()) break;
      choice[k] = 0;
      if (k == 0) return out;
    }
    if (sets.empty()) return out;
  }
}

inline NormalProgram unfold_with(const GroundProgram& G, const SolutionTable& table) {
  NormalProgram n;
  std::set<NormalRule> seen;
  for (const auto& r : G.rules)
    for (auto& u : unfold_rule(r, table))
      if (seen.insert(u).second) n.rules.push_back(std::move(u));
  return n;
}

// unfolding(P) with SOLN(c) (full) or a minimal complete solution set per aggregate (minimal).
inline NormalProgram unfold_program(const GroundProgram& G, SolutionMode mode = SolutionMode::Minimal,
                                    BaseMode base_mode = BaseMode::HeadRestricted, const Limits& lim = {}) {
  if (G.has_aggregate_heads())
    throw PreconditionError("program has aggregate heads; use the head-reduct based semantics");
  return unfold_with(G, solution_table(G, mode, base_mode, lim));
}

// unfolding*(P, M). With `minimal_parts` only ⊆-minimal M-solution p-parts are used; the least model is unchanged.
inline DefiniteProgram unfold_program_wrt(const GroundProgram& G, const Interpretation& M,
                                          BaseMode base_mode = BaseMode::HeadRestricted, const Limits& lim = {},
                                          bool minimal_parts = false) {
  if (G.has_aggregate_heads())
    throw PreconditionError("program has aggregate heads; apply head_reduct first");
  std::map<AggregateAtom, std::vector<std::vector<Atom>>> parts;
  DefiniteProgram d;
  std::set<DefiniteRule> seen;
  for (const auto& r : G.rules) {
    if (std::any_of(r.neg.begin(), r.neg.end(), [&](const Atom& a) { return M.count(a) > 0; })) continue;
    std::vector<const std::vector<std::vector<Atom>>*> sets;
    bool empty = false;
    for (const auto& l : r.aggs) {
      auto it = parts.find(l);
      if (it == parts.end())
        it = parts.emplace(l, m_solution_positive_parts(l, aggregate_base(l, G, base_mode, lim), M, minimal_parts, lim))
                 .first;
      if (it->second.empty()) empty = true;
      sets.push_back(&it->second);
    }
    if (empty) continue;
    std::vector<std::size_t> choice(sets.size(), 0);
    while (true) {
      DefiniteRule u{r.head_atom() ? std::optional<Atom>(*r.head_atom()) : std::nullopt, r.pos};
      for (std::size_t k = 0; k < sets.size(); ++k) {
        const auto& p = (*sets[k])[choice[k]];
        u.body.insert(u.body.end(), p.begin(), p.end());
      }
      normalize(u.body);
      if (seen.insert(u).second) d.rules.push_back(std::move(u));
      std::size_t k = sets.size();
      bool done = sets.empty();
      while (k > 0) {
        --k;
        if (++choice[k] < sets[k]->size()) break;
        choice[k] = 0;
        if (k == 0) done = true;
      }
      if (done) break;
    }
  }
  return d;
}

// P(M): each aggregate-headed rule becomes ⊥ ← body if M violates its head, else p ← body for p ∈ H(head) ∩ M.
inline GroundProgram head_reduct(const GroundProgram& G, const Interpretation& M, const Limits& lim = {}) {
  GroundProgram out = G;
  out.rules.clear();
  std::set<AggregateAtom> aggs;
  for (const auto& r : G.rules) {
    const auto* l = std::get_if<AggregateAtom>(&r.head);
    if (!l) {
      out.rules.push_back(r);
      for (const auto& g : r.aggs) aggs.insert(g);
      continue;
    }
    for (const auto& g : r.aggs) aggs.insert(g);
    auto base = aggregate_base(*l, G, BaseMode::FullPattern, lim);
    Rule body = r;
    if (!eval_aggregate(M, *l, base)) {
      body.head = Falsum{};
      out.rules.push_back(std::move(body));
      continue;
    }
    for (const auto& p : base)
      if (M.count(p)) {
        Rule s = r;
        s.head = p;
        out.rules.push_back(std::move(s));
      }
  }
  out.aggregates.assign(aggs.begin(), aggs.end());
  return out;
}

// τ: weight constraints to SUM aggregates over auxiliary predicates.
inline Program translate_weight_program(const WeightConstraintProgram& W) {
  std::set<std::string> used;
  for (const auto& wr : W.rules) {
    const Rule& r = wr.rule;
    if (auto h = r.head_atom()) used.insert(h->predicate);
    if (auto l = std::get_if<AggregateAtom>(&r.head)) used.insert(l->spec.pattern.predicate);
    for (const auto& a : r.pos) used.insert(a.predicate);
    for (const auto& a : r.neg) used.insert(a.predicate);
    for (const auto& l : r.aggs) used.insert(l.spec.pattern.predicate);
    for (const auto& c : wr.constraints)
      for (const auto& lit : c.literals) used.insert(lit.atom.predicate);
  }
  auto fresh_pred = [&](const std::string& base) {
    std::string name = base;
    for (int k = 2; used.count(name); ++k) name = base + "_" + std::to_string(k);
    used.insert(name);
    return name;
  };
  auto sum_atom = [](const std::string& pred, const std::string& tag, Relation rel, Term guard) {
    AggregateAtom a;
    a.func = AggFunc::Sum;
    a.spec.collection = Collection::Multiset;
    a.spec.collected = Variable{"W" + tag, VarKind::Local};
    a.spec.locals = {Variable{"I" + tag, VarKind::Local}};
    a.spec.pattern = Atom{pred, {Variable{"I" + tag, VarKind::Local}, Variable{"W" + tag, VarKind::Local}}};
    a.rel = rel;
    a.guard = std::move(guard);
    return a;
  };
  auto num = [](const Integer& v) { return Term(Constant::integer(v)); };

  Program out;
  out.domain = W.domain;
  std::vector<Rule> aux;
  int counter = 0;
  Integer dom_lo = 0, dom_hi = 0;
  for (const auto& wr : W.rules) {
    Rule r = wr.rule;
    for (const auto& c : wr.constraints) {
      ++counter;
      const std::string k = std::to_string(counter);
      std::string pp = fresh_pred("agg_pos_" + k), pm = fresh_pred("agg_neg_" + k);
      Integer V = 0, total_pos = 0;
      int ip = 0, im = 0;
      for (const auto& lit : c.literals) {
        if (lit.weight < 0) throw PreconditionError("negative weight in " + c.to_string());
        Rule a;
        a.pos.push_back(lit.atom);
        if (lit.negated) {
          a.head = Atom{pm, {Constant::integer(++im), Constant::integer(lit.weight)}};
          V += lit.weight;
        } else {
          a.head = Atom{pp, {Constant::integer(++ip), Constant::integer(lit.weight)}};
          total_pos += lit.weight;
        }
        aux.push_back(std::move(a));
      }
      if (!c.lower && !c.upper) continue;
      const std::string tp = "p" + k, tm = "m" + k;
      if (im == 0) {
        if (c.lower) r.aggs.push_back(sum_atom(pp, tp, Relation::Ge, num(*c.lower)));
        if (c.upper) r.aggs.push_back(sum_atom(pp, tp, Relation::Le, num(*c.upper)));
      } else if (ip == 0) {
        if (c.upper) r.aggs.push_back(sum_atom(pm, tm, Relation::Ge, num(V - *c.upper)));
        if (c.lower) r.aggs.push_back(sum_atom(pm, tm, Relation::Le, num(V - *c.lower)));
      } else {
        Variable sp{"Spos" + k, VarKind::Global}, sm{"Sneg" + k, VarKind::Global}, d{"Diff" + k, VarKind::Global};
        r.aggs.push_back(sum_atom(pp, tp, Relation::Eq, sp));
        r.aggs.push_back(sum_atom(pm, tm, Relation::Eq, sm));
        r.builtins.push_back(Builtin{d, Relation::Eq, Expr{sp, std::make_pair(ArithOp::Minus, Term(sm))}});
        if (c.lower) r.builtins.push_back(Builtin{d, Relation::Ge, Expr{num(*c.lower - V), std::nullopt}});
        if (c.upper) r.builtins.push_back(Builtin{d, Relation::Le, Expr{num(*c.upper - V), std::nullopt}});
        dom_lo = std::min(dom_lo, Integer(-V));
        dom_hi = std::max(dom_hi, std::max(total_pos, V));
      }
    }
    out.rules.push_back(std::move(r));
  }
  out.rules.insert(out.rules.end(), aux.begin(), aux.end());
  if (dom_lo != 0 || dom_hi != 0) out.domain.push_back({std::nullopt, dom_lo, dom_hi});
  std::vector<const Rule*> ptrs;
  for (const auto& r : out.rules) ptrs.push_back(&r);
  out.constants = detail::program_constants(ptrs, out.domain);
  return out;
}

}  // namespace aspa
