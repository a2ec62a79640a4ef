// Satisfaction of literals, rule bodies and programs by interpretations.
#pragma once

#include <vector>

#include "aspa/aggregates.hpp"
#include "aspa/ast.hpp"

namespace aspa {

inline void require_ground(const Atom& a) {
  if (!a.ground()) throw PreconditionError("non-ground atom " + a.to_string());
}

inline bool satisfies(const Interpretation& I, const Atom& a) {
  require_ground(a);
  return I.count(a) > 0;
}

inline bool satisfies_naf(const Interpretation& I, const Atom& a) { return !satisfies(I, a); }

inline bool satisfies(const Interpretation& I, const AggregateAtom& l) {
  if (!l.ground()) throw PreconditionError("non-ground aggregate atom " + l.to_string());
  return eval_aggregate(I, l);
}

inline bool body_satisfied(const Interpretation& I, const Rule& r) {
  if (!r.builtins.empty()) throw PreconditionError("rule with unevaluated builtins: " + to_string(r));
  for (const auto& a : r.pos)
    if (!satisfies(I, a)) return false;
  for (const auto& a : r.neg)
    if (!satisfies_naf(I, a)) return false;
  for (const auto& g : r.aggs)
    if (!satisfies(I, g)) return false;
  return true;
}

inline bool head_satisfied(const Interpretation& I, const Rule& r) {
  if (r.is_constraint()) return false;
  if (auto a = r.head_atom()) return satisfies(I, *a);
  return satisfies(I, std::get<AggregateAtom>(r.head));
}

inline bool rule_satisfied(const Interpretation& I, const Rule& r) {
  return !body_satisfied(I, r) || head_satisfied(I, r);
}

inline bool is_model(const Interpretation& I, const std::vector<Rule>& rules) {
  for (const auto& r : rules)
    if (!rule_satisfied(I, r)) return false;
  return true;
}

}  // namespace aspa
