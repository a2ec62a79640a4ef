// Aggregate evaluation, solutions, covering, minimal complete solution sets, monotonicity.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "aspa/ast.hpp"
#include "aspa/error.hpp"
#include "aspa/limits.hpp"

namespace aspa {

struct AggregateValue {
  bool defined = false;
  Rational value = 0;
};

enum class SolutionKind { Full, Complete, MinimalComplete, MSolutions };

struct AggregateSolution {
  std::vector<Atom> p;  // sorted
  std::vector<Atom> n;  // sorted
  friend auto operator<=>(const AggregateSolution&, const AggregateSolution&) = default;
  friend bool operator==(const AggregateSolution&, const AggregateSolution&) = default;
  std::string to_string() const {
    auto set = [](const std::vector<Atom>& v) {
      std::string s = "{";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
      return s + "}";
    };
    return "<" + set(p) + ", " + set(n) + ">";
  }
};

struct SolutionSet {
  AggregateAtom atom;
  std::vector<Atom> base;  // sorted H(l)
  std::vector<AggregateSolution> solutions;
  SolutionKind kind = SolutionKind::Full;
};

// Value of the collected variable if `a` is an instance of the pattern, else nullopt.
inline std::optional<Constant> match_pattern(const IntensionalSpec& s, const Atom& a) {
  if (a.predicate != s.pattern.predicate || a.args.size() != s.pattern.args.size()) return std::nullopt;
  std::map<std::string, const Constant*> bind;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    const auto* c = std::get_if<Constant>(&a.args[i]);
    if (!c) return std::nullopt;
    const Term& pt = s.pattern.args[i];
    if (auto pc = std::get_if<Constant>(&pt)) {
      if (!(*pc == *c)) return std::nullopt;
      continue;
    }
    const auto& v = std::get<Variable>(pt);
    if (v.kind == VarKind::Global) throw PreconditionError("aggregate atom is not ground: " + s.pattern.to_string());
    auto [it, fresh] = bind.emplace(v.name, c);
    if (!fresh && !(*it->second == *c)) return std::nullopt;
  }
  auto it = bind.find(s.collected.name);
  if (it == bind.end()) return std::nullopt;
  return *it->second;
}

inline const Integer& guard_value(const AggregateAtom& l) {
  const auto* c = std::get_if<Constant>(&l.guard);
  if (!c) throw PreconditionError("aggregate guard is not ground: " + l.to_string());
  return c->integer_value();
}

inline AggregateValue apply_function(AggFunc f, Collection coll, std::vector<Constant> values) {
  if (coll == Collection::Set) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
  }
  if (f == AggFunc::Count) return {true, Rational(Integer(values.size()))};
  if (values.empty()) {
    if (f == AggFunc::Sum) return {true, Rational(0)};
    return {false, 0};
  }
  Integer acc = values.front().integer_value();
  for (std::size_t i = 1; i < values.size(); ++i) {
    const Integer& v = values[i].integer_value();
    switch (f) {
      case AggFunc::Sum:
      case AggFunc::Avg: acc += v; break;
      case AggFunc::Min: acc = std::min(acc, v); break;
      case AggFunc::Max: acc = std::max(acc, v); break;
      default: break;
    }
  }
  if (f == AggFunc::Avg) return {true, Rational(acc, Integer(values.size()))};
  return {true, Rational(acc)};
}

inline bool compare_value(const AggregateValue& v, Relation r, const Integer& guard) {
  return v.defined && holds(v.value, r, Rational(guard));
}

// Truth of a ground aggregate atom in I, over every pattern instance contained in I.
inline bool eval_aggregate(const Interpretation& I, const AggregateAtom& l) {
  std::vector<Constant> vals;
  for (auto it = I.lower_bound(predicate_lower_bound(l.spec.pattern.predicate));
       it != I.end() && it->predicate == l.spec.pattern.predicate; ++it)
    if (auto v = match_pattern(l.spec, *it)) vals.push_back(*v);
  return compare_value(apply_function(l.func, l.spec.collection, std::move(vals)), l.rel, guard_value(l));
}

// Truth of l in I restricted to `base` (sorted).
inline bool eval_aggregate(const Interpretation& I, const AggregateAtom& l, std::span<const Atom> base) {
  std::vector<Constant> vals;
  for (const auto& a : base)
    if (I.count(a))
      if (auto v = match_pattern(l.spec, a)) vals.push_back(*v);
  return compare_value(apply_function(l.func, l.spec.collection, std::move(vals)), l.rel, guard_value(l));
}

// S covers T (T ⊴ S): S.p ⊆ T.p and S.n ⊆ T.n.
inline bool covers(const AggregateSolution& s, const AggregateSolution& t) {
  return std::includes(t.p.begin(), t.p.end(), s.p.begin(), s.p.end()) &&
         std::includes(t.n.begin(), t.n.end(), s.n.begin(), s.n.end());
}

namespace detail {

using Mask = std::uint64_t;

inline int popcount(Mask m) { return std::popcount(m); }

// A ground aggregate atom over a fixed base, with per-atom values and bit-mask evaluation.
class BaseView {
 public:
  BaseView(const AggregateAtom& l, std::span<const Atom> base) : l_(l), atoms_(base.begin(), base.end()) {
    if (!std::is_sorted(atoms_.begin(), atoms_.end()) ||
        std::adjacent_find(atoms_.begin(), atoms_.end()) != atoms_.end()) {
      std::sort(atoms_.begin(), atoms_.end());
      atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
    }
    if (atoms_.size() > 63) throw ResourceError("aggregate base of " + std::to_string(atoms_.size()) +
                                                " atoms exceeds 63: " + l.to_string());
    guard_ = guard_value(l);
    for (const auto& a : atoms_) {
      auto v = match_pattern(l.spec, a);
      if (!v) throw PreconditionError("base atom " + a.to_string() + " does not match " + l.to_string());
      consts_.push_back(*v);
      if (l.func != AggFunc::Count) ints_.push_back(v->integer_value());
    }
    if (l.spec.collection == Collection::Set) {
      auto c = consts_;
      std::sort(c.begin(), c.end());
      one_to_one_ = std::adjacent_find(c.begin(), c.end()) == c.end();
    }
  }

  std::size_t size() const { return atoms_.size(); }
  Mask full() const { return size() == 64 ? ~Mask{0} : ((Mask{1} << size()) - 1); }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const AggregateAtom& atom() const { return l_; }
  const Integer& guard() const { return guard_; }
  const std::vector<Integer>& ints() const { return ints_; }
  bool one_to_one() const { return one_to_one_; }

  bool eval(Mask s) const {
    std::vector<Constant> vals;
    for (std::size_t i = 0; i < size(); ++i)
      if (s >> i & 1) vals.push_back(consts_[i]);
    return compare_value(apply_function(l_.func, l_.spec.collection, std::move(vals)), l_.rel, guard_);
  }

  // For all W ⊆ U: eval(T ∪ W), by enumeration.
  bool entailed_brute(Mask t, Mask u, std::size_t cap) const {
    if (static_cast<std::size_t>(popcount(u)) > cap)
      throw ResourceError("solution check over " + std::to_string(popcount(u)) + " free atoms exceeds cap " +
                          std::to_string(cap));
    Mask w = 0;
    do {
      if (!eval(t | w)) return false;
      w = (w - u) & u;
    } while (w != 0);
    return true;
  }

  // Same result as entailed_brute, via the range of achievable aggregate values.
  bool entailed(Mask t, Mask f, std::size_t cap) const {
    Mask u = full() & ~(t | f);
    if (!one_to_one_) return entailed_brute(t, u, cap);
    const Relation r = l_.rel;
    switch (l_.func) {
      case AggFunc::Count: {
        Integer lo = popcount(t), hi = lo + popcount(u);
        return range_all(lo, hi, r);
      }
      case AggFunc::Sum: {
        Integer st = 0, neg = 0, pos = 0;
        for (std::size_t i = 0; i < size(); ++i) {
          if (t >> i & 1) st += ints_[i];
          else if (u >> i & 1) (ints_[i] < 0 ? neg : pos) += ints_[i];
        }
        Integer lo = st + neg, hi = st + pos;
        switch (r) {
          case Relation::Lt: return hi < guard_;
          case Relation::Le: return hi <= guard_;
          case Relation::Gt: return lo > guard_;
          case Relation::Ge: return lo >= guard_;
          case Relation::Eq: return lo == guard_ && hi == guard_;
          case Relation::Ne: {
            if (guard_ < lo || guard_ > hi) return true;
            std::set<Integer> reach{st};
            for (std::size_t i = 0; i < size(); ++i) {
              if (!(u >> i & 1) || ints_[i] == 0) continue;
              std::set<Integer> next = reach;
              for (const auto& x : reach) next.insert(x + ints_[i]);
              reach.swap(next);
            }
            return !reach.count(guard_);
          }
        }
        return false;
      }
      case AggFunc::Min:
      case AggFunc::Max: {
        if (t == 0) return false;  // W = ∅ leaves the collection empty
        bool is_min = l_.func == AggFunc::Min;
        std::optional<Integer> base;
        for (std::size_t i = 0; i < size(); ++i)
          if (t >> i & 1)
            if (!base || (is_min ? ints_[i] < *base : ints_[i] > *base)) base = ints_[i];
        if (!holds(*base, r, guard_)) return false;
        for (std::size_t i = 0; i < size(); ++i)
          if (u >> i & 1) {
            const Integer& v = ints_[i];
            if ((is_min ? v < *base : v > *base) && !holds(v, r, guard_)) return false;
          }
        return true;
      }
      case AggFunc::Avg:
        if (t == 0) return false;
        return entailed_brute(t, u, cap);
    }
    return false;
  }

  AggregateSolution to_solution(Mask t, Mask f) const {
    AggregateSolution s;
    for (std::size_t i = 0; i < size(); ++i) {
      if (t >> i & 1) s.p.push_back(atoms_[i]);
      if (f >> i & 1) s.n.push_back(atoms_[i]);
    }
    return s;
  }

  std::optional<std::pair<Mask, Mask>> to_masks(const AggregateSolution& s) const {
    Mask t = 0, f = 0;
    for (const auto& a : s.p) {
      auto i = index_of(a);
      if (!i) return std::nullopt;
      t |= Mask{1} << *i;
    }
    for (const auto& a : s.n) {
      auto i = index_of(a);
      if (!i) return std::nullopt;
      f |= Mask{1} << *i;
    }
    if (t & f) return std::nullopt;
    return std::make_pair(t, f);
  }

  std::optional<std::size_t> index_of(const Atom& a) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
    if (it == atoms_.end() || !(*it == a)) return std::nullopt;
    return static_cast<std::size_t>(it - atoms_.begin());
  }

 private:
  bool range_all(const Integer& lo, const Integer& hi, Relation r) const {
    switch (r) {
      case Relation::Lt: return hi < guard_;
      case Relation::Le: return hi <= guard_;
      case Relation::Gt: return lo > guard_;
      case Relation::Ge: return lo >= guard_;
      case Relation::Eq: return lo == guard_ && hi == guard_;
      case Relation::Ne: return guard_ < lo || guard_ > hi;
    }
    return false;
  }

  const AggregateAtom& l_;
  std::vector<Atom> atoms_;
  std::vector<Constant> consts_;
  std::vector<Integer> ints_;
  Integer guard_;
  bool one_to_one_ = true;
};

inline void sort_solutions(std::vector<AggregateSolution>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Drops every solution covered by a different one.
inline std::vector<std::pair<Mask, Mask>> reduce_by_covering(std::vector<std::pair<Mask, Mask>> sols) {
  std::sort(sols.begin(), sols.end());
  sols.erase(std::unique(sols.begin(), sols.end()), sols.end());
  std::vector<std::pair<Mask, Mask>> out;
  for (std::size_t i = 0; i < sols.size(); ++i) {
    bool covered = false;
    for (std::size_t j = 0; j < sols.size() && !covered; ++j) {
      if (i == j) continue;
      covered = (sols[j].first & ~sols[i].first) == 0 && (sols[j].second & ~sols[i].second) == 0;
    }
    if (!covered) out.push_back(sols[i]);
  }
  return out;
}

// Find_Solution: depth-first extension of (T, F), stopping at the first entailed state.
inline std::vector<std::pair<Mask, Mask>> find_solutions_generic(const BaseView& bv, const Limits& lim) {
  const std::size_t n = bv.size();
  if (n > lim.max_minimal_base)
    throw ResourceError("aggregate base of " + std::to_string(n) + " atoms exceeds the minimal-solution cap " +
                        std::to_string(lim.max_minimal_base) + ": " + bv.atom().to_string());
  std::vector<std::uint64_t> pow3(n + 1, 1);
  for (std::size_t i = 1; i <= n; ++i) pow3[i] = pow3[i - 1] * 3;
  std::vector<bool> visited(pow3[n], false);
  std::vector<std::pair<Mask, Mask>> found;
  auto rec = [&](auto&& self, Mask t, Mask f, std::uint64_t code) -> void {
    if (visited[code]) return;
    visited[code] = true;
    if (bv.entailed(t, f, lim.max_check_base)) {
      found.emplace_back(t, f);
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Mask bit = Mask{1} << i;
      if ((t | f) & bit) continue;
      self(self, t | bit, f, code + pow3[i]);
      self(self, t, f | bit, code + 2 * pow3[i]);
    }
  };
  rec(rec, 0, 0, 0);
  return reduce_by_covering(std::move(found));
}

// Enumerates every subset of `items` (given as bit indices) via DFS; `visit` returns true to stop descending.
template <class Visit>
void subsets_dfs(const std::vector<std::size_t>& items, Visit&& visit) {
  auto rec = [&](auto&& self, std::size_t k, Mask chosen) -> void {
    if (visit(chosen, k)) return;
    for (std::size_t j = k; j < items.size(); ++j) self(self, j + 1, chosen | (Mask{1} << items[j]));
  };
  rec(rec, 0, 0);
}

// Closed-form prime solutions for COUNT: every (t, f) size pair that is prime, all placements.
inline std::vector<std::pair<Mask, Mask>> count_primes(const BaseView& bv) {
  const std::size_t n = bv.size();
  const Integer& g = bv.guard();
  auto ent = [&](std::size_t t, std::size_t u) {
    Integer lo = t, hi = t + u;
    switch (bv.atom().rel) {
      case Relation::Lt: return hi < g;
      case Relation::Le: return hi <= g;
      case Relation::Gt: return lo > g;
      case Relation::Ge: return lo >= g;
      case Relation::Eq: return lo == g && hi == g;
      case Relation::Ne: return g < lo || g > hi;
    }
    return false;
  };
  std::vector<std::pair<Mask, Mask>> out;
  for (std::size_t t = 0; t <= n; ++t)
    for (std::size_t f = 0; t + f <= n; ++f) {
      std::size_t u = n - t - f;
      if (!ent(t, u)) continue;
      if (t > 0 && ent(t - 1, u + 1)) continue;
      if (f > 0 && ent(t, u + 1)) continue;
      // all placements: choose t true atoms, then f false among the rest
      std::vector<std::size_t> all(n);
      for (std::size_t i = 0; i < n; ++i) all[i] = i;
      auto place = [&](auto&& self, std::size_t i, std::size_t tl, std::size_t fl, Mask tm, Mask fm) -> void {
        if (tl == 0 && fl == 0) {
          out.emplace_back(tm, fm);
          return;
        }
        if (i == n || n - i < tl + fl) return;
        Mask bit = Mask{1} << i;
        if (tl) self(self, i + 1, tl - 1, fl, tm | bit, fm);
        if (fl) self(self, i + 1, tl, fl - 1, tm, fm | bit);
        self(self, i + 1, tl, fl, tm, fm);
      };
      place(place, 0, t, f, 0, 0);
    }
  return out;
}

// Closed form for MIN (MAX via negation): L/E/G partition around the guard.
inline std::vector<std::pair<Mask, Mask>> minmax_primes(const BaseView& bv) {
  const bool is_max = bv.atom().func == AggFunc::Max;
  Integer g = is_max ? Integer(-bv.guard()) : bv.guard();
  Relation r = is_max ? flip(bv.atom().rel) : bv.atom().rel;
  Mask L = 0, E = 0, G = 0;
  for (std::size_t i = 0; i < bv.size(); ++i) {
    Integer v = is_max ? Integer(-bv.ints()[i]) : bv.ints()[i];
    Mask bit = Mask{1} << i;
    (v < g ? L : (v == g ? E : G)) |= bit;
  }
  std::vector<std::pair<Mask, Mask>> out;
  auto each = [&](Mask set, Mask neg) {
    for (std::size_t i = 0; i < bv.size(); ++i)
      if (set >> i & 1) out.emplace_back(Mask{1} << i, neg);
  };
  switch (r) {
    case Relation::Lt: each(L, 0); break;
    case Relation::Le: each(L | E, 0); break;
    case Relation::Gt: each(G, L | E); break;
    case Relation::Ge: each(E | G, L); break;
    case Relation::Eq: each(E, L); break;
    case Relation::Ne:
      each(L, 0);
      each(G, E);
      break;
  }
  return out;
}

// Closed form for SUM when all values share a sign and the relation is not '!='.
inline std::optional<std::vector<std::pair<Mask, Mask>>> sum_primes(const BaseView& bv) {
  Relation r = bv.atom().rel;
  if (r == Relation::Ne) return std::nullopt;
  bool any_pos = false, any_neg = false;
  for (const auto& v : bv.ints()) {
    any_pos |= v > 0;
    any_neg |= v < 0;
  }
  if (any_pos && any_neg) return std::nullopt;
  const bool negate = any_neg;
  Integer g = negate ? Integer(-bv.guard()) : bv.guard();
  if (negate) r = flip(r);
  std::vector<std::size_t> P;
  std::vector<Integer> val(bv.size());
  Integer total = 0;
  for (std::size_t i = 0; i < bv.size(); ++i) {
    val[i] = negate ? Integer(-bv.ints()[i]) : bv.ints()[i];
    if (val[i] > 0) {
      P.push_back(i);
      total += val[i];
    }
  }
  auto sum_of = [&](Mask m) {
    Integer s = 0;
    for (auto i : P)
      if (m >> i & 1) s += val[i];
    return s;
  };
  // Minimal subsets X of P with pred(sum(X)), pred upward closed in the sum.
  auto minimal_subsets = [&](auto pred) {
    std::vector<Mask> res;
    subsets_dfs(P, [&](Mask chosen, std::size_t k) {
      Integer s = sum_of(chosen);
      if (pred(s)) {
        bool minimal = true;
        for (auto i : P)
          if ((chosen >> i & 1) && pred(s - val[i])) minimal = false;
        if (minimal) res.push_back(chosen);
        return true;
      }
      Integer rest = 0;
      for (std::size_t j = k; j < P.size(); ++j) rest += val[P[j]];
      return !pred(s + rest);
    });
    return res;
  };
  std::vector<std::pair<Mask, Mask>> out;
  switch (r) {
    case Relation::Ge:
    case Relation::Gt: {
      auto pred = [&](const Integer& s) { return r == Relation::Ge ? s >= g : s > g; };
      for (Mask m : minimal_subsets(pred)) out.emplace_back(m, 0);
      break;
    }
    case Relation::Le:
    case Relation::Lt: {
      auto pred = [&](const Integer& sf) { return r == Relation::Le ? total - sf <= g : total - sf < g; };
      for (Mask m : minimal_subsets(pred)) out.emplace_back(0, m);
      break;
    }
    case Relation::Eq: {
      Mask pm = 0;
      for (auto i : P) pm |= Mask{1} << i;
      subsets_dfs(P, [&](Mask chosen, std::size_t) {
        Integer s = sum_of(chosen);
        if (s == g) out.emplace_back(chosen, pm & ~chosen);
        return s >= g;
      });
      break;
    }
    default: return std::nullopt;
  }
  return out;
}

inline SolutionSet make_set(const BaseView& bv, const std::vector<std::pair<Mask, Mask>>& ms, SolutionKind k) {
  SolutionSet s{bv.atom(), bv.atoms(), {}, k};
  for (const auto& [t, f] : ms) s.solutions.push_back(bv.to_solution(t, f));
  sort_solutions(s.solutions);
  return s;
}

}  // namespace detail

// Brute force over every W ⊆ base∖(p∪n).
inline bool is_solution(const AggregateAtom& l, std::span<const Atom> base, const AggregateSolution& cand,
                        const Limits& lim = {}) {
  detail::BaseView bv(l, base);
  auto m = bv.to_masks(cand);
  if (!m) return false;
  return bv.entailed_brute(m->first, bv.full() & ~(m->first | m->second), lim.max_check_base);
}

// SOLN(l): every disjoint pair over the base that is a solution.
inline SolutionSet all_solutions(const AggregateAtom& l, std::span<const Atom> base, const Limits& lim = {}) {
  detail::BaseView bv(l, base);
  const std::size_t n = bv.size();
  if (n > lim.max_full_base)
    throw ResourceError("aggregate base of " + std::to_string(n) + " atoms exceeds the full-solution cap " +
                        std::to_string(lim.max_full_base) + "; use minimal-complete solutions");
  std::vector<std::pair<detail::Mask, detail::Mask>> out;
  const detail::Mask full = bv.full();
  detail::Mask t = 0;
  do {
    detail::Mask rest = full & ~t, f = 0;
    do {
      if (bv.entailed(t, f, lim.max_check_base)) out.emplace_back(t, f);
      f = (f - rest) & rest;
    } while (f != 0);
    t = (t - full) & full;
  } while (t != 0);
  return detail::make_set(bv, out, SolutionKind::Full);
}

// Fig. 1 search plus covering reduction, with no closed-form shortcuts.
inline SolutionSet find_solution_set(const AggregateAtom& l, std::span<const Atom> base, const Limits& lim = {}) {
  detail::BaseView bv(l, base);
  return detail::make_set(bv, detail::find_solutions_generic(bv, lim), SolutionKind::MinimalComplete);
}

// Minimal complete solution set; closed forms for COUNT, MIN, MAX and single-sign SUM.
inline SolutionSet minimal_complete_solutions(const AggregateAtom& l, std::span<const Atom> base,
                                              const Limits& lim = {}) {
  detail::BaseView bv(l, base);
  if (bv.one_to_one()) {
    switch (l.func) {
      case AggFunc::Count: return detail::make_set(bv, detail::count_primes(bv), SolutionKind::MinimalComplete);
      case AggFunc::Min:
      case AggFunc::Max: return detail::make_set(bv, detail::minmax_primes(bv), SolutionKind::MinimalComplete);
      case AggFunc::Sum:
        if (auto s = detail::sum_primes(bv)) return detail::make_set(bv, *s, SolutionKind::MinimalComplete);
        break;
      default: break;
    }
  }
  return detail::make_set(bv, detail::find_solutions_generic(bv, lim), SolutionKind::MinimalComplete);
}

// SOLN*(l, M): solutions true in M.
inline SolutionSet m_solutions(const AggregateAtom& l, std::span<const Atom> base, const Interpretation& M,
                               const Limits& lim = {}) {
  detail::BaseView bv(l, base);
  if (bv.size() > lim.max_check_base)
    throw ResourceError("aggregate base of " + std::to_string(bv.size()) + " atoms exceeds the M-solution cap " +
                        std::to_string(lim.max_check_base));
  detail::Mask in = 0;
  for (std::size_t i = 0; i < bv.size(); ++i)
    if (M.count(bv.atoms()[i])) in |= detail::Mask{1} << i;
  detail::Mask out_m = bv.full() & ~in;
  std::vector<std::pair<detail::Mask, detail::Mask>> res;
  detail::Mask t = 0;
  do {
    detail::Mask f = 0;
    do {
      if (bv.entailed(t, f, lim.max_check_base)) res.emplace_back(t, f);
      f = (f - out_m) & out_m;
    } while (f != 0);
    t = (t - in) & in;
  } while (t != 0);
  return detail::make_set(bv, res, SolutionKind::MSolutions);
}

// p-parts A ⊆ M∩base such that <A, base∖M> is a solution; only ⊆-minimal ones if `minimal_only`.
inline std::vector<std::vector<Atom>> m_solution_positive_parts(const AggregateAtom& l, std::span<const Atom> base,
                                                                const Interpretation& M, bool minimal_only,
                                                                const Limits& lim = {}) {
  detail::BaseView bv(l, base);
  detail::Mask in = 0;
  for (std::size_t i = 0; i < bv.size(); ++i)
    if (M.count(bv.atoms()[i])) in |= detail::Mask{1} << i;
  detail::Mask f = bv.full() & ~in;
  std::vector<detail::Mask> found;
  if (minimal_only) {
    std::vector<std::size_t> items;
    for (std::size_t i = 0; i < bv.size(); ++i)
      if (in >> i & 1) items.push_back(i);
    if (!bv.entailed(in, f, lim.max_check_base)) return {};
    detail::subsets_dfs(items, [&](detail::Mask chosen, std::size_t) {
      for (auto m : found)
        if ((m & ~chosen) == 0) return true;
      if (bv.entailed(chosen, f, lim.max_check_base)) {
        found.push_back(chosen);
        return true;
      }
      return false;
    });
    auto reduced = detail::reduce_by_covering([&] {
      std::vector<std::pair<detail::Mask, detail::Mask>> v;
      for (auto m : found) v.emplace_back(m, 0);
      return v;
    }());
    found.clear();
    for (auto& [t, _] : reduced) found.push_back(t);
  } else {
    if (static_cast<std::size_t>(detail::popcount(in)) > lim.max_check_base)
      throw ResourceError("M-solution enumeration over " + std::to_string(detail::popcount(in)) +
                          " true base atoms exceeds cap");
    detail::Mask t = 0;
    do {
      if (bv.entailed(t, f, lim.max_check_base)) found.push_back(t);
      t = (t - in) & in;
    } while (t != 0);
  }
  std::vector<std::vector<Atom>> out;
  for (auto t : found) out.push_back(bv.to_solution(t, 0).p);
  std::sort(out.begin(), out.end());
  return out;
}

enum class Tri { False, True, Unknown };

inline const char* to_string(Tri t) { return t == Tri::True ? "true" : (t == Tri::False ? "false" : "unknown"); }

// Monotonicity over subsets of base∖context, with the context atoms always present.
inline Tri is_monotone_atom(const AggregateAtom& l, std::span<const Atom> base, const Interpretation& context = {},
                            const Limits& lim = {}) {
  std::vector<Atom> free;
  for (const auto& a : base)
    if (!context.count(a)) free.push_back(a);
  if (free.size() > lim.max_monotone_base || free.size() > 62) return Tri::Unknown;
  detail::BaseView bv(l, base);
  detail::Mask ctx = 0, fm = 0;
  for (std::size_t i = 0; i < bv.size(); ++i) {
    if (context.count(bv.atoms()[i])) ctx |= detail::Mask{1} << i;
    else fm |= detail::Mask{1} << i;
  }
  detail::Mask s = 0;
  do {
    if (bv.eval(ctx | s)) {
      for (std::size_t i = 0; i < bv.size(); ++i) {
        detail::Mask bit = detail::Mask{1} << i;
        if ((fm & bit) && !(s & bit) && !bv.eval(ctx | s | bit)) return Tri::False;
      }
    }
    s = (s - fm) & fm;
  } while (s != 0);
  return Tri::True;
}

inline std::string to_string(const SolutionSet& s) {
  std::string out;
  for (const auto& sol : s.solutions) out += sol.to_string() + "\n";
  return out;
}

}  // namespace aspa
