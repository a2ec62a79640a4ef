// Normal and definite programs: T_P, least models, GL reduct, answer-set checking and enumeration,
// and minimal-model checking for ground programs with aggregates.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aspa/aggregates.hpp"
#include "aspa/ast.hpp"
#include "aspa/limits.hpp"
#include "aspa/model.hpp"

namespace aspa {

// Head nullopt encodes falsum.
struct NormalRule {
  std::optional<Atom> head;
  std::vector<Atom> pos;  // sorted, unique
  std::vector<Atom> neg;  // sorted, unique
  friend auto operator<=>(const NormalRule&, const NormalRule&) = default;
  friend bool operator==(const NormalRule&, const NormalRule&) = default;
};

struct NormalProgram {
  std::vector<NormalRule> rules;
};

struct DefiniteRule {
  std::optional<Atom> head;
  std::vector<Atom> body;  // sorted, unique
  friend auto operator<=>(const DefiniteRule&, const DefiniteRule&) = default;
  friend bool operator==(const DefiniteRule&, const DefiniteRule&) = default;
};

struct DefiniteProgram {
  std::vector<DefiniteRule> rules;
};

inline void normalize(std::vector<Atom>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

inline Rule to_rule(const NormalRule& r) {
  Rule out;
  if (r.head) out.head = *r.head;
  else out.head = Falsum{};
  out.pos = r.pos;
  out.neg = r.neg;
  return out;
}

inline Rule to_rule(const DefiniteRule& r) { return to_rule(NormalRule{r.head, r.body, {}}); }

inline std::vector<Rule> to_rules(const NormalProgram& n) {
  std::vector<Rule> out;
  for (const auto& r : n.rules) out.push_back(to_rule(r));
  return out;
}

inline std::vector<Rule> to_rules(const DefiniteProgram& d) {
  std::vector<Rule> out;
  for (const auto& r : d.rules) out.push_back(to_rule(r));
  return out;
}

// Aggregate-free ground rules as a normal program.
inline NormalProgram to_normal(const std::vector<Rule>& rules) {
  NormalProgram n;
  for (const auto& r : rules) {
    if (!r.aggs.empty() || r.has_aggregate_head() || !r.builtins.empty())
      throw PreconditionError("rule is not normal: " + to_string(r));
    NormalRule nr;
    if (auto h = r.head_atom()) nr.head = *h;
    nr.pos = r.pos;
    nr.neg = r.neg;
    for (const auto& a : nr.pos) require_ground(a);
    for (const auto& a : nr.neg) require_ground(a);
    if (nr.head) require_ground(*nr.head);
    normalize(nr.pos);
    normalize(nr.neg);
    n.rules.push_back(std::move(nr));
  }
  return n;
}

inline std::string format_rules(const std::vector<Rule>& rules) {
  std::string s;
  for (const auto& r : rules) s += to_string(r) + "\n";
  return s;
}

struct StepResult {
  Interpretation next;
  bool violated = false;  // some falsum rule had its body contained in I
};

inline StepResult tp_step(const DefiniteProgram& D, const Interpretation& I) {
  StepResult s;
  for (const auto& r : D.rules) {
    bool fires = std::all_of(r.body.begin(), r.body.end(), [&](const Atom& a) { return I.count(a) > 0; });
    if (!fires) continue;
    if (r.head) s.next.insert(*r.head);
    else s.violated = true;
  }
  return s;
}

namespace detail {

// Dense atom numbering for a set of rules.
struct AtomIndex {
  std::vector<Atom> atoms;
  std::map<Atom, int> id;
  int get(const Atom& a) {
    auto [it, fresh] = id.emplace(a, static_cast<int>(atoms.size()));
    if (fresh) atoms.push_back(a);
    return it->second;
  }
  int find(const Atom& a) const {
    auto it = id.find(a);
    return it == id.end() ? -1 : it->second;
  }
  void finalize() {
    // renumber in atom order so branching follows the global order
    std::vector<Atom> sorted = atoms;
    std::sort(sorted.begin(), sorted.end());
    atoms = sorted;
    id.clear();
    for (std::size_t i = 0; i < atoms.size(); ++i) id[atoms[i]] = static_cast<int>(i);
  }
};

struct IRule {
  int head;  // -1: falsum
  std::vector<int> pos, neg;
};

struct IndexedProgram {
  AtomIndex index;
  std::vector<IRule> rules;
  std::vector<std::vector<int>> by_head;
  std::vector<std::vector<int>> pos_occ;

  explicit IndexedProgram(const NormalProgram& n) {
    for (const auto& r : n.rules) {
      if (r.head) index.get(*r.head);
      for (const auto& a : r.pos) index.get(a);
      for (const auto& a : r.neg) index.get(a);
    }
    index.finalize();
    for (const auto& r : n.rules) {
      IRule ir{r.head ? index.find(*r.head) : -1, {}, {}};
      for (const auto& a : r.pos) ir.pos.push_back(index.find(a));
      for (const auto& a : r.neg) ir.neg.push_back(index.find(a));
      rules.push_back(std::move(ir));
    }
    by_head.assign(index.atoms.size(), {});
    pos_occ.assign(index.atoms.size(), {});
    for (std::size_t i = 0; i < rules.size(); ++i) {
      if (rules[i].head >= 0) by_head[rules[i].head].push_back(static_cast<int>(i));
      for (int a : rules[i].pos) pos_occ[a].push_back(static_cast<int>(i));
    }
  }

  std::size_t size() const { return index.atoms.size(); }

  // Least model of the rules passing `keep`, restricted to atoms passing `allowed`; false if a falsum fires.
  template <class Keep, class Allowed>
  bool lfp(std::vector<char>& in, Keep keep, Allowed allowed) const {
    in.assign(size(), 0);
    std::vector<int> missing(rules.size(), 0);
    std::vector<int> queue;
    bool consistent = true;
    auto fire = [&](int ri) {
      int h = rules[ri].head;
      if (h < 0) {
        consistent = false;
        return;
      }
      if (!in[h] && allowed(h)) {
        in[h] = 1;
        queue.push_back(h);
      }
    };
    for (std::size_t i = 0; i < rules.size(); ++i) {
      if (!keep(rules[i])) {
        missing[i] = -1;
        continue;
      }
      missing[i] = static_cast<int>(rules[i].pos.size());
      if (missing[i] == 0) fire(static_cast<int>(i));
    }
    while (!queue.empty()) {
      int a = queue.back();
      queue.pop_back();
      for (int ri : pos_occ[a])
        if (missing[ri] > 0 && --missing[ri] == 0) fire(ri);
    }
    return consistent;
  }

  // M = lfp(N^M) and consistent.
  bool stable(const std::vector<char>& m) const {
    std::vector<char> in;
    bool ok = lfp(
        in,
        [&](const IRule& r) {
          for (int b : r.neg)
            if (m[b]) return false;
          return true;
        },
        [](int) { return true; });
    return ok && in == m;
  }
};

class NormalSearch {
 public:
  NormalSearch(const IndexedProgram& p, const Limits& lim) : p_(p), lim_(lim) {}

  std::vector<std::vector<char>> run() {
    std::vector<signed char> val(p_.size(), 0);
    dfs(val);
    return std::move(found_);
  }

 private:
  const IndexedProgram& p_;
  Limits lim_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<char>> found_;

  // 1 true, -1 false, 0 undecided.
  bool set(std::vector<signed char>& v, int a, signed char x, bool& changed) const {
    if (v[a] == x) return true;
    if (v[a] != 0) return false;
    v[a] = x;
    changed = true;
    return true;
  }

  bool propagate(std::vector<signed char>& v) const {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& r : p_.rules) {
        int undecided = 0, last = -1;
        bool last_pos = true, body_false = false;
        for (int a : r.pos) {
          if (v[a] < 0) body_false = true;
          else if (v[a] == 0) ++undecided, last = a, last_pos = true;
        }
        for (int a : r.neg) {
          if (v[a] > 0) body_false = true;
          else if (v[a] == 0) ++undecided, last = a, last_pos = false;
        }
        if (body_false) continue;
        bool head_false = r.head < 0 || v[r.head] < 0;
        if (undecided == 0) {
          if (head_false) return false;
          if (!set(v, r.head, 1, changed)) return false;
        } else if (undecided == 1 && head_false) {
          if (!set(v, last, last_pos ? -1 : 1, changed)) return false;
        }
      }
      // Atoms outside the upper bound cannot be founded.
      std::vector<char> up;
      p_.lfp(
          up,
          [&](const IRule& r) {
            for (int b : r.neg)
              if (v[b] > 0) return false;
            return r.head >= 0;
          },
          [&](int a) { return v[a] >= 0; });
      for (std::size_t a = 0; a < p_.size(); ++a)
        if (!up[a] && !set(v, static_cast<int>(a), -1, changed)) return false;
      // A true atom with a single possible supporting rule forces that rule's body.
      for (std::size_t a = 0; a < p_.size(); ++a) {
        if (v[a] <= 0) continue;
        int support = -1, count = 0;
        for (int ri : p_.by_head[a]) {
          const auto& r = p_.rules[ri];
          bool dead = false;
          for (int b : r.pos) dead |= v[b] < 0;
          for (int b : r.neg) dead |= v[b] > 0;
          if (!dead) support = ri, ++count;
        }
        if (count == 0) return false;
        if (count == 1) {
          for (int b : p_.rules[support].pos)
            if (!set(v, b, 1, changed)) return false;
          for (int b : p_.rules[support].neg)
            if (!set(v, b, -1, changed)) return false;
        }
      }
    }
    return true;
  }

  void dfs(std::vector<signed char> v) {
    if (++nodes_ > lim_.max_search_nodes)
      throw ResourceError("answer-set search exceeds " + std::to_string(lim_.max_search_nodes) + " nodes");
    if (!propagate(v)) return;
    auto it = std::find(v.begin(), v.end(), 0);
    if (it == v.end()) {
      std::vector<char> m(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) m[i] = v[i] > 0;
      if (p_.stable(m)) found_.push_back(std::move(m));
      return;
    }
    auto a = it - v.begin();
    auto t = v;
    t[a] = 1;
    dfs(std::move(t));
    v[a] = -1;
    dfs(std::move(v));
  }
};

}  // namespace detail

inline std::optional<Interpretation> least_model(const DefiniteProgram& D) {
  NormalProgram n;
  for (const auto& r : D.rules) n.rules.push_back({r.head, r.body, {}});
  detail::IndexedProgram ip(n);
  std::vector<char> in;
  bool ok = ip.lfp(in, [](const detail::IRule&) { return true; }, [](int) { return true; });
  if (!ok) return std::nullopt;
  Interpretation out;
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i]) out.insert(ip.index.atoms[i]);
  return out;
}

inline DefiniteProgram gl_reduct(const NormalProgram& N, const Interpretation& M) {
  DefiniteProgram d;
  for (const auto& r : N.rules) {
    bool blocked = std::any_of(r.neg.begin(), r.neg.end(), [&](const Atom& a) { return M.count(a) > 0; });
    if (!blocked) d.rules.push_back({r.head, r.pos});
  }
  return d;
}

inline bool is_answer_set(const NormalProgram& N, const Interpretation& M) {
  auto lm = least_model(gl_reduct(N, M));
  return lm && *lm == M;
}

// All answer sets sorted lexicographically by their sorted atom lists, truncated to `limit`.
inline std::vector<Interpretation> enumerate_answer_sets(const NormalProgram& N,
                                                         std::optional<std::size_t> limit = std::nullopt,
                                                         const Limits& lim = {}) {
  detail::IndexedProgram ip(N);
  detail::NormalSearch search(ip, lim);
  std::vector<Interpretation> out;
  for (const auto& m : search.run()) {
    Interpretation I;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) I.insert(ip.index.atoms[i]);
    out.push_back(std::move(I));
  }
  std::sort(out.begin(), out.end(), [](const Interpretation& a, const Interpretation& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (limit && out.size() > *limit) out.resize(*limit);
  return out;
}

// Reference check: tries every proper subset of M.
inline bool is_minimal_model_exhaustive(const std::vector<Rule>& G, const Interpretation& M, const Limits& lim = {}) {
  if (M.size() > lim.max_model_atoms)
    throw ResourceError("minimal-model check over " + std::to_string(M.size()) + " atoms exceeds cap " +
                        std::to_string(lim.max_model_atoms));
  if (!is_model(M, G)) return false;
  std::vector<Atom> atoms(M.begin(), M.end());
  const std::uint64_t n = atoms.size(), full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t s = 0; s < full; ++s) {
    Interpretation N;
    for (std::uint64_t i = 0; i < n; ++i)
      if (s >> i & 1) N.insert(atoms[i]);
    if (is_model(N, G)) return false;
  }
  return true;
}

namespace detail {

// Searches a model N ⊊ M of G; atoms outside M are false throughout.
class SubModelSearch {
 public:
  SubModelSearch(const std::vector<Rule>& G, const Interpretation& M, const Limits& lim)
      : G_(G), M_(M), lim_(lim), atoms_(M.begin(), M.end()) {
    for (const auto& r : G) {
      CRule c{&r, -1, false, {}, {}, {}};
      bool never = false;
      for (const auto& a : r.pos) {
        int i = index_of(a);
        if (i < 0) never = true;
        else c.pos.push_back(i);
      }
      if (never) continue;  // body can never hold inside M
      for (const auto& a : r.neg) {
        int i = index_of(a);
        if (i >= 0) c.neg.push_back(i);
      }
      for (const auto& l : r.aggs) c.aggs.push_back(agg_id(l));
      if (auto h = r.head_atom()) {
        c.head = index_of(*h);
        c.head_never = c.head < 0;
      } else if (r.is_constraint()) {
        c.head_never = true;
      }
      rules_.push_back(std::move(c));
    }
  }

  bool found() {
    std::vector<signed char> v(atoms_.size(), 0);
    return dfs(v);
  }

 private:
  struct CRule {
    const Rule* rule;
    int head;         // index in atoms_, -1 if not an atom inside M
    bool head_never;  // falsum or atom head outside M
    std::vector<int> pos, neg, aggs;
  };
  struct AggInfo {
    AggregateAtom atom;
    std::vector<Atom> base;
    std::vector<int> idx;  // base position -> index in atoms_
  };

  const std::vector<Rule>& G_;
  const Interpretation& M_;
  Limits lim_;
  std::vector<Atom> atoms_;
  std::vector<CRule> rules_;
  std::vector<AggInfo> aggs_;
  std::map<AggregateAtom, int> agg_ids_;
  std::uint64_t nodes_ = 0;

  int index_of(const Atom& a) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
    return it != atoms_.end() && *it == a ? static_cast<int>(it - atoms_.begin()) : -1;
  }

  int agg_id(const AggregateAtom& l) {
    auto it = agg_ids_.find(l);
    if (it != agg_ids_.end()) return it->second;
    AggInfo info{l, {}, {}};
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (match_pattern(l.spec, atoms_[i])) {
        info.base.push_back(atoms_[i]);
        info.idx.push_back(static_cast<int>(i));
      }
    aggs_.push_back(std::move(info));
    agg_ids_.emplace(l, static_cast<int>(aggs_.size() - 1));
    return static_cast<int>(aggs_.size() - 1);
  }

  bool agg_true(int id, const std::vector<signed char>& v) const {
    const AggInfo& info = aggs_[id];
    BaseView bv(info.atom, info.base);
    Mask t = 0, f = 0;
    for (std::size_t i = 0; i < info.idx.size(); ++i) {
      if (v[info.idx[i]] > 0) t |= Mask{1} << i;
      else if (v[info.idx[i]] < 0) f |= Mask{1} << i;
    }
    return bv.entailed(t, f, lim_.max_check_base);
  }

  bool propagate(std::vector<signed char>& v) const {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& c : rules_) {
        bool body = true;
        for (int a : c.pos) body &= v[a] > 0;
        for (int a : c.neg) body &= v[a] < 0;
        for (std::size_t k = 0; k < c.aggs.size() && body; ++k) body = agg_true(c.aggs[k], v);
        if (!body) continue;
        if (c.head_never) return false;
        if (c.head >= 0) {
          if (v[c.head] < 0) return false;
          if (v[c.head] == 0) {
            v[c.head] = 1;
            changed = true;
          }
        }
      }
    }
    return true;
  }

  bool dfs(std::vector<signed char>& v) {
    if (++nodes_ > lim_.max_search_nodes)
      throw ResourceError("minimal-model search exceeds " + std::to_string(lim_.max_search_nodes) + " nodes");
    auto saved = v;
    if (!propagate(v)) {
      v = saved;
      return false;
    }
    auto it = std::find(v.begin(), v.end(), 0);
    if (it == v.end()) {
      bool proper = std::find(v.begin(), v.end(), -1) != v.end();
      bool ok = false;
      if (proper) {
        Interpretation N;
        for (std::size_t i = 0; i < v.size(); ++i)
          if (v[i] > 0) N.insert(atoms_[i]);
        ok = is_model(N, G_);
      }
      v = saved;
      return ok;
    }
    auto a = it - v.begin();
    for (signed char x : {-1, 1}) {
      auto w = v;
      w[a] = x;
      if (dfs(w)) return true;
    }
    v = saved;
    return false;
  }
};

}  // namespace detail

// M is a model of G and no proper subset is; exhaustive for small M, pruned search otherwise.
inline bool is_minimal_model(const std::vector<Rule>& G, const Interpretation& M, const Limits& lim = {}) {
  if (!is_model(M, G)) return false;
  if (M.size() <= 10) return is_minimal_model_exhaustive(G, M, lim);
  detail::SubModelSearch s(G, M, lim);
  return !s.found();
}

inline bool is_minimal_model(const NormalProgram& N, const Interpretation& M, const Limits& lim = {}) {
  return is_minimal_model(to_rules(N), M, lim);
}

}  // namespace aspa
