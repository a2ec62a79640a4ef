// ASP^A answer sets (static and interpretation-relative definitions, head aggregates) and the
// reference semantics used for cross-checking: FLP, stable sets, perfect model, monotone fixpoint.
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "aspa/grounder.hpp"
#include "aspa/solver.hpp"
#include "aspa/unfold.hpp"

namespace aspa {

struct SemanticsConfig {
  BaseMode base = BaseMode::HeadRestricted;
  SolutionMode solutions = SolutionMode::Minimal;
  Limits limits;
};

inline void sort_interpretations(std::vector<Interpretation>& v) {
  std::sort(v.begin(), v.end(), [](const Interpretation& a, const Interpretation& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Answer sets of unfolding(P); programs without aggregate heads.
inline std::vector<Interpretation> aspa_answer_sets(const GroundProgram& G, std::optional<std::size_t> limit = std::nullopt,
                                                    const SemanticsConfig& cfg = {}) {
  return enumerate_answer_sets(unfold_program(G, cfg.solutions, cfg.base, cfg.limits), limit, cfg.limits);
}

inline std::vector<Interpretation> aspa_answer_sets(const Program& P, std::optional<std::size_t> limit = std::nullopt,
                                                    const SemanticsConfig& cfg = {}) {
  return aspa_answer_sets(ground_program(P, cfg.limits), limit, cfg);
}

// M = lfp(unfolding*(P(M), M)), consistent.
inline bool is_aspa_answer_set(const GroundProgram& G, const Interpretation& M, const SemanticsConfig& cfg = {}) {
  const GroundProgram reduced = G.has_aggregate_heads() ? head_reduct(G, M, cfg.limits) : G;
  auto lm = least_model(unfold_program_wrt(reduced, M, cfg.base, cfg.limits, true));
  return lm && *lm == M;
}

inline bool is_aspa_answer_set(const Program& P, const Interpretation& M, const SemanticsConfig& cfg = {}) {
  return is_aspa_answer_set(ground_program(P, cfg.limits), M, cfg);
}

// Generate-and-test over subsets of the candidate base (facts are always included).
inline std::vector<Interpretation> enumerate_aspa_general(const GroundProgram& G,
                                                          std::optional<std::size_t> limit = std::nullopt,
                                                          const SemanticsConfig& cfg = {}) {
  Interpretation facts;
  for (const auto& r : G.rules)
    if (r.is_fact()) facts.insert(*r.head_atom());
  std::vector<Atom> cand;
  for (const auto& a : G.heads)
    if (!facts.count(a)) cand.push_back(a);
  if (cand.size() > cfg.limits.max_candidate_base)
    throw ResourceError("candidate base of " + std::to_string(cand.size()) + " atoms exceeds generate-and-test cap " +
                        std::to_string(cfg.limits.max_candidate_base));
  std::vector<Interpretation> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << cand.size()); ++s) {
    Interpretation M = facts;
    for (std::size_t i = 0; i < cand.size(); ++i)
      if (s >> i & 1) M.insert(cand[i]);
    if (is_aspa_answer_set(G, M, cfg)) out.push_back(std::move(M));
  }
  sort_interpretations(out);
  if (limit && out.size() > *limit) out.resize(*limit);
  return out;
}

inline std::vector<Interpretation> enumerate_aspa_general(const Program& P, std::optional<std::size_t> limit = std::nullopt,
                                                          const SemanticsConfig& cfg = {}) {
  return enumerate_aspa_general(ground_program(P, cfg.limits), limit, cfg);
}

inline void require_no_aggregate_heads(const GroundProgram& G, const char* what) {
  if (G.has_aggregate_heads()) throw PreconditionError(std::string(what) + " is undefined for aggregate heads");
}

// ^S P: the ground rules whose body S satisfies.
inline GroundProgram flp_reduct(const GroundProgram& G, const Interpretation& S) {
  require_no_aggregate_heads(G, "the FLP reduct");
  GroundProgram out = G;
  out.rules.clear();
  for (const auto& r : G.rules)
    if (body_satisfied(S, r)) out.rules.push_back(r);
  return out;
}

inline bool is_flp_answer_set(const GroundProgram& G, const Interpretation& S, const Limits& lim = {}) {
  auto R = flp_reduct(G, S);
  return is_model(S, R.rules) && is_minimal_model(R.rules, S, lim);
}

// G(M, P): rules with a false aggregate or naf literal removed, the rest stripped to their positive atoms.
inline DefiniteProgram stable_set_reduct(const GroundProgram& G, const Interpretation& M) {
  require_no_aggregate_heads(G, "stable sets are");
  DefiniteProgram d;
  for (const auto& r : G.rules) {
    bool keep = std::none_of(r.neg.begin(), r.neg.end(), [&](const Atom& a) { return M.count(a) > 0; }) &&
                std::all_of(r.aggs.begin(), r.aggs.end(), [&](const AggregateAtom& l) { return eval_aggregate(M, l); });
    if (!keep) continue;
    DefiniteRule dr{r.head_atom() ? std::optional<Atom>(*r.head_atom()) : std::nullopt, r.pos};
    normalize(dr.body);
    d.rules.push_back(std::move(dr));
  }
  return d;
}

inline bool is_stable_set(const GroundProgram& G, const Interpretation& M) {
  auto lm = least_model(stable_set_reduct(G, M));
  return lm && *lm == M;
}

inline bool is_supported(const GroundProgram& G, const Interpretation& M) {
  for (const auto& a : M) {
    bool ok = false;
    for (const auto& r : G.rules)
      if (auto h = r.head_atom(); h && *h == a && body_satisfied(M, r)) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

// Stratum-wise least fixpoint; falsum rules are not part of the construction.
inline Interpretation perfect_model(const Program& P, const GroundProgram& G) {
  auto lev = stratification(dependency_graph(P));
  if (!lev || G.has_aggregate_heads()) throw PreconditionError("program is not aggregate-stratified");
  int top = 0;
  for (const auto& [_, l] : *lev) top = std::max(top, l);
  Interpretation I;
  for (int level = 0; level <= top; ++level) {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& r : G.rules) {
        auto h = r.head_atom();
        if (!h || lev->at(signature(*h)) != level || I.count(*h)) continue;
        if (body_satisfied(I, r)) {
          I.insert(*h);
          changed = true;
        }
      }
    }
  }
  return I;
}

inline Interpretation perfect_model(const Program& P, const Limits& lim = {}) {
  return perfect_model(P, ground_program(P, lim));
}

// lfp(T_P^B) ∪ B with B the EDB facts.
inline Interpretation monotone_fixpoint(const GroundProgram& G) {
  Interpretation B = edb_facts(G.rules);
  Interpretation I;
  for (bool changed = true; changed;) {
    changed = false;
    Interpretation IB = I;
    IB.insert(B.begin(), B.end());
    for (const auto& r : G.rules) {
      auto h = r.head_atom();
      if (!h || I.count(*h)) continue;
      if (r.is_fact() && B.count(*h)) continue;
      if (body_satisfied(IB, r)) {
        I.insert(*h);
        changed = true;
      }
    }
  }
  I.insert(B.begin(), B.end());
  return I;
}

inline Interpretation monotone_fixpoint(const Program& P, const Limits& lim = {}) {
  auto G = ground_program(P, lim);
  if (classify(P, G, BaseMode::HeadRestricted, lim).is_monotone != Tri::True)
    throw PreconditionError("program is not known to be monotone");
  return monotone_fixpoint(G);
}

struct SemanticsVerdict {
  Interpretation interpretation;
  std::optional<bool> aspa_static, aspa_wrt, flp, stable_set, model, minimal_model, supported;
  std::vector<std::string> notes;
};

struct CrossCheckReport {
  ProgramClass program_class;
  std::vector<SemanticsVerdict> verdicts;
  std::vector<std::string> violations;  // outcomes contradicting a containment property
  std::vector<std::string> notes;       // informational, including expected divergences
  bool ok() const { return violations.empty(); }
};

inline SemanticsVerdict verdict_for(const GroundProgram& G, const Interpretation& M, const SemanticsConfig& cfg,
                                    std::vector<std::string>& violations) {
  SemanticsVerdict v;
  v.interpretation = M;
  const std::string name = to_string(M);
  auto violate = [&](const std::string& what) { violations.push_back(name + ": " + what); };
  v.aspa_wrt = is_aspa_answer_set(G, M, cfg);
  v.model = is_model(M, G);
  if (G.has_aggregate_heads()) {
    if (*v.aspa_wrt && !*v.model) violate("general answer set is not a model of P");
    return v;
  }
  const NormalProgram unfolded = unfold_program(G, cfg.solutions, cfg.base, cfg.limits);
  v.aspa_static = is_answer_set(unfolded, M);
  v.flp = is_flp_answer_set(G, M, cfg.limits);
  v.stable_set = is_stable_set(G, M);
  v.supported = is_supported(G, M);
  v.minimal_model = *v.model && is_minimal_model(G.rules, M, cfg.limits);
  if (*v.aspa_static != *v.aspa_wrt) violate("the two answer-set definitions disagree");
  if (*v.aspa_wrt) {
    if (!*v.model) violate("answer set is not a model");
    if (!*v.minimal_model) violate("answer set is not a minimal model");
    if (!*v.supported) violate("answer set is not supported");
    if (!*v.flp) violate("answer set is not an FLP answer set");
    if (!*v.stable_set) violate("answer set is not a stable set");
  }
  if (*v.flp && !is_minimal_model(unfolded, M, cfg.limits)) violate("FLP answer set is not a minimal model of unfolding(P)");
  if (*v.flp && !*v.aspa_wrt) v.notes.push_back("FLP accepts while ASP^A rejects (semantic divergence)");
  if (*v.stable_set && !*v.aspa_wrt) v.notes.push_back("stable set that is not an ASP^A answer set");
  return v;
}

// Verifies the containment properties on the supplied interpretation or on every computed answer set.
inline CrossCheckReport cross_check(const Program& P, const std::optional<Interpretation>& M = std::nullopt,
                                    const SemanticsConfig& cfg = {}) {
  CrossCheckReport rep;
  const GroundProgram G = ground_program(P, cfg.limits);
  rep.program_class = classify(P, G, cfg.base, cfg.limits);
  if (M) {
    rep.verdicts.push_back(verdict_for(G, *M, cfg, rep.violations));
    return rep;
  }
  const bool general = G.has_aggregate_heads();
  auto answers = general ? enumerate_aspa_general(G, std::nullopt, cfg) : aspa_answer_sets(G, std::nullopt, cfg);
  for (const auto& a : answers) {
    rep.verdicts.push_back(verdict_for(G, a, cfg, rep.violations));
    if (!rep.verdicts.back().aspa_wrt.value_or(false))
      rep.violations.push_back(to_string(a) + ": enumerated answer set fails the interpretation-relative definition");
  }
  if (general) return rep;
  auto expect_unique = [&](const Interpretation& I, const std::string& what) {
    bool consistent = is_model(I, G);
    std::vector<Interpretation> expected;
    if (consistent) expected.push_back(I);
    if (answers != expected)
      rep.violations.push_back(what + " " + to_string(I) + " does not match the computed answer sets");
    else
      rep.notes.push_back(what + ": " + to_string(I));
  };
  if (rep.program_class.is_aggregate_stratified) expect_unique(perfect_model(P, G), "perfect model");
  if (rep.program_class.is_monotone == Tri::True) expect_unique(monotone_fixpoint(G), "monotone fixpoint");
  return rep;
}

}  // namespace aspa
