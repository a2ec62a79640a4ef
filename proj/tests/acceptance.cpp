// Acceptance driver: one PASS/FAIL line per criterion; exit status 1 if any criterion fails.
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>

#include "aspa/bench.hpp"
#include "oracle.hpp"

using namespace aspa;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

using clock_type = std::chrono::steady_clock;
double since(clock_type::time_point t) { return std::chrono::duration<double>(clock_type::now() - t).count(); }

std::string corpus_path(const std::string& rel) { return std::string(ASPA_CORPUS_DIR) + "/" + rel; }

Program load(const std::string& path) {
  const std::string text = oracle::read_file(path);
  auto W = parse_weight_program(text);
  return has_weight_constraints(W) ? translate_weight_program(W) : parse_program(text);
}

std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(ASPA_CORPUS_DIR))
    if (e.is_regular_file() && e.path().extension() == ".aspa") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> render(const std::vector<Interpretation>& v) {
  std::vector<std::string> out;
  for (const auto& m : v) out.push_back(to_string(m));
  return out;
}

std::vector<Interpretation> subsets(const Interpretation& atoms) {
  std::vector<Atom> a(atoms.begin(), atoms.end());
  std::vector<Interpretation> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << a.size()); ++s) {
    Interpretation I;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (s >> i & 1) I.insert(a[i]);
    out.push_back(std::move(I));
  }
  return out;
}

std::vector<std::string> random_programs() {
  std::mt19937 rng(20060101);
  std::vector<std::string> out;
  for (int i = 0; i < 120; ++i) out.push_back(oracle::random_aggregate_program(rng, 8));
  return out;
}

Outcome golden() {
  Outcome o;
  auto timed = [&](const std::string& what, const std::function<bool()>& f) {
    auto t = clock_type::now();
    bool ok = f();
    double s = since(t);
    if (!ok) o.fail(what + " mismatch");
    else if (s >= 1.0) o.fail(what + " took " + std::to_string(s) + " s");
  };
  auto answers = [](const char* f) { return render(aspa_answer_sets(load(corpus_path(f)))); };
  timed("P1", [&] { return answers("p1.aspa") == std::vector<std::string>{"{p(a), p(b)}", "{q}"}; });
  timed("P2", [&] { return answers("p2.aspa") == std::vector<std::string>{"{p(1), p(2), p(3)}"}; });
  timed("P3", [&] { return answers("p3.aspa").empty(); });
  timed("P4", [&] {
    auto G = ground_program(load(corpus_path("p4.aspa")));
    auto M = parse_interpretation("p(1), p(2), q");
    return aspa_answer_sets(G).empty() && is_minimal_model(G.rules, M);
  });
  timed("P6", [&] {
    auto G = ground_program(load(corpus_path("p6.aspa")));
    return aspa_answer_sets(G).empty() && is_flp_answer_set(G, parse_interpretation("p(1), p(-1)"));
  });
  timed("P5", [&] {
    return render(enumerate_aspa_general(load(corpus_path("p5.aspa")))) ==
           std::vector<std::string>{"{gotA(a), gotA(b), gotA(c), student(a), student(b), student(c)}",
                                    "{gotA(a), gotA(b), student(a), student(b), student(c)}",
                                    "{gotA(a), gotA(c), student(a), student(b), student(c)}",
                                    "{gotA(b), gotA(c), student(a), student(b), student(c)}"};
  });
  timed("P7", [&] { return answers("p7.aspa") == std::vector<std::string>{"{}"}; });
  if (o.ok) o.detail = "P1-P7 exact";
  return o;
}

Outcome solution_counts() {
  Outcome o;
  auto agg = [](const std::string& t) { return parse_program("h :- " + t + ".").rules.at(0).aggs.at(0); };
  auto set_of = [](const SolutionSet& s) {
    std::set<std::string> out;
    for (const auto& x : s.solutions) out.insert(x.to_string());
    return out;
  };
  std::vector<Atom> b3;
  for (int v : {1, 2, 3}) b3.push_back(make_atom("p", {Constant::integer(v)}));
  const std::set<std::string> listed = {
      "<{p(1)}, {}>",       "<{p(1)}, {p(2)}>",         "<{p(1)}, {p(3)}>",     "<{p(1)}, {p(2), p(3)}>",
      "<{p(1), p(2)}, {}>", "<{p(1), p(2)}, {p(3)}>",   "<{p(1), p(3)}, {}>",   "<{p(1), p(3)}, {p(2)}>",
      "<{p(2)}, {p(3)}>",   "<{p(2)}, {p(1), p(3)}>",   "<{p(3)}, {p(2)}>",     "<{p(3)}, {p(1), p(2)}>",
      "<{p(1), p(2), p(3)}, {}>", "<{}, {p(2)}>",       "<{}, {p(3)}>",         "<{}, {p(1), p(2)}>",
      "<{}, {p(1), p(3)}>", "<{}, {p(2), p(3)}>",       "<{}, {p(1), p(2), p(3)}>"};
  auto s19 = set_of(all_solutions(agg("SUM{ X : p(X) } != 5"), b3));
  if (s19 != listed) o.fail("SUM != 5 gave " + std::to_string(s19.size()) + " solutions");
  std::vector<Atom> bab{make_atom("p", {Constant::symbol("a")}), make_atom("p", {Constant::symbol("b")})};
  auto s5 = set_of(all_solutions(agg("COUNT{ X : p(X) } > 0"), bab));
  if (s5 != std::set<std::string>{"<{p(a)}, {}>", "<{p(b)}, {}>", "<{p(a), p(b)}, {}>", "<{p(a)}, {p(b)}>",
                                  "<{p(b)}, {p(a)}>"})
    o.fail("COUNT > 0 gave " + std::to_string(s5.size()) + " solutions");
  if (o.ok) o.detail = "19 and 5 solutions, element-for-element";
  return o;
}

Outcome full_vs_minimal(const std::vector<std::string>& progs) {
  Outcome o;
  SemanticsConfig full;
  full.solutions = SolutionMode::Full;
  for (const auto& t : progs) {
    auto G = ground_program(parse_program(t));
    if (aspa_answer_sets(G) != aspa_answer_sets(G, std::nullopt, full)) o.fail("differs on:\n" + t);
  }
  if (o.ok) o.detail = std::to_string(progs.size()) + " random programs";
  return o;
}

Outcome completeness(const std::vector<std::string>& progs) {
  Outcome o;
  std::size_t atoms = 0, checks = 0;
  for (const auto& t : progs) {
    auto G = ground_program(parse_program(t));
    for (const auto& l : G.aggregates) {
      for (auto mode : {BaseMode::HeadRestricted, BaseMode::FullPattern}) {
        auto base = aggregate_base(l, G, mode);
        if (base.size() > 8) continue;
        ++atoms;
        auto mc = minimal_complete_solutions(l, base);
        Interpretation all(base.begin(), base.end());
        for (const auto& I : subsets(all)) {
          ++checks;
          bool some = std::any_of(mc.solutions.begin(), mc.solutions.end(), [&](const AggregateSolution& s) {
            return std::all_of(s.p.begin(), s.p.end(), [&](const Atom& a) { return I.count(a) > 0; }) &&
                   std::none_of(s.n.begin(), s.n.end(), [&](const Atom& a) { return I.count(a) > 0; });
          });
          if (some != eval_aggregate(I, l, base)) o.fail(l.to_string() + " at " + to_string(I));
        }
      }
    }
  }
  if (o.ok) o.detail = std::to_string(atoms) + " aggregate atoms, " + std::to_string(checks) + " interpretations";
  return o;
}

Outcome equivalence(const std::vector<std::string>& progs) {
  Outcome o;
  std::size_t checks = 0;
  for (const auto& t : progs) {
    auto G = ground_program(parse_program(t));
    if (G.atoms.size() > 12) continue;
    auto N = unfold_program(G, SolutionMode::Full);
    for (const auto& M : subsets(G.atoms)) {
      ++checks;
      if (is_answer_set(N, M) != is_aspa_answer_set(G, M)) o.fail(to_string(M) + " on:\n" + t);
    }
  }
  if (o.ok) o.detail = std::to_string(checks) + " interpretations";
  return o;
}

Outcome containment(const std::vector<std::string>& progs) {
  Outcome o;
  std::size_t sets = 0;
  auto run = [&](const Program& P, const std::string& name) {
    auto rep = cross_check(P);
    sets += rep.verdicts.size();
    for (const auto& v : rep.violations) o.fail(name + ": " + v);
  };
  for (const auto& f : corpus_files()) run(load(f), fs::path(f).filename().string());
  for (const auto& t : progs) run(parse_program(t), "random program");
  if (o.ok) o.detail = std::to_string(sets) + " answer sets, zero violations";
  return o;
}

Outcome uniqueness() {
  Outcome o;
  int strat = 0, mono = 0;
  for (const auto& f : corpus_files()) {
    const auto name = fs::path(f).filename().string();
    auto P = load(f);
    auto G = ground_program(P);
    if (G.has_aggregate_heads()) continue;
    auto c = classify(P, G);
    auto answers = aspa_answer_sets(G);
    if (c.is_aggregate_stratified) {
      ++strat;
      auto pm = perfect_model(P, G);
      if (answers != std::vector<Interpretation>{pm}) o.fail(name + ": answer sets differ from the perfect model");
    }
    if (c.is_monotone == Tri::True) {
      ++mono;
      auto mf = monotone_fixpoint(G);
      if (answers != std::vector<Interpretation>{mf}) o.fail(name + ": answer sets differ from the monotone fixpoint");
    }
  }
  if (strat == 0 || mono == 0) o.fail("corpus lacks stratified or monotone programs");
  if (o.ok) o.detail = std::to_string(strat) + " stratified, " + std::to_string(mono) + " monotone programs";
  return o;
}

Outcome solver() {
  Outcome o;
  std::mt19937 rng(424242);
  int programs = 0;
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + static_cast<int>(rng() % 14);
    const int k = 1 + static_cast<int>(rng() % (2 * n + 2));
    auto rules = oracle::random_normal_program(rng, n, k);
    const auto text = oracle::to_text(rules);
    std::vector<std::string> want;
    for (auto M : oracle::brute_answer_sets(rules, n)) want.push_back("{" + oracle::to_text(M, n) + "}");
    auto got = render(enumerate_answer_sets(to_normal(ground_program(parse_program(text)).rules)));
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (got != want) o.fail("mismatch on:\n" + text);
    ++programs;
  }
  if (o.ok) o.detail = std::to_string(programs) + " programs up to 14 atoms";
  return o;
}

Outcome benchmarks() {
  Outcome o;
  std::string detail;
  for (const auto& name : bench_names()) {
    auto t = clock_type::now();
    auto r = run_bench(name);
    double s = since(t);
    if (!r.oracle_checked || !r.oracle_ok) o.fail(name + " [" + r.params + "] disagrees with its oracle");
    if (s >= 60.0) o.fail(name + " took " + std::to_string(s) + " s");
    detail += (detail.empty() ? "" : ", ") + name + "=" + std::to_string(r.answer_sets);
  }
  if (o.ok) o.detail = "answer sets: " + detail;
  return o;
}

}  // namespace

int main() {
  const auto progs = random_programs();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"golden examples", golden},
      {"solution-set counts", solution_counts},
      {"full vs minimal-complete unfolding", [&] { return full_vs_minimal(progs); }},
      {"completeness of minimal-complete sets", [&] { return completeness(progs); }},
      {"equivalence of the two answer-set definitions", [&] { return equivalence(progs); }},
      {"answer-set containment", [&] { return containment(progs); }},
      {"unique answer set of stratified and monotone programs", uniqueness},
      {"solver against all-subsets oracle", solver},
      {"benchmarks at desk scale", benchmarks},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.detail << std::endl;
    failed += !o.ok;
  }
  return failed ? 1 : 0;
}
