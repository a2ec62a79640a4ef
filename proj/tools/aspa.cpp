// aspa: command-line driver for grounding, unfolding, solving and checking aggregate programs.
#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "aspa/bench.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace aspa;

enum Exit { kOk = 0, kUsage = 1, kResource = 2, kInvariant = 3 };

struct Options {
  std::string file;
  bool json = false;
  bool full_base = false;
  bool full = false;
  bool minimal = false;
  Limits limits;
};

std::string read_source(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SemanticsConfig config(const Options& o) {
  SemanticsConfig c;
  c.base = o.full_base ? BaseMode::FullPattern : BaseMode::HeadRestricted;
  c.solutions = o.full ? SolutionMode::Full : SolutionMode::Minimal;
  c.limits = o.limits;
  return c;
}

json atoms_json(const Interpretation& I) {
  json a = json::array();
  for (const auto& x : I) a.push_back(x.to_string());
  return a;
}

json atoms_json(const std::vector<Atom>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.to_string());
  return a;
}

json rules_json(const std::vector<Rule>& rules) {
  json a = json::array();
  for (const auto& r : rules) a.push_back(to_string(r));
  return a;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void print_answers(const std::vector<Interpretation>& answers) {
  for (std::size_t i = 0; i < answers.size(); ++i) std::cout << "Answer: " << i + 1 << "\n" << to_string(answers[i]) << "\n";
  std::cout << (answers.empty() ? "UNSATISFIABLE" : "SATISFIABLE") << "\n";
}

json answers_json(const char* command, const std::vector<Interpretation>& answers) {
  json j{{"command", command}, {"satisfiable", !answers.empty()}};
  json a = json::array();
  for (const auto& m : answers) a.push_back(atoms_json(m));
  j["answer_sets"] = a;
  return j;
}

// Weight-constraint programs are translated; anything else parses as a plain program.
Program load_program(const std::string& text, bool* translated = nullptr) {
  auto W = parse_weight_program(text);
  if (translated) *translated = has_weight_constraints(W);
  if (has_weight_constraints(W)) return translate_weight_program(W);
  return parse_program(text);
}

int cmd_ground(const Options& o) {
  Program P = load_program(read_source(o.file));
  GroundProgram G = ground_program(P, o.limits);
  if (o.json) {
    emit({{"command", "ground"}, {"rules", rules_json(G.rules)}, {"atoms", atoms_json(G.atoms)}});
  } else {
    for (const auto& r : G.rules) std::cout << to_string(r) << "\n";
  }
  return kOk;
}

int cmd_solutions(const Options& o, std::optional<std::size_t> index) {
  Program P = load_program(read_source(o.file));
  GroundProgram G = ground_program(P, o.limits);
  const auto cfg = config(o);
  if (index && (*index == 0 || *index > G.aggregates.size()))
    throw PreconditionError("aggregate index " + std::to_string(*index) + " out of range 1.." +
                            std::to_string(G.aggregates.size()));
  json list = json::array();
  for (std::size_t i = 0; i < G.aggregates.size(); ++i) {
    if (index && i + 1 != *index) continue;
    const auto& l = G.aggregates[i];
    auto base = aggregate_base(l, G, cfg.base, o.limits);
    auto set = solutions_for(l, base, cfg.solutions, o.limits);
    if (o.json) {
      json sols = json::array();
      for (const auto& s : set.solutions) sols.push_back({{"p", atoms_json(s.p)}, {"n", atoms_json(s.n)}});
      list.push_back({{"index", i + 1},
                      {"atom", l.to_string()},
                      {"base", atoms_json(base)},
                      {"kind", o.full ? "full" : "minimal-complete"},
                      {"solutions", sols}});
    } else {
      std::cout << "aggregate " << i + 1 << ": " << l.to_string() << "\n";
      std::cout << "base: " << to_string(Interpretation(base.begin(), base.end())) << "\n";
      std::cout << (o.full ? "solutions" : "minimal complete solutions") << " (" << set.solutions.size() << "):\n";
      for (const auto& s : set.solutions) std::cout << "  " << s.to_string() << "\n";
    }
  }
  if (o.json) emit({{"command", "solutions"}, {"aggregates", list}});
  return kOk;
}

int cmd_unfold(const Options& o, const std::string& wrt_file) {
  Program P = load_program(read_source(o.file));
  GroundProgram G = ground_program(P, o.limits);
  const auto cfg = config(o);
  std::vector<Rule> rules;
  std::optional<Interpretation> M;
  if (!wrt_file.empty()) {
    M = parse_interpretation(read_source(wrt_file));
    const GroundProgram R = G.has_aggregate_heads() ? head_reduct(G, *M, o.limits) : G;
    rules = to_rules(unfold_program_wrt(R, *M, cfg.base, o.limits));
  } else {
    rules = to_rules(unfold_program(G, cfg.solutions, cfg.base, o.limits));
  }
  if (o.json) {
    json j{{"command", "unfold"}, {"mode", M ? "wrt" : (o.full ? "full" : "minimal")}};
    j["wrt"] = M ? atoms_json(*M) : json(nullptr);
    j["rules"] = rules_json(rules);
    emit(j);
  } else {
    std::cout << format_rules(rules);
  }
  return kOk;
}

int cmd_solve(const Options& o, std::optional<std::size_t> limit) {
  bool translated = false;
  Program P = load_program(read_source(o.file), &translated);
  const auto cfg = config(o);
  GroundProgram G = ground_program(P, o.limits);
  auto answers = G.has_aggregate_heads() ? enumerate_aspa_general(G, limit, cfg) : aspa_answer_sets(G, limit, cfg);
  if (o.json) {
    auto j = answers_json("solve", answers);
    j["translated"] = translated;
    emit(j);
  } else {
    print_answers(answers);
  }
  return kOk;
}

int cmd_solve_normal(const Options& o, std::optional<std::size_t> limit) {
  Program P = parse_program(read_source(o.file));
  GroundProgram G = ground_program(P, o.limits);
  for (const auto& r : G.rules)
    if (!r.aggs.empty() || r.has_aggregate_head())
      throw PreconditionError("solve-normal expects an aggregate-free program; found " + to_string(r));
  auto answers = enumerate_answer_sets(to_normal(G.rules), limit, o.limits);
  if (o.json)
    emit(answers_json("solve-normal", answers));
  else
    print_answers(answers);
  return kOk;
}

std::string yn(const std::optional<bool>& b) { return b ? (*b ? "yes" : "no") : "n/a"; }
json jb(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

json verdict_json(const SemanticsVerdict& v) {
  return {{"interpretation", atoms_json(v.interpretation)},
          {"aspa_static", jb(v.aspa_static)},
          {"aspa_wrt", jb(v.aspa_wrt)},
          {"flp", jb(v.flp)},
          {"stable_set", jb(v.stable_set)},
          {"model", jb(v.model)},
          {"minimal_model", jb(v.minimal_model)},
          {"supported", jb(v.supported)},
          {"notes", v.notes}};
}

json class_json(const ProgramClass& c) {
  json levels = json::object();
  for (const auto& [sig, l] : c.levels) levels[sig.name + "/" + std::to_string(sig.arity)] = l;
  return {{"head_aggregates", c.has_head_aggregates},
          {"aggregate_stratified", c.is_aggregate_stratified},
          {"normal", c.is_normal},
          {"constraints", c.has_constraints},
          {"monotone", to_string(c.is_monotone)},
          {"levels", levels}};
}

std::string verdict_line(const SemanticsVerdict& v, const std::string& semantics) {
  std::string line;
  auto add = [&](const std::string& s) { line += (line.empty() ? "" : " ") + s; };
  if (semantics == "aspa" || semantics == "all") add("aspa:" + yn(v.aspa_wrt));
  if (semantics == "flp" || semantics == "all") add("flp:" + yn(v.flp));
  if (semantics == "stableset" || semantics == "all") add("stableset:" + yn(v.stable_set));
  if (semantics == "all") {
    add("model:" + yn(v.model));
    add("minimal:" + yn(v.minimal_model));
    add("supported:" + yn(v.supported));
  }
  return line;
}

int cmd_check(const Options& o, const std::string& model, const std::string& semantics) {
  Program P = load_program(read_source(o.file));
  std::optional<Interpretation> M;
  if (!model.empty()) M = parse_interpretation(model);
  auto rep = cross_check(P, M, config(o));
  if (o.json) {
    json vs = json::array();
    for (const auto& v : rep.verdicts) vs.push_back(verdict_json(v));
    emit({{"command", "check"},
          {"class", class_json(rep.program_class)},
          {"verdicts", vs},
          {"violations", rep.violations},
          {"notes", rep.notes},
          {"ok", rep.ok()}});
  } else {
    for (std::size_t i = 0; i < rep.verdicts.size(); ++i) {
      const auto& v = rep.verdicts[i];
      if (!M) std::cout << "Answer: " << i + 1 << "\n" << to_string(v.interpretation) << "\n";
      std::cout << verdict_line(v, semantics) << "\n";
      for (const auto& n : v.notes) std::cout << "note: " << n << "\n";
    }
    if (!M && rep.verdicts.empty()) std::cout << "UNSATISFIABLE\n";
    for (const auto& n : rep.notes) std::cout << "note: " << n << "\n";
    for (const auto& v : rep.violations) std::cout << "violation: " << v << "\n";
    if (!M) std::cout << (rep.ok() ? "OK" : "VIOLATIONS") << "\n";
  }
  return rep.ok() ? kOk : kInvariant;
}

int cmd_classify(const Options& o) {
  Program P = load_program(read_source(o.file));
  GroundProgram G = ground_program(P, o.limits);
  auto c = classify(P, G, config(o).base, o.limits);
  if (o.json) {
    json j{{"command", "classify"}};
    j.update(class_json(c));
    emit(j);
    return kOk;
  }
  auto b = [](bool v) { return v ? "yes" : "no"; };
  std::cout << "head-aggregates: " << b(c.has_head_aggregates) << "\n"
            << "aggregate-stratified: " << b(c.is_aggregate_stratified) << "\n"
            << "normal: " << b(c.is_normal) << "\n"
            << "constraints: " << b(c.has_constraints) << "\n"
            << "monotone: " << to_string(c.is_monotone) << "\n";
  if (c.is_aggregate_stratified) {
    std::cout << "levels:";
    for (const auto& [sig, l] : c.levels) std::cout << " " << sig.name << "/" << sig.arity << "=" << l;
    std::cout << "\n";
  }
  return kOk;
}

int cmd_translate(const Options& o) {
  auto W = parse_weight_program(read_source(o.file));
  Program P = translate_weight_program(W);
  if (o.json)
    emit({{"command", "translate-weights"}, {"program", format_program(P)}, {"rules", rules_json(P.rules)}});
  else
    std::cout << format_program(P);
  return kOk;
}

int cmd_bench(const Options& o, std::vector<std::string> names, const BenchParams& params, bool timings,
              const std::string& emit_name) {
  if (!emit_name.empty()) {
    std::cout << make_bench(emit_name, params).program;
    return kOk;
  }
  if (names.empty()) names = bench_names();
  const auto cfg = config(o);
  json results = json::array();
  bool ok = true;
  if (!o.json && timings) std::cout << "timings in seconds on this machine; not comparable to published figures\n";
  for (const auto& n : names) {
    auto r = run_bench(make_bench(n, params), cfg);
    const char* oracle = !r.oracle_checked ? "skipped" : (r.oracle_ok ? "ok" : "mismatch");
    ok = ok && (!r.oracle_checked || r.oracle_ok);
    if (o.json) {
      json j{{"name", r.name},
             {"params", r.params},
             {"answer_sets", r.answer_sets},
             {"first_answer_set", r.answer_sets ? atoms_json(r.first) : json(nullptr)},
             {"oracle", oracle}};
      if (timings)
        j["timings"] = {{"ground", r.ground_seconds}, {"transform", r.transform_seconds}, {"solve", r.solve_seconds}};
      results.push_back(j);
    } else {
      std::cout << r.name << " [" << r.params << "] answer_sets=" << r.answer_sets << " oracle=" << oracle;
      if (timings)
        std::cout << std::fixed << std::setprecision(4) << " ground=" << r.ground_seconds
                  << " transform=" << r.transform_seconds << " solve=" << r.solve_seconds << std::defaultfloat;
      std::cout << "\n";
      if (r.answer_sets) std::cout << "  first: " << to_string(r.first) << "\n";
    }
  }
  if (o.json) emit({{"command", "bench"}, {"results", results}});
  return ok ? kOk : kInvariant;
}

template <class T>
void add_cap(CLI::App* app, const std::string& flag, const std::string& env, T& field, const std::string& help) {
  app->add_option(flag, field, help)->envname(env)->check(CLI::PositiveNumber)->capture_default_str();
}

void add_common(CLI::App* app, Options& o, bool file = true) {
  if (file) app->add_option("FILE", o.file, "program file, or - for stdin")->required();
  app->add_flag("--json", o.json, "emit JSON");
  app->add_flag("--full-base", o.full_base, "aggregate base over every pattern instance, not only rule heads");
  auto* full = app->add_flag("--full", o.full, "use all aggregate solutions");
  auto* minimal = app->add_flag("--minimal", o.minimal, "use minimal complete solution sets (default)");
  full->excludes(minimal);
  add_cap(app, "--max-ground", "ASPA_MAX_GROUND", o.limits.max_ground_rules, "cap on ground rules");
  add_cap(app, "--max-base", "ASPA_MAX_BASE", o.limits.max_check_base, "cap on brute-force entailment bases");
  add_cap(app, "--max-full-base", "ASPA_MAX_FULL_BASE", o.limits.max_full_base, "cap on bases for full solution sets");
  add_cap(app, "--max-minimal-base", "ASPA_MAX_MINIMAL_BASE", o.limits.max_minimal_base,
          "cap on bases for the generic minimal-solution search");
  add_cap(app, "--max-monotone-base", "ASPA_MAX_MONOTONE_BASE", o.limits.max_monotone_base,
          "cap on bases for the monotonicity test");
  add_cap(app, "--max-model-atoms", "ASPA_MAX_MODEL_ATOMS", o.limits.max_model_atoms,
          "cap on exhaustive minimal-model checks");
  add_cap(app, "--max-candidates", "ASPA_MAX_CANDIDATES", o.limits.max_candidate_base,
          "cap on generate-and-test candidate atoms");
  add_cap(app, "--max-nodes", "ASPA_MAX_NODES", o.limits.max_search_nodes, "cap on solver search nodes");
}

int run(int argc, char** argv) {
  CLI::App app{"aspa: answer sets of logic programs with aggregates"};
  app.require_subcommand(1);
  Options o;
  std::optional<std::size_t> limit, atom;
  std::string wrt, model, semantics = "all", emit_name;
  std::vector<std::string> names;
  BenchParams bp;
  bool no_timings = false;

  auto* ground = app.add_subcommand("ground", "print the ground program");
  add_common(ground, o);
  auto* solutions = app.add_subcommand("solutions", "print aggregate solution sets");
  add_common(solutions, o);
  solutions->add_option("--atom", atom, "1-based index of a ground aggregate atom");
  auto* unfold = app.add_subcommand("unfold", "print the unfolded program");
  add_common(unfold, o);
  unfold->add_option("--wrt", wrt, "file holding an interpretation; prints the definite unfolding w.r.t. it");
  auto* solve = app.add_subcommand("solve", "enumerate answer sets");
  add_common(solve, o);
  solve->add_option("--limit", limit, "stop after N answer sets")->check(CLI::NonNegativeNumber);
  auto* solve_normal = app.add_subcommand("solve-normal", "enumerate answer sets of an aggregate-free program");
  add_common(solve_normal, o);
  solve_normal->add_option("--limit", limit, "stop after N answer sets")->check(CLI::NonNegativeNumber);
  auto* check = app.add_subcommand("check", "check an interpretation, or every answer set, against all semantics");
  add_common(check, o);
  check->add_option("--model", model, "interpretation, e.g. \"p(1),p(-1)\"");
  check->add_option("--semantics", semantics, "aspa|flp|stableset|all")
      ->check(CLI::IsMember({"aspa", "flp", "stableset", "all"}))
      ->capture_default_str();
  auto* cls = app.add_subcommand("classify", "report stratification and monotonicity");
  add_common(cls, o);
  auto* translate = app.add_subcommand("translate-weights", "rewrite weight constraints as aggregates");
  add_common(translate, o);
  auto* bench = app.add_subcommand("bench", "run the generated benchmark instances against their oracles");
  add_common(bench, o, false);
  bench->add_option("NAME", names, "benchmark names (default: all)")->check(CLI::IsMember(bench_names()));
  bench->add_option("--size", bp.n, "primary instance size")->check(CLI::PositiveNumber);
  bench->add_option("--size2", bp.m, "secondary size (tables, raise quota)")->check(CLI::PositiveNumber);
  bench->add_option("--size3", bp.k, "tertiary size (chairs)")->check(CLI::PositiveNumber);
  bench->add_option("--seed", bp.seed, "instance generator seed")->capture_default_str();
  bench->add_flag("--no-timings", no_timings, "omit timings (byte-stable output)");
  bench->add_option("--emit", emit_name, "print the generated program for one benchmark and exit")
      ->check(CLI::IsMember(bench_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  // CLI11 drops invalid environment values silently; reject them instead
  for (const char* env : {"ASPA_MAX_GROUND", "ASPA_MAX_BASE", "ASPA_MAX_FULL_BASE", "ASPA_MAX_MINIMAL_BASE",
                          "ASPA_MAX_MONOTONE_BASE", "ASPA_MAX_MODEL_ATOMS", "ASPA_MAX_CANDIDATES", "ASPA_MAX_NODES"}) {
    const char* v = std::getenv(env);
    if (v == nullptr) continue;
    std::uint64_t n = 0;
    auto [ptr, ec] = std::from_chars(v, v + std::strlen(v), n);
    if (ec != std::errc{} || *ptr != '\0' || n == 0) {
      std::cerr << "aspa: " << env << " must be a positive integer, got '" << v << "'\n";
      return kUsage;
    }
  }

  try {
    if (*ground) return cmd_ground(o);
    if (*solutions) return cmd_solutions(o, atom);
    if (*unfold) return cmd_unfold(o, wrt);
    if (*solve) return cmd_solve(o, limit);
    if (*solve_normal) return cmd_solve_normal(o, limit);
    if (*check) return cmd_check(o, model, semantics);
    if (*cls) return cmd_classify(o);
    if (*translate) return cmd_translate(o);
    if (*bench) return cmd_bench(o, names, bp, !no_timings, emit_name);
  } catch (const ParseError& e) {
    for (const auto& d : e.diagnostics()) std::cerr << o.file << ":" << d.to_string() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    std::cerr << "aspa: resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const InvariantError& e) {
    std::cerr << "aspa: invariant failure: " << e.what() << "\n";
    return kInvariant;
  } catch (const PreconditionError& e) {
    std::cerr << "aspa: " << e.what() << "\n";
    return kUsage;
  } catch (const EvaluationError& e) {
    std::cerr << "aspa: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "aspa: internal error: " << e.what() << "\n";
    return kInvariant;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
