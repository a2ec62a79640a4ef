// Instance generators for the seven benchmark families, with direct (non-ASP) oracles
// that compute the expected answer sets from the instance data.
#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "aspa/parser.hpp"
#include "aspa/semantics.hpp"

namespace aspa {

struct BenchParams {
  int n = 0;  // primary size (companies, nodes, people, persons, employees, range)
  int m = 0;  // secondary size (tables, max raised)
  int k = 0;  // tertiary size (chairs)
  unsigned seed = 1;
};

struct BenchInstance {
  std::string name;
  std::string params;
  std::string program;
  std::optional<std::vector<Interpretation>> expected;  // sorted; nullopt when beyond oracle caps
};

struct BenchResult {
  std::string name;
  std::string params;
  std::size_t answer_sets = 0;
  Interpretation first;
  double ground_seconds = 0, transform_seconds = 0, solve_seconds = 0;
  bool oracle_checked = false;
  bool oracle_ok = false;
};

namespace bench {

inline Constant sym(const std::string& s) { return Constant::symbol(s); }
inline Constant num(long long v) { return Constant::integer(v); }

// Collects facts both as program text and as atoms.
struct Facts {
  std::string text;
  Interpretation atoms;
  void add(const std::string& pred, std::vector<Constant> args) {
    Atom a = make_atom(pred, std::move(args));
    text += a.to_string() + ".\n";
    atoms.insert(std::move(a));
  }
};

inline const char* kCompanyControl =
    "control_shares(X,Y,N) :- owns(X,Y,N).\n"
    "control_shares(X,Y,N) :- control(X,Z), owns(Z,Y,N).\n"
    "control(X,Y) :- SUM{{ M : control_shares(X,Y,M) }} > 50.\n";

// n companies; a 60% chain c1 -> c2 -> ... plus seeded minority stakes.
inline BenchInstance company_control(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::map<std::pair<int, int>, int> owns;
  for (int i = 1; i < n; ++i)
    if (i % 3 != 0) owns[{i, i + 1}] = 60;
  const int stakes[] = {10, 20, 25, 30, 40};
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j && !owns.count({i, j}) && rng() % 4 == 0) owns[{i, j}] = stakes[rng() % 5];
  Facts f;
  auto c = [](int i) { return sym("c" + std::to_string(i)); };
  for (const auto& [xy, v] : owns) f.add("owns", {c(xy.first), c(xy.second), num(v)});
  // oracle: least fixpoint of the two definitions, amounts summed as distinct values
  std::set<std::pair<int, int>> control;
  std::map<std::pair<int, int>, std::set<int>> cs;
  for (bool changed = true; changed;) {
    changed = false;
    cs.clear();
    for (const auto& [xy, v] : owns) cs[xy].insert(v);
    for (const auto& [x, z] : control)
      for (const auto& [zy, v] : owns)
        if (zy.first == z) cs[{x, zy.second}].insert(v);
    for (const auto& [xy, vals] : cs) {
      int s = 0;
      for (int v : vals) s += v;
      if (s > 50 && control.insert(xy).second) changed = true;
    }
  }
  Interpretation M = f.atoms;
  for (const auto& [xy, vals] : cs)
    for (int v : vals) M.insert(make_atom("control_shares", {c(xy.first), c(xy.second), num(v)}));
  for (const auto& [x, y] : control) M.insert(make_atom("control", {c(x), c(y)}));
  return {"company-control", "companies=" + std::to_string(n), f.text + kCompanyControl,
          std::vector<Interpretation>{M}};
}

inline const char* kShortestPath =
    "path(X,Y,C) :- arc(X,Y,C).\n"
    "path(X,Y,C) :- spath(X,Z,C1), arc(Z,Y,C2), C = C1 + C2.\n"
    "spath(X,Y,C) :- MIN{{ D : path(X,Y,D) }} = C.\n";

// n nodes on a ring with seeded chords; arc weights 1..3.
inline BenchInstance shortest_path(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::map<std::pair<int, int>, int> arc;
  for (int i = 1; i <= n; ++i) arc[{i, i % n + 1}] = 1 + static_cast<int>(rng() % 3);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j && !arc.count({i, j}) && rng() % 5 == 0) arc[{i, j}] = 1 + static_cast<int>(rng() % 3);
  const int K = 3 * n + 3;  // covers every shortest walk plus one arc
  Facts f;
  auto v = [](int i) { return sym("n" + std::to_string(i)); };
  for (const auto& [xy, w] : arc) f.add("arc", {v(xy.first), v(xy.second), num(w)});
  // oracle: shortest walks with at least one arc (Floyd-Warshall)
  const int INF = 1 << 29;
  std::vector<std::vector<int>> d(n + 1, std::vector<int>(n + 1, INF));
  for (const auto& [xy, w] : arc) d[xy.first][xy.second] = std::min(d[xy.first][xy.second], w);
  for (int z = 1; z <= n; ++z)
    for (int x = 1; x <= n; ++x)
      for (int y = 1; y <= n; ++y)
        if (d[x][z] < INF && d[z][y] < INF) d[x][y] = std::min(d[x][y], d[x][z] + d[z][y]);
  Interpretation M = f.atoms;
  for (const auto& [xy, w] : arc) M.insert(make_atom("path", {v(xy.first), v(xy.second), num(w)}));
  for (int x = 1; x <= n; ++x)
    for (int z = 1; z <= n; ++z) {
      if (d[x][z] > K) continue;
      M.insert(make_atom("spath", {v(x), v(z), num(d[x][z])}));
      for (const auto& [zy, w] : arc)
        if (zy.first == z && d[x][z] + w <= K) M.insert(make_atom("path", {v(x), v(zy.second), num(d[x][z] + w)}));
    }
  std::string text = "#const_domain 0.." + std::to_string(K) + ".\n" + f.text + kShortestPath;
  return {"shortest-path", "nodes=" + std::to_string(n), text, std::vector<Interpretation>{M}};
}

inline const char* kParty =
    "friend(X,Y) :- friend(Y,X).\n"
    "coming(X) :- requires(X,0).\n"
    "coming(X) :- requires(X,K), COUNT{ Y : come_friend(X,Y) } >= K.\n"
    "come_friend(X,Y) :- friend(X,Y), coming(Y).\n";

// n people in a friendship chain with seeded extra friendships; thresholds 0 for the first, 1..2 otherwise.
inline BenchInstance party_invitations(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<int> req(n + 1, 0);
  for (int i = 2; i <= n; ++i) req[i] = n <= 3 ? 1 : 1 + static_cast<int>(rng() % 2);
  std::set<std::pair<int, int>> fr;
  for (int i = 1; i < n; ++i) fr.insert({i, i + 1});
  for (int i = 1; i <= n; ++i)
    for (int j = i + 2; j <= n; ++j)
      if (n > 3 && rng() % 4 == 0) fr.insert({i, j});
  Facts f;
  auto p = [](int i) { return sym("p" + std::to_string(i)); };
  for (int i = 1; i <= n; ++i) f.add("requires", {p(i), num(req[i])});
  for (const auto& [a, b] : fr) f.add("friend", {p(a), p(b)});
  // oracle: monotone closure
  std::set<int> coming;
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 1; i <= n; ++i) {
      if (coming.count(i)) continue;
      int cnt = 0;
      for (int j = 1; j <= n; ++j)
        if ((fr.count({i, j}) || fr.count({j, i})) && coming.count(j)) ++cnt;
      if (cnt >= req[i]) {
        coming.insert(i);
        changed = true;
      }
    }
  }
  Interpretation M = f.atoms;
  for (const auto& [a, b] : fr) {
    M.insert(make_atom("friend", {p(a), p(b)}));
    M.insert(make_atom("friend", {p(b), p(a)}));
  }
  for (int i : coming) M.insert(make_atom("coming", {p(i)}));
  for (const auto& [a, b] : fr) {
    if (coming.count(b)) M.insert(make_atom("come_friend", {p(a), p(b)}));
    if (coming.count(a)) M.insert(make_atom("come_friend", {p(b), p(a)}));
  }
  return {"party-invitations", "people=" + std::to_string(n), f.text + kParty, std::vector<Interpretation>{M}};
}

inline const char* kSeating =
    "at(P,T) :- person(P), table(T), not not_at(P,T).\n"
    "not_at(P,T) :- person(P), table(T), not at(P,T).\n"
    ":- table(T), nchairs(C), COUNT{ P : at(P,T) } > C.\n"
    ":- person(P), COUNT{ T : at(P,T) } != 1.\n"
    ":- like(P1,P2), at(P1,T), not at(P2,T).\n"
    ":- dislike(P1,P2), at(P1,T), at(P2,T).\n";

// persons a1..an, tables t1..tm with k chairs each; a1 likes a2, a1 dislikes a3.
inline BenchInstance seating(int n, int m, int k) {
  Facts f;
  auto pa = [](int i) { return sym("a" + std::to_string(i)); };
  auto ta = [](int i) { return sym("t" + std::to_string(i)); };
  for (int i = 1; i <= n; ++i) f.add("person", {pa(i)});
  for (int j = 1; j <= m; ++j) f.add("table", {ta(j)});
  f.add("nchairs", {num(k)});
  std::vector<std::pair<int, int>> like, dislike;
  if (n >= 2) like.push_back({1, 2});
  if (n >= 3) dislike.push_back({1, 3});
  for (auto [a, b] : like) f.add("like", {pa(a), pa(b)});
  for (auto [a, b] : dislike) f.add("dislike", {pa(a), pa(b)});
  std::optional<std::vector<Interpretation>> expected;
  if (n * m <= 20) {
    // oracle: every at/2 assignment, constraints checked arithmetically
    std::vector<Interpretation> all;
    const int cells = n * m;
    for (long s = 0; s < (1L << cells); ++s) {
      auto at = [&](int p, int t) { return (s >> ((p - 1) * m + (t - 1))) & 1; };
      bool ok = true;
      for (int t = 1; t <= m && ok; ++t) {
        int c = 0;
        for (int p = 1; p <= n; ++p) c += at(p, t);
        ok = c <= k;
      }
      for (int p = 1; p <= n && ok; ++p) {
        int c = 0;
        for (int t = 1; t <= m; ++t) c += at(p, t);
        ok = c == 1;
      }
      for (auto [a, b] : like)
        for (int t = 1; t <= m && ok; ++t) ok = !(at(a, t) && !at(b, t));
      for (auto [a, b] : dislike)
        for (int t = 1; t <= m && ok; ++t) ok = !(at(a, t) && at(b, t));
      if (!ok) continue;
      Interpretation M = f.atoms;
      for (int p = 1; p <= n; ++p)
        for (int t = 1; t <= m; ++t) M.insert(make_atom(at(p, t) ? "at" : "not_at", {pa(p), ta(t)}));
      all.push_back(std::move(M));
    }
    sort_interpretations(all);
    expected = std::move(all);
  }
  return {"seating", "persons=" + std::to_string(n) + " tables=" + std::to_string(m) + " chairs=" + std::to_string(k),
          f.text + kSeating, expected};
}

inline const char* kRaise =
    "raised(X) :- empName(X), not notraised(X).\n"
    "notraised(X) :- empName(X), not raised(X).\n"
    "notraised(X) :- empName(X), nHours(K), SUM{{ H : emp(X,D,H) }} < K.\n"
    ":- maxRaised(N), COUNT{ X : raised(X) } > N.\n";

// n employees over two departments with seeded hours; at most m raised.
inline BenchInstance employee_raise(int n, int m, unsigned seed) {
  std::mt19937 rng(seed);
  const int K = 20;
  Facts f;
  auto e = [](int i) { return sym("e" + std::to_string(i)); };
  std::vector<int> total(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    f.add("empName", {e(i)});
    for (int d = 1; d <= 2; ++d)
      if (d == 1 || rng() % 2) {
        int h = 4 + static_cast<int>(rng() % 12);
        f.add("emp", {e(i), sym("d" + std::to_string(d)), num(h)});
        total[i] += h;
      }
  }
  f.add("nHours", {num(K)});
  f.add("maxRaised", {num(m)});
  std::vector<int> eligible;
  for (int i = 1; i <= n; ++i)
    if (total[i] >= K) eligible.push_back(i);
  std::vector<Interpretation> all;
  for (long s = 0; s < (1L << eligible.size()); ++s) {
    if (__builtin_popcountl(s) > m) continue;
    Interpretation M = f.atoms;
    std::set<int> raised;
    for (std::size_t j = 0; j < eligible.size(); ++j)
      if (s >> j & 1) raised.insert(eligible[j]);
    for (int i = 1; i <= n; ++i) M.insert(make_atom(raised.count(i) ? "raised" : "notraised", {e(i)}));
    all.push_back(std::move(M));
  }
  sort_interpretations(all);
  return {"employee-raise", "employees=" + std::to_string(n) + " max_raised=" + std::to_string(m), f.text + kRaise,
          all};
}

inline const char* kNM1 =
    "q(K) :- r(X), w(K), MAX{ Y : p(Y) } = K.\n"
    "p(X) :- q(K), r(X), w(K).\n"
    "a(X) :- not b(X), p(X), r(X).\n"
    "b(X) :- not a(X), p(X), r(X).\n";

inline const char* kNM2 =
    "q(K) :- r(X), w(K), MIN{ Y : p(Y) } > K.\n"
    "p(X) :- q(K), r(X), w(K).\n";

// r(1..n); `weights` for w/1; `seeds` as p/1 facts.
inline BenchInstance nonmonotone(bool first, int n, const std::set<int>& weights, const std::set<int>& seeds) {
  Facts f;
  for (int i = 1; i <= n; ++i) f.add("r", {num(i)});
  for (int k : weights) f.add("w", {num(k)});
  for (int s : seeds) f.add("p", {num(s)});
  // oracle: either no q holds and p is the seed set, or q holds and p covers r;
  // a q atom is founded only through a seeded p atom satisfying the aggregate.
  std::vector<std::set<int>> p_sets;
  std::vector<std::set<int>> q_sets;
  auto agg = [&](const std::set<int>& p, int k) {
    if (p.empty()) return false;
    return first ? *p.rbegin() == k : *p.begin() > k;
  };
  {
    bool forced = false;
    for (int k : weights) forced |= n >= 1 && agg(seeds, k);
    if (!forced) {
      p_sets.push_back(seeds);
      q_sets.push_back({});
    }
  }
  if (n >= 1) {
    std::set<int> p = seeds;
    for (int i = 1; i <= n; ++i) p.insert(i);
    std::set<int> q;
    for (int k : weights)
      if (agg(p, k)) q.insert(k);
    bool founded = false;
    for (int k : q)
      for (int s : seeds) {
        // the solution of the aggregate that uses only the seed s
        std::set<int> single{s};
        if (first ? (s == k) : (s > k)) founded = true;
      }
    if (!q.empty() && founded) {
      p_sets.push_back(p);
      q_sets.push_back(q);
    }
  }
  std::vector<Interpretation> all;
  for (std::size_t c = 0; c < p_sets.size(); ++c) {
    Interpretation base = f.atoms;
    for (int x : p_sets[c]) base.insert(make_atom("p", {num(x)}));
    for (int k : q_sets[c]) base.insert(make_atom("q", {num(k)}));
    std::vector<int> choice;
    if (first)
      for (int x : p_sets[c])
        if (x >= 1 && x <= n) choice.push_back(x);
    for (long s = 0; s < (1L << choice.size()); ++s) {
      Interpretation M = base;
      for (std::size_t j = 0; j < choice.size(); ++j) M.insert(make_atom((s >> j & 1) ? "b" : "a", {num(choice[j])}));
      all.push_back(std::move(M));
    }
  }
  sort_interpretations(all);
  std::string wd, sd;
  for (int k : weights) wd += (wd.empty() ? "" : ",") + std::to_string(k);
  for (int s : seeds) sd += (sd.empty() ? "" : ",") + std::to_string(s);
  return {first ? "nm1" : "nm2", "n=" + std::to_string(n) + " w={" + wd + "} seeds={" + sd + "}",
          f.text + (first ? kNM1 : kNM2), all};
}

}  // namespace bench

inline std::vector<std::string> bench_names() {
  return {"company-control", "shortest-path", "party-invitations", "seating", "employee-raise", "nm1", "nm2"};
}

// Default sizes are the desk-scale sizes; zero fields fall back to them.
inline BenchInstance make_bench(const std::string& name, BenchParams p = {}) {
  auto or_default = [](int v, int d) { return v > 0 ? v : d; };
  if (name == "company-control") return bench::company_control(or_default(p.n, 6), p.seed);
  if (name == "shortest-path") return bench::shortest_path(or_default(p.n, 6), p.seed);
  if (name == "party-invitations") return bench::party_invitations(or_default(p.n, 8), p.seed);
  if (name == "seating") return bench::seating(or_default(p.n, 4), or_default(p.m, 2), or_default(p.k, 2));
  if (name == "employee-raise") return bench::employee_raise(or_default(p.n, 6), or_default(p.m, 3), p.seed);
  if (name == "nm1") {
    int n = or_default(p.n, 10);
    return bench::nonmonotone(true, n, {n}, {1, 2});
  }
  if (name == "nm2") {
    int n = or_default(p.n, 10);
    return bench::nonmonotone(false, n, {0}, {n});
  }
  throw PreconditionError("unknown benchmark '" + name + "'");
}

inline BenchResult run_bench(const BenchInstance& inst, const SemanticsConfig& cfg = {}) {
  using clock = std::chrono::steady_clock;
  auto secs = [](clock::time_point a, clock::time_point b) { return std::chrono::duration<double>(b - a).count(); };
  BenchResult r;
  r.name = inst.name;
  r.params = inst.params;
  auto t0 = clock::now();
  Program P = parse_program(inst.program);
  GroundProgram G = ground_program(P, cfg.limits);
  auto t1 = clock::now();
  NormalProgram N = unfold_program(G, cfg.solutions, cfg.base, cfg.limits);
  auto t2 = clock::now();
  auto answers = enumerate_answer_sets(N, std::nullopt, cfg.limits);
  auto t3 = clock::now();
  r.ground_seconds = secs(t0, t1);
  r.transform_seconds = secs(t1, t2);
  r.solve_seconds = secs(t2, t3);
  r.answer_sets = answers.size();
  if (!answers.empty()) r.first = answers.front();
  if (inst.expected) {
    r.oracle_checked = true;
    r.oracle_ok = answers == *inst.expected;
  }
  return r;
}

inline BenchResult run_bench(const std::string& name, const BenchParams& p = {}, const SemanticsConfig& cfg = {}) {
  return run_bench(make_bench(name, p), cfg);
}

}  // namespace aspa
