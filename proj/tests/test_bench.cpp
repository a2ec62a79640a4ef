// Benchmark generators against their direct oracles.
#include <catch_amalgamated.hpp>

#include "aspa/bench.hpp"

using namespace aspa;

TEST_CASE("every benchmark matches its oracle at default size") {
  for (const auto& name : bench_names()) {
    INFO(name);
    auto r = run_bench(name);
    CHECK(r.oracle_checked);
    CHECK(r.oracle_ok);
    CHECK(r.ground_seconds >= 0);
    CHECK(r.transform_seconds >= 0);
    CHECK(r.solve_seconds >= 0);
  }
}

TEST_CASE("company control derives control along a 60% chain") {
  auto inst = make_bench("company-control", {4, 0, 0, 1});
  auto r = run_bench(inst);
  REQUIRE(r.oracle_ok);
  REQUIRE(r.answer_sets == 1);
  CHECK(r.first.count(parse_ground_atom("control(c1,c2)")));
  CHECK(r.first.count(parse_ground_atom("control(c1,c3)")));
}

TEST_CASE("party invitations with thresholds 0/1/1") {
  auto r = run_bench("party-invitations", {3, 0, 0, 1});
  REQUIRE(r.answer_sets == 1);
  for (const char* p : {"coming(p1)", "coming(p2)", "coming(p3)"}) CHECK(r.first.count(parse_ground_atom(p)));
  CHECK(r.oracle_ok);
}

TEST_CASE("seating 4/2/2 with one like and one dislike pair") {
  auto inst = make_bench("seating", {4, 2, 2, 1});
  REQUIRE(inst.expected);
  CHECK(inst.expected->size() == 2);
  auto r = run_bench(inst);
  CHECK(r.answer_sets == 2);
  CHECK(r.oracle_ok);
}

TEST_CASE("benchmark sizes and seeds vary the instances") {
  for (unsigned seed : {2u, 3u}) {
    for (const char* name : {"company-control", "shortest-path", "party-invitations", "employee-raise"}) {
      INFO(name << " seed " << seed);
      auto r = run_bench(name, {5, 2, 0, seed});
      CHECK(r.oracle_ok);
    }
  }
  CHECK(run_bench("nm1", {6}).answer_sets == 4);
  CHECK(run_bench("nm2", {6}).answer_sets == 1);
  CHECK(run_bench("seating", {3, 2, 2}).oracle_ok);
  CHECK_THROWS_AS(make_bench("nope"), PreconditionError);
}

TEST_CASE("generated programs are deterministic") {
  for (const auto& name : bench_names()) CHECK(make_bench(name).program == make_bench(name).program);
}
