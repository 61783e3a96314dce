#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "rcmp/evaluation.hpp"
#include "rcmp/modes.hpp"
#include "rcmp/oracle.hpp"
#include "support/fixtures.hpp"

using namespace rcmp;

TEST_CASE("decoding T1 with the fast modes yields the left-shifted chain") {
  Instance inst = fixtures::t1();
  Genotype g = fixtures::make_genotype(inst, {1, 1, 1});
  Schedule s = decode(inst, g);
  CHECK(s.start[1] == 0);
  CHECK(s.start[2] == 2);
  CHECK(s.start[3] == 5);
  CHECK(s.finish[3] == 6);
  CHECK(s.finish[inst.sink()] == 6);

  SUBCASE("any permutation decodes to the same schedule on a chain") {
    Genotype reversed = g;
    std::reverse(reversed.order.begin(), reversed.order.end());
    Schedule s2 = decode(inst, reversed);
    CHECK(s2.start == s.start);
  }

  SUBCASE("evaluation of the decoded schedule") {
    Evaluation eval = evaluate(inst, s, {});
    CHECK(eval.tms == 6);
    CHECK(eval.tpd == 0);
    CHECK(eval.f == 6);
  }
}

TEST_CASE("sequence priority breaks resource conflicts") {
  // two independent activities demanding the full capacity, durations 3 and 4
  auto ps = fixtures::single_project(
      {2}, {}, {fixtures::activity({fixtures::mode(3, {2})}),
                fixtures::activity({fixtures::mode(4, {2})})});
  Instance inst = flatten(ps);
  Genotype g = fixtures::make_genotype(inst, {1, 1});
  Schedule s = decode(inst, g);
  CHECK(s.start[1] == 0);
  CHECK(s.start[2] == 3);

  Genotype swapped = g;
  std::swap(swapped.order[1], swapped.order[2]);
  Schedule s2 = decode(inst, swapped);
  CHECK(s2.start[2] == 0);
  CHECK(s2.start[1] == 4);
}

TEST_CASE("decoding T1 with slower modes matches the schedule oracle") {
  Instance inst = fixtures::t1();
  Genotype g = fixtures::make_genotype(inst, {2, 2, 1});
  Schedule s = decode(inst, g);
  CHECK(s.start[1] == 0);
  CHECK(s.start[2] == 4);
  CHECK(s.start[3] == 9);
  Evaluation eval = evaluate(inst, s, {});
  CHECK(eval.tms == 10);
  CHECK(eval.tpd == 4);
  // a chain admits exactly one active schedule, so the exhaustive minimum
  // over all start assignments must coincide
  CHECK(enumerate_schedules(inst, g.modes, {}) == eval);
}

TEST_CASE("combined objective value") {
  CHECK(combined_value(1, 23, 100000) == 100023);
  CHECK(combined_value(0, 50, 100000) == 50);

  // delay of one comes from picking the slow mode of the only activity
  auto ps = fixtures::single_project(
      {}, {9}, {fixtures::activity({fixtures::mode(2, {}, {}, {1}),
                                    fixtures::mode(3, {}, {}, {1})})});
  Instance inst = flatten(ps);
  Genotype g = fixtures::make_genotype(inst, {2});
  Evaluation eval = evaluate(inst, decode(inst, g), {});
  CHECK(eval.tpd == 1);
  CHECK(eval.tms == 3);
  CHECK(eval.f == 100003);
}

TEST_CASE("empty project set evaluates to zero") {
  Instance inst = flatten(ProblemSet{});
  Genotype g;
  g.modes = {0, 0};
  g.order = {0, 1};
  Evaluation eval = evaluate(inst, decode(inst, g), {});
  CHECK(eval.tpd == 0);
  CHECK(eval.tms == 0);
  CHECK(eval.f == 0);
}

TEST_CASE("lexicographic comparison puts delay over makespan") {
  CHECK(lex_compare({1, 99, 0}, {2, 1, 0}) == std::strong_ordering::less);
  CHECK(lex_compare({1, 23, 0}, {1, 24, 0}) == std::strong_ordering::less);
  CHECK(lex_compare({1, 23, 0}, {1, 23, 0}) == std::strong_ordering::equal);

  SUBCASE("agrees with f whenever tms < alpha") {
    Rng rng(123);
    const std::int64_t alpha = 100000;
    for (int trial = 0; trial < 2000; ++trial) {
      Evaluation a{static_cast<std::int64_t>(rng.uniform(500)),
                   static_cast<std::int64_t>(rng.uniform(alpha)), 0};
      Evaluation b{static_cast<std::int64_t>(rng.uniform(500)),
                   static_cast<std::int64_t>(rng.uniform(alpha)), 0};
      a.f = combined_value(a.tpd, a.tms, alpha);
      b.f = combined_value(b.tpd, b.tms, alpha);
      CHECK((lex_compare(a, b) < 0) == (a.f < b.f));
      CHECK((lex_compare(a, b) == 0) == (a.f == b.f));
    }
  }
}

TEST_CASE("decode is pure") {
  Instance inst = fixtures::t1();
  Genotype g = fixtures::make_genotype(inst, {2, 1, 2});
  Schedule a = decode(inst, g);
  DecodeScratch scratch;
  Schedule b = decode(inst, g, scratch);
  CHECK(a.start == b.start);
  CHECK(a.finish == b.finish);
  CHECK(a.renewable_usage == b.renewable_usage);
}

TEST_CASE("a reused scratch never leaks state between decodes") {
  // interleave genotypes and instances through one scratch and compare every
  // result against a fresh-scratch decode
  DecodeScratch shared;
  Rng rng(71);
  std::vector<Instance> instances;
  for (int i = 0; i < 4; ++i) instances.push_back(flatten(fixtures::random_tiny_problem(rng)));
  instances.push_back(fixtures::t1());
  Rng run(72);
  for (int rep = 0; rep < 200; ++rep) {
    const Instance& inst = instances[run.uniform_int(static_cast<int>(instances.size()))];
    Genotype g;
    g.modes.assign(inst.n, 0);
    for (int a = 1; a + 1 < inst.n; ++a) g.modes[a] = run.uniform_int(inst.mode_count(a));
    g.order = fixtures::shuffled_order(inst, run);
    Schedule with_shared = decode(inst, g, shared);
    Schedule fresh = decode(inst, g);
    CHECK(with_shared.start == fresh.start);
    CHECK(with_shared.finish == fresh.finish);
  }
}

TEST_CASE("decoded schedules satisfy every invariant") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    Instance inst = flatten(fixtures::random_tiny_problem(rng));
    Rng run_rng(1000 + trial);
    Genotype g;
    g.modes = repair_modes(inst, random_modes(inst, run_rng), run_rng);
    g.order = fixtures::shuffled_order(inst, run_rng);
    Schedule s = decode(inst, g);
    auto violations = check_schedule(inst, g.modes, s.start);
    CHECK(violations.empty());
    if (!violations.empty()) {
      for (const auto& v : violations) MESSAGE(v.detail);
      break;
    }
  }
}

TEST_CASE("decoded schedules are active (no single left shift possible)") {
  Rng rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    Instance inst = flatten(fixtures::random_tiny_problem(rng));
    Rng run_rng(2000 + trial);
    for (int rep = 0; rep < 10; ++rep) {
      Genotype g;
      g.modes = repair_modes(inst, random_modes(inst, run_rng), run_rng);
      g.order = fixtures::shuffled_order(inst, run_rng);
      Schedule s = decode(inst, g);
      CHECK(left_shift_count(inst, g.modes, s.start) == 0);
    }
  }
}

TEST_CASE("check_schedule reports tampered schedules") {
  Instance inst = fixtures::t1();
  Genotype g = fixtures::make_genotype(inst, {1, 1, 1});
  Schedule s = decode(inst, g);

  SUBCASE("precedence") {
    std::vector<int> start = s.start;
    start[2] = 1;  // predecessor 1 finishes at 2
    auto violations = check_schedule(inst, g.modes, start);
    REQUIRE(!violations.empty());
    CHECK(violations[0].kind == Violation::Kind::kPrecedence);
  }
  SUBCASE("release") {
    auto ps = fixtures::single_project({}, {},
                                       {fixtures::activity({fixtures::mode(1)})}, 5);
    Instance late = flatten(ps);
    std::vector<int> start = {0, 3, 4};
    auto violations = check_schedule(late, {0, 0, 0}, start);
    REQUIRE(!violations.empty());
    CHECK(violations[0].kind == Violation::Kind::kRelease);
  }
  SUBCASE("renewable capacity") {
    std::vector<int> start = s.start;
    start[2] = 0;  // both activity 1 and 2 demand 2 of the cap-2 resource
    auto violations = check_schedule(inst, g.modes, start);
    bool found_capacity = false;
    for (const auto& v : violations)
      if (v.kind == Violation::Kind::kRenewableCapacity) found_capacity = true;
    CHECK(found_capacity);
  }
  SUBCASE("non-renewable capacity") {
    Genotype heavy = fixtures::make_genotype(inst, {1, 1, 2});  // usage 5 > 4
    Schedule hs = decode(inst, heavy);
    auto violations = check_schedule(inst, heavy.modes, hs.start);
    REQUIRE(!violations.empty());
    CHECK(violations[0].kind == Violation::Kind::kNonrenewableCapacity);
  }
}
