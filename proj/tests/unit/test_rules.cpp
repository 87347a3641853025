#include <doctest.h>

#include <random>

#include "enumerate.hpp"
#include "oracles.hpp"
#include "zf/errors.hpp"
#include "zf/reductions.hpp"
#include "zf/rules.hpp"

using namespace zf;

namespace {

const RuleSet kZ{RuleKind::Z};
const RuleSet kT{RuleKind::T};
const RuleSet kD{RuleKind::D};

// A uniformly random maximal application order.
ClosureResult random_closure(const Graph& g, VertexSet blue, RuleSet rs, std::mt19937_64& rng) {
  Trace trace;
  while (true) {
    auto apps = applicable_rules(g, blue, rs);
    if (apps.empty()) break;
    auto r = apps[std::uniform_int_distribution<std::size_t>(0, apps.size() - 1)(rng)];
    VertexSet next = apply_rule(g, blue, r);
    REQUIRE(next.size() == blue.size() + 1);
    blue = next;
    trace.push_back(r);
  }
  return {blue, trace};
}

}  // namespace

TEST_CASE("RuleSet parsing and printing") {
  CHECK(RuleSet::parse("DZ").to_string() == "zd");
  CHECK(RuleSet::parse("tzd") == (RuleSet{RuleKind::Z, RuleKind::T, RuleKind::D}));
  CHECK(RuleSet::all().size() == 7);
  CHECK_THROWS(RuleSet::parse(""));
  CHECK_THROWS(RuleSet::parse("zx"));
}

TEST_CASE("applicable_rules") {
  Graph p3 = gen::path(3);
  CHECK(applicable_rules(p3, VertexSet(3, {0}), kZ) == Trace{{RuleKind::Z, 0, 1}});
  CHECK(applicable_rules(gen::complete(3), VertexSet(3, {0}), kZ).empty());
  CHECK(applicable_rules(gen::path(2), VertexSet(2), kT) == Trace{{RuleKind::T, 0, 1}, {RuleKind::T, 1, 0}});
  // only kinds in the set appear
  for (const auto& r : applicable_rules(p3, VertexSet(3, {0, 2}), RuleSet{RuleKind::Z, RuleKind::D}))
    CHECK(r.kind != RuleKind::T);
}

TEST_CASE("apply_rule") {
  CHECK(apply_rule(gen::path(3), VertexSet(3, {0}), {RuleKind::Z, 0, 1}) == VertexSet(3, {0, 1}));
  CHECK(apply_rule(gen::path(2), VertexSet(2), {RuleKind::T, 0, 1}) == VertexSet(2, {1}));
  Graph star = gen::star(3);
  CHECK(apply_rule(star, VertexSet(4, {1, 2, 3}), {RuleKind::D, 0, 0}) == VertexSet::full(4));
  CHECK_THROWS_AS(apply_rule(gen::path(3), VertexSet(3, {0}), {RuleKind::Z, 0, 2}), InvalidInput);
  CHECK_THROWS_AS(apply_rule(gen::complete(3), VertexSet(3, {0}), {RuleKind::Z, 0, 1}), InvalidInput);
}

TEST_CASE("greedy_closure") {
  auto r = greedy_closure(gen::path(5), VertexSet(5, {0}), kZ);
  CHECK(r.blue.size() == 5);
  CHECK(r.trace.size() == 4);
  CHECK(greedy_closure(gen::complete(3), VertexSet(3, {0}), kZ).blue == VertexSet(3, {0}));
  Graph corona = corona_with_leaves(gen::cycle(3));
  CHECK(greedy_closure(corona, VertexSet(6), RuleSet{RuleKind::Z, RuleKind::T}).blue.size() == 6);
}

TEST_CASE("every maximal {Z,T} order colours the C3 corona") {
  Graph corona = corona_with_leaves(gen::cycle(3));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) CHECK(random_closure(corona, VertexSet(6), RuleSet{RuleKind::Z, RuleKind::T}, rng).blue.size() == 6);
}

TEST_CASE("T-free closures are confluent") {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Graph g = gen::random_gnp(12, 0.25, seed);
    VertexSet start(12);
    for (Vertex v = 0; v < 12; ++v)
      if (rng() % 4 == 0) start.insert(v);
    for (RuleSet rs : {kZ, kD, RuleSet{RuleKind::Z, RuleKind::D}}) {
      VertexSet expect = greedy_closure(g, start, rs).blue;
      for (int i = 0; i < 100; ++i) {
        auto r = random_closure(g, start, rs, rng);
        CHECK(r.blue == expect);
        CHECK(replay(g, start, r.trace) == expect);
      }
    }
  }
}

TEST_CASE("is_forcing_set") {
  CHECK(is_forcing_set(gen::path(7), VertexSet(7, {6}), kZ).forcing);
  CHECK_FALSE(is_forcing_set(gen::path(3), VertexSet(3), kT).forcing);
  Graph k4 = gen::complete(4);
  CHECK_FALSE(is_forcing_set(k4, VertexSet(4, {0, 1}), kZ).forcing);
  CHECK(is_forcing_set(k4, VertexSet(4, {0, 1, 2}), kZ).forcing);
  auto v = is_forcing_set(gen::cycle(5), VertexSet(5, {0, 1}), kZ);
  REQUIRE(v.forcing);
  CHECK(replay(gen::cycle(5), VertexSet(5, {0, 1}), v.trace).size() == 5);
}

TEST_CASE("forcing verdict witnesses replay and agree with exhaustive search") {
  for (int n = 1; n <= 5; ++n)
    for (const auto& sg : testing::all_graphs(n)) {
      Graph g = sg.to_graph();
      for (RuleSet rs : RuleSet::all())
        for (unsigned s = 0; s < (1U << n); ++s) {
          VertexSet set(static_cast<std::size_t>(n));
          for (int v = 0; v < n; ++v)
            if ((s >> v) & 1U) set.insert(v);
          auto quick = is_forcing_set(g, set, rs);
          auto full = is_forcing_set(g, set, rs, {.exhaustive = true});
          CHECK(quick.forcing == full.forcing);
          if (quick.forcing) CHECK(replay(g, set, quick.trace).size() == static_cast<std::size_t>(n));
          if (greedy_closure(g, set, rs).blue.size() == static_cast<std::size_t>(n)) CHECK(quick.forcing);
        }
    }
}

TEST_CASE("min_forcing_bruteforce") {
  CHECK(min_forcing_bruteforce(gen::path(5), kZ).k == 1);
  CHECK(min_forcing_bruteforce(gen::cycle(4), kZ).k == 2);
  CHECK(min_forcing_bruteforce(gen::complete(4), kZ).k == 3);
  CHECK(min_forcing_bruteforce(gen::petersen(), kD).k == 6);
  CHECK_THROWS_AS(min_forcing_bruteforce(gen::path(21), kZ), ResourceExhausted);
}

TEST_CASE("min_forcing_bruteforce matches the reference oracle") {
  for (int n = 1; n <= 6; ++n)
    for (const auto& sg : testing::connected_graphs(n)) {
      Graph g = sg.to_graph();
      for (RuleSet rs : RuleSet::all()) {
        auto r = min_forcing_bruteforce(g, rs);
        CHECK(r.k == testing::min_forcing_reference(g, rs));
        CHECK(r.set.size() == static_cast<std::size_t>(r.k));
        CHECK(replay(g, r.set, r.trace).size() == static_cast<std::size_t>(n));
      }
    }
}

TEST_CASE("{D} minimum equals vertex cover on larger random graphs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = gen::random_gnp(9 + static_cast<int>(seed % 2), 0.35, seed);
    CHECK(min_forcing_bruteforce(g, kD).k == testing::min_vertex_cover(g));
  }
}

TEST_CASE("{T} forcing needs every vertex when there are no isolated vertices") {
  for (int n = 2; n <= 6; ++n)
    for (const auto& sg : testing::all_graphs(n)) {
      Graph g = sg.to_graph();
      if (g.has_isolated_vertices()) continue;
      for (unsigned s = 0; s < (1U << n); ++s) {
        VertexSet set(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v)
          if ((s >> v) & 1U) set.insert(v);
        CHECK(is_forcing_set(g, set, kT).forcing == (s == (1U << n) - 1));
      }
    }
}

TEST_CASE("trace text round trip") {
  Trace t{{RuleKind::Z, 0, 1}, {RuleKind::T, 3, 2}, {RuleKind::D, 4, 4}};
  CHECK(parse_trace(write_trace(t)) == t);
  CHECK(write_trace(t) == "Z 0 1\nT 3 2\nD 4 4\n");
  CHECK_THROWS_AS(parse_trace("Q 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_trace("Z 0\n"), ParseError);
}

TEST_CASE("replay names the first illegal step") {
  Graph p3 = gen::path(3);
  CHECK_THROWS_AS(replay(p3, VertexSet(3, {0}), Trace{{RuleKind::Z, 0, 1}, {RuleKind::Z, 0, 2}}), InvalidInput);
}
