#include <doctest.h>

#include "enumerate.hpp"
#include "oracles.hpp"
#include "zf/errors.hpp"
#include "zf/reductions.hpp"

using namespace zf;

namespace {

MccInstance two_classes(bool edge) {
  MccInstance inst{Graph(2, edge ? std::vector<std::pair<Vertex, Vertex>>{{0, 1}} : std::vector<std::pair<Vertex, Vertex>>{}),
                   {{0}, {1}}};
  return inst;
}

// k = 3, q = 2 with a triangle through the first vertex of each class.
MccInstance three_classes() {
  Graph g(6, {{0, 2}, {0, 4}, {2, 4}, {1, 3}, {3, 5}});
  return MccInstance{g, {{0, 1}, {2, 3}, {4, 5}}};
}

bool symmetric(const Graph& g) {
  for (Vertex v = 0; v < g.n(); ++v)
    for (Vertex w : g.neighbors(v))
      if (w == v || !g.adjacent(w, v)) return false;
  return true;
}

int one_sided_reference(const OsgtdInstance& inst) {
  return max_sequence_bruteforce(inst.graph, SequenceVariant::TGD, inst.sides.a, 32).length;
}

}  // namespace

TEST_CASE("clique reduction on a single cross edge") {
  auto inst = two_classes(true);
  auto red = mcc_to_osgtd(inst);
  CHECK(red.gadgets.alpha == 5);
  CHECK(red.gadgets.beta == 5);
  CHECK(red.instance.target == 16);
  CHECK(red.instance.graph.n() == 32);
  CHECK(mcc_reduction_size(inst) == 32);
  CHECK(audit_mcc_reduction(inst, red).empty());
  CHECK(red.instance.sides.is_valid_for(red.instance.graph));
  CHECK(one_sided_at_least(red.instance, 16));
  CHECK(max_one_sided(red.instance).length >= 16);
}

TEST_CASE("clique reduction without a cross edge is a NO instance") {
  auto inst = two_classes(false);
  auto red = mcc_to_osgtd(inst);
  CHECK(red.instance.graph.n() == 27);
  CHECK(audit_mcc_reduction(inst, red).empty());
  const int best = max_one_sided(red.instance).length;
  CHECK(best < 16);
  CHECK(best == one_sided_reference(red.instance));
  CHECK_FALSE(one_sided_at_least(red.instance, 16));
}

TEST_CASE("clique reduction gadget structure") {
  auto inst = three_classes();
  auto red = mcc_to_osgtd(inst);
  const auto& gd = red.gadgets;
  const Graph& h = red.instance.graph;
  CHECK(audit_mcc_reduction(inst, red).empty());
  CHECK(symmetric(h));
  CHECK(static_cast<std::size_t>(h.n()) == mcc_reduction_size(inst));
  CHECK(gd.alpha == 7);
  CHECK(red.instance.target == 7 * 3 + 7 * 3 + 1);

  // beta gadgets per class pair
  int per_pair[3][3] = {};
  for (const auto& ver : gd.verification) ++per_pair[ver.i][ver.j];
  CHECK(per_pair[0][1] == 7);
  CHECK(per_pair[0][2] == 7);
  CHECK(per_pair[1][2] == 7);

  // every selection copy sees its y vertex
  for (int i = 0; i < 3; ++i)
    for (int p = 0; p < 2; ++p)
      for (int a = 0; a < gd.alpha; ++a)
        CHECK(h.adjacent(gd.selection[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)][static_cast<std::size_t>(a)],
                         gd.y[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)]));

  // edge vertices: adjacent to the selection copies of the two classes whose
  // index differs from the edge's endpoint, to nothing in other classes
  int cells = 0;
  for (const auto& ver : gd.verification) {
    // cross edges: two between classes 0,1 and 1,2; one between 0,2
    CHECK(ver.edge_vertices.size() == (ver.i == 0 && ver.j == 2 ? 1U : 2U));
    for (auto [p, r, w] : ver.edge_vertices)
      for (int cls = 0; cls < 3; ++cls)
        for (int t = 0; t < 2; ++t)
          for (Vertex x : gd.selection[static_cast<std::size_t>(cls)][static_cast<std::size_t>(t)]) {
            const bool want = (cls == ver.i && t != p) || (cls == ver.j && t != r);
            CHECK(h.adjacent(x, w) == want);
            ++cells;
          }
  }
  CHECK(cells > 0);
}

TEST_CASE("clique reduction soundness on k = 3, q = 1") {
  MccInstance triangle{gen::complete(3), {{0}, {1}, {2}}};
  CHECK(has_multicolored_clique(triangle));
  CHECK(one_sided_at_least(mcc_to_osgtd(triangle).instance, 43));

  MccInstance path{gen::path(3), {{0}, {1}, {2}}};
  CHECK_FALSE(has_multicolored_clique(path));
  CHECK_FALSE(one_sided_at_least(mcc_to_osgtd(path).instance, 43));
}

TEST_CASE("clique instance validation") {
  CHECK_THROWS_AS(validate(MccInstance{Graph(1, {}), {{0}}}), InvalidInput);
  CHECK_THROWS_AS(validate(MccInstance{Graph(3, {}), {{0, 1}, {2}}}), InvalidInput);
  CHECK_THROWS_AS(validate(MccInstance{Graph(4, {{0, 1}}), {{0, 1}, {2, 3}}}), InvalidInput);
  CHECK_THROWS_AS(validate(MccInstance{Graph(3, {}), {{0}, {1}}}), InvalidInput);
  CHECK_THROWS_AS(mcc_to_osgtd(MccInstance{Graph(1, {}), {{0}}}), InvalidInput);
}

TEST_CASE("bipartite instance validation") {
  Graph p3 = gen::path(3);
  CHECK_NOTHROW(validate(OsgtdInstance{p3, {{0, 2}, {1}}, 1}));
  CHECK_THROWS_AS(validate(OsgtdInstance{p3, {{0, 1}, {2}}, 1}), InvalidInput);
  CHECK_THROWS_AS(validate(OsgtdInstance{Graph(3, {{0, 1}}), {{0, 2}, {1}}, 1}), InvalidInput);
}

TEST_CASE("source graph to one-sided instance") {
  Graph k2 = gen::complete(2);
  auto gd = gd_to_osgtd(k2, 1);
  CHECK(gd.sides.a.size() == 2);
  CHECK(gd.sides.b.size() == 2);
  CHECK(gd.graph.m() == 4);
  CHECK(one_sided_reference(gd) == 1);
  CHECK(gd.target == 1);

  auto tgd = tgd_to_osgtd(k2, 2);
  CHECK(tgd.graph.m() == 2);
  CHECK(one_sided_reference(tgd) == 2);

  Graph p3 = gen::path(3);
  auto l = lgd_to_osgtd(p3, 1);
  CHECK(l.sides.a.size() == 3);
  CHECK(l.sides.b.size() == 6);
  CHECK(one_sided_reference(l) == max_sequence_bruteforce(p3, SequenceVariant::L).length);

  CHECK_THROWS_AS(gd_to_osgtd(Graph(2, {}), 1), InvalidInput);
  CHECK_THROWS_AS(lgd_to_osgtd(Graph(3, {{0, 1}}), 1), InvalidInput);
}

TEST_CASE("source reductions keep the maximum on random graphs") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Graph g = gen::random_connected(3 + static_cast<int>(seed % 5), 0.3, seed);
    CHECK(max_one_sided(gd_to_osgtd(g, 0)).length == max_sequence_bruteforce(g, SequenceVariant::GD).length);
    CHECK(max_one_sided(tgd_to_osgtd(g, 0)).length == max_sequence_bruteforce(g, SequenceVariant::TGD).length);
    CHECK(max_one_sided(lgd_to_osgtd(g, 0)).length == max_sequence_bruteforce(g, SequenceVariant::L).length);
    for (auto inst : {gd_to_osgtd(g, 0), tgd_to_osgtd(g, 0), lgd_to_osgtd(g, 0)}) {
      CHECK(symmetric(inst.graph));
      CHECK(inst.sides.is_valid_for(inst.graph));
    }
  }
}

TEST_CASE("co-bipartite lift of the figure graph") {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i < 5; ++i) e.emplace_back(i, 5 + i);
  for (int j = 0; j < 5; ++j) e.emplace_back(3, 5 + j);
  e.emplace_back(4, 8);
  OsgtdInstance inst{Graph(10, e), {{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}}, 1};

  auto tgd = osgtd_to_cobipartite(inst, SequenceVariant::TGD);
  CHECK(tgd.k == 5);
  CHECK(tgd.graph.n() == 14);
  CHECK(verify_sequence(tgd.graph, {0, 1, 2, 8, 9}, SequenceVariant::TGD).valid);
  CHECK(max_sequence_bruteforce(tgd.graph, SequenceVariant::TGD).length == max_one_sided(inst).length + 4);

  auto gd = osgtd_to_cobipartite(inst, SequenceVariant::GD);
  CHECK(gd.k == 1);
  CHECK(gd.graph.n() == 10);
  CHECK(gd.graph.adjacent(0, 4));
  CHECK(gd.graph.adjacent(5, 9));
  CHECK(max_sequence_bruteforce(gd.graph, SequenceVariant::GD).length == max_one_sided(inst).length);

  CHECK_THROWS_AS(osgtd_to_cobipartite(inst, SequenceVariant::LocalL), InvalidInput);
  CHECK_THROWS_AS(osgtd_to_cobipartite(OsgtdInstance{inst.graph, inst.sides, 0}, SequenceVariant::L), InvalidInput);
}

TEST_CASE("one-sided maximum through the covering hypergraph") {
  auto h = osgtd_to_hypergraph(OsgtdInstance{gen::complete(2), {{0}, {1}}, 1});
  CHECK(h.num_vertices == 1);
  CHECK(h.edges == std::vector<std::vector<Vertex>>{{0}});

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto [g, sides] = gen::random_bipartite(2 + static_cast<int>(seed % 5), 2 + static_cast<int>(seed / 5 % 5), 0.35, seed);
    OsgtdInstance inst{g, sides, 1};
    auto hyper = osgtd_to_hypergraph(inst);
    CHECK(hyper.edges.size() == sides.a.size());
    const int ref = one_sided_reference(inst);
    CHECK(testing::max_covering_reference(hyper) == ref);
    auto best = max_one_sided(inst);
    CHECK(best.length == ref);
    CHECK(verify_sequence(g, best.sequence, SequenceVariant::TGD).valid);
  }
}

TEST_CASE("corona with leaves") {
  Graph k1 = corona_with_leaves(Graph(1, {}));
  CHECK(k1 == gen::complete(2));

  Graph c = corona_with_leaves(gen::cycle(3));
  CHECK(c.n() == 6);
  for (Vertex v = 0; v < 3; ++v) {
    CHECK(c.adjacent(v, 3 + v));
    CHECK(c.degree(3 + v) == 1);
  }
  CHECK(min_forcing_bruteforce(c, RuleSet{RuleKind::Z, RuleKind::T}).k == 0);
  CHECK(min_forcing_bruteforce(c, RuleSet{RuleKind::T, RuleKind::D}).k == 0);

  Graph labelled(2, {{0, 1}});
  labelled.set_labels({"u", "v"});
  CHECK(corona_with_leaves(labelled).label(3) == "v'");
  CHECK_FALSE(corona_with_leaves(gen::path(2)).has_labels());
}

TEST_CASE("empty set forces every corona") {
  for (int n = 1; n <= 5; ++n)
    for (const auto& sg : testing::all_graphs(n)) {
      Graph c = corona_with_leaves(sg.to_graph());
      CHECK(testing::min_forcing_reference(c, RuleSet{RuleKind::Z, RuleKind::T}) == 0);
      CHECK(testing::min_forcing_reference(c, RuleSet{RuleKind::T, RuleKind::D}) == 0);
    }
}
