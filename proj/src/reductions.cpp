#include "zf/reductions.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "zf/errors.hpp"

namespace zf {

namespace {

std::string idx(int i) { return std::to_string(i + 1); }

void require_no_isolated(const Graph& g) {
  if (g.has_isolated_vertices()) throw InvalidInput("graph has isolated vertices");
}

}  // namespace

void validate(const MccInstance& inst) {
  const Graph& g = inst.graph;
  if (inst.k() < 2) throw InvalidInput("multicolored clique needs k >= 2 classes");
  std::vector<int> colour(static_cast<std::size_t>(g.n()), -1);
  for (int i = 0; i < inst.k(); ++i) {
    const auto& cls = inst.classes[static_cast<std::size_t>(i)];
    if (static_cast<int>(cls.size()) != inst.q()) throw InvalidInput("colour classes differ in size");
    for (Vertex v : cls) {
      if (v < 0 || v >= g.n()) throw InvalidInput("class member " + std::to_string(v) + " out of range");
      if (colour[static_cast<std::size_t>(v)] != -1) throw InvalidInput("vertex " + std::to_string(v) + " in two classes");
      colour[static_cast<std::size_t>(v)] = i;
    }
  }
  if (std::find(colour.begin(), colour.end(), -1) != colour.end()) throw InvalidInput("classes do not cover every vertex");
  for (auto [u, v] : g.edges())
    if (colour[static_cast<std::size_t>(u)] == colour[static_cast<std::size_t>(v)])
      throw InvalidInput("class " + std::to_string(colour[static_cast<std::size_t>(u)]) + " is not independent");
}

bool has_multicolored_clique(const MccInstance& inst) {
  validate(inst);
  const int k = inst.k(), q = inst.q();
  if (q == 0) return false;
  std::vector<int> pick(static_cast<std::size_t>(k), 0);
  // depth-first over transversals, cutting at the first non-adjacent pair
  auto rec = [&](auto&& self, int i) -> bool {
    if (i == k) return true;
    for (int p = 0; p < q; ++p) {
      Vertex v = inst.classes[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)];
      bool ok = true;
      for (int j = 0; j < i && ok; ++j)
        ok = inst.graph.adjacent(v, inst.classes[static_cast<std::size_t>(j)][static_cast<std::size_t>(pick[static_cast<std::size_t>(j)])]);
      if (!ok) continue;
      pick[static_cast<std::size_t>(i)] = p;
      if (self(self, i + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

void validate(const OsgtdInstance& inst) {
  if (!inst.sides.is_valid_for(inst.graph)) throw InvalidInput("sides are not a bipartition of the graph");
  require_no_isolated(inst.graph);
  if (inst.target < 0) throw InvalidInput("negative target length");
}

std::size_t mcc_reduction_size(const MccInstance& inst) {
  const std::size_t k = static_cast<std::size_t>(inst.k()), q = static_cast<std::size_t>(inst.q());
  const std::size_t a = 2 * k + 1;
  std::size_t cross = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      for (Vertex u : inst.classes[i])
        for (Vertex v : inst.classes[j]) cross += inst.graph.adjacent(u, v);
  return k * (q * a + a) + a * (k * (k - 1) / 2 + cross) + 2;
}

MccReduction mcc_to_osgtd(const MccInstance& inst) {
  validate(inst);
  const int k = inst.k(), q = inst.q();
  MccReduction red;
  MccGadgets& gd = red.gadgets;
  gd.alpha = gd.beta = 2 * k + 1;
  GraphBuilder b;
  auto& A = red.instance.sides.a;
  auto& B = red.instance.sides.b;

  gd.selection.assign(static_cast<std::size_t>(k), {});
  gd.y.assign(static_cast<std::size_t>(k), {});
  for (int i = 0; i < k; ++i) {
    for (int a = 0; a < gd.alpha; ++a) {
      Vertex y = b.add_vertex("y" + idx(i) + "(" + idx(a) + ")");
      gd.y[static_cast<std::size_t>(i)].push_back(y);
      B.push_back(y);
    }
    auto& sel = gd.selection[static_cast<std::size_t>(i)];
    sel.assign(static_cast<std::size_t>(q), {});
    for (int p = 0; p < q; ++p)
      for (int a = 0; a < gd.alpha; ++a) {
        Vertex x = b.add_vertex("x" + idx(i) + "_" + idx(p) + "(" + idx(a) + ")");
        sel[static_cast<std::size_t>(p)].push_back(x);
        A.push_back(x);
        b.add_edge(x, gd.y[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)]);
      }
  }

  gd.f = b.add_vertex("f");
  gd.g = b.add_vertex("g");
  A.push_back(gd.f);
  B.push_back(gd.g);
  b.add_edge(gd.f, gd.g);
  for (const auto& row : gd.y)
    for (Vertex y : row) b.add_edge(gd.f, y);  // E1

  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      for (int bb = 0; bb < gd.beta; ++bb) {
        MccGadgets::Verification ver;
        ver.i = i;
        ver.j = j;
        ver.b = bb;
        ver.c = b.add_vertex("c" + idx(i) + "," + idx(j) + "(" + idx(bb) + ")");
        A.push_back(ver.c);
        b.add_edge(ver.c, gd.g);  // E2
        for (const auto& row : gd.y)
          for (Vertex y : row) b.add_edge(ver.c, y);
        for (int p = 0; p < q; ++p)
          for (int r = 0; r < q; ++r) {
            Vertex u = inst.classes[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)];
            Vertex v = inst.classes[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)];
            if (!inst.graph.adjacent(u, v)) continue;
            Vertex w = b.add_vertex("w" + idx(i) + "," + idx(j) + "_" + idx(p) + "," + idx(r) + "(" + idx(bb) + ")");
            B.push_back(w);
            b.add_edge(ver.c, w);
            ver.edge_vertices.emplace_back(p, r, w);
            // E3: selection vertices of the two classes except the edge's own endpoints
            for (int t = 0; t < q; ++t) {
              if (t != p)
                for (Vertex x : gd.selection[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)]) b.add_edge(x, w);
              if (t != r)
                for (Vertex x : gd.selection[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)]) b.add_edge(x, w);
            }
          }
        gd.verification.push_back(std::move(ver));
      }

  red.instance.graph = b.build();
  std::sort(A.begin(), A.end());
  std::sort(B.begin(), B.end());
  const int pairs = k * (k - 1) / 2;
  red.instance.target = gd.alpha * k + gd.beta * pairs + 1;
  return red;
}

std::vector<std::string> audit_mcc_reduction(const MccInstance& inst, const MccReduction& red) {
  std::vector<std::string> bad;
  const Graph& h = red.instance.graph;
  const MccGadgets& gd = red.gadgets;
  const int k = inst.k(), q = inst.q();
  auto fail = [&](std::string msg) { bad.push_back(std::move(msg)); };

  if (gd.alpha != 2 * k + 1 || gd.beta != 2 * k + 1) fail("alpha/beta differ from 2k+1");
  if (red.instance.target != gd.alpha * k + gd.beta * (k * (k - 1) / 2) + 1) fail("target length mismatch");
  if (static_cast<std::size_t>(h.n()) != mcc_reduction_size(inst))
    fail("vertex count " + std::to_string(h.n()) + " differs from " + std::to_string(mcc_reduction_size(inst)));
  if (!red.instance.sides.is_valid_for(h)) fail("sides are not a bipartition");
  if (h.has_isolated_vertices()) fail("isolated vertex");

  std::set<Vertex> ys, sel, cs, ws;
  for (const auto& row : gd.y) ys.insert(row.begin(), row.end());
  for (const auto& cls : gd.selection)
    for (const auto& xs : cls) sel.insert(xs.begin(), xs.end());

  // selection gadgets: x^i_p(a) sees y^i(a) and no other y
  for (int i = 0; i < k; ++i)
    for (int p = 0; p < q; ++p)
      for (int a = 0; a < gd.alpha; ++a) {
        Vertex x = gd.selection[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)][static_cast<std::size_t>(a)];
        for (int i2 = 0; i2 < k; ++i2)
          for (int a2 = 0; a2 < gd.alpha; ++a2) {
            bool want = i2 == i && a2 == a;
            if (h.adjacent(x, gd.y[static_cast<std::size_t>(i2)][static_cast<std::size_t>(a2)]) != want)
              fail("selection edge " + h.label(x) + " - " + h.label(gd.y[static_cast<std::size_t>(i2)][static_cast<std::size_t>(a2)]));
          }
      }

  // E1
  for (Vertex y : ys)
    if (!h.adjacent(gd.f, y)) fail("E1: f not adjacent to " + h.label(y));
  if (!h.adjacent(gd.f, gd.g)) fail("f not adjacent to g");

  std::map<std::pair<int, int>, int> per_pair;
  for (const auto& ver : gd.verification) {
    ++per_pair[{ver.i, ver.j}];
    cs.insert(ver.c);
    // E2
    if (!h.adjacent(ver.c, gd.g)) fail("E2: " + h.label(ver.c) + " not adjacent to g");
    for (Vertex y : ys)
      if (!h.adjacent(ver.c, y)) fail("E2: " + h.label(ver.c) + " not adjacent to " + h.label(y));
    std::size_t expect_w = 0;
    for (Vertex u : inst.classes[static_cast<std::size_t>(ver.i)])
      for (Vertex v : inst.classes[static_cast<std::size_t>(ver.j)]) expect_w += inst.graph.adjacent(u, v);
    if (ver.edge_vertices.size() != expect_w) fail("edge vertex count in " + h.label(ver.c));
    for (auto [p, r, w] : ver.edge_vertices) {
      ws.insert(w);
      if (!inst.graph.adjacent(inst.classes[static_cast<std::size_t>(ver.i)][static_cast<std::size_t>(p)],
                               inst.classes[static_cast<std::size_t>(ver.j)][static_cast<std::size_t>(r)]))
        fail("edge vertex " + h.label(w) + " without a source edge");
      if (!h.adjacent(ver.c, w)) fail(h.label(ver.c) + " not adjacent to " + h.label(w));
      // E3 cell by cell, including classes outside the pair (never adjacent)
      for (int i2 = 0; i2 < k; ++i2)
        for (int t = 0; t < q; ++t) {
          bool want = (i2 == ver.i && t != p) || (i2 == ver.j && t != r);
          for (Vertex x : gd.selection[static_cast<std::size_t>(i2)][static_cast<std::size_t>(t)])
            if (h.adjacent(x, w) != want) fail("E3: " + h.label(x) + " - " + h.label(w));
        }
      if (h.degree(w) != 1 + (q - 1) * gd.alpha * 2) fail("stray edge at " + h.label(w));
    }
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (per_pair[{i, j}] != gd.beta)
        fail("pair " + idx(i) + "," + idx(j) + " has " + std::to_string(per_pair[{i, j}]) + " verification gadgets");

  std::set<Vertex> a_expect(sel);
  a_expect.insert(cs.begin(), cs.end());
  a_expect.insert(gd.f);
  std::set<Vertex> a_have(red.instance.sides.a.begin(), red.instance.sides.a.end());
  if (a_have != a_expect) fail("side A is not selection + verification + f");
  std::size_t degree_f = ys.size() + 1;
  if (static_cast<std::size_t>(h.degree(gd.f)) != degree_f) fail("stray edge at f");
  if (static_cast<std::size_t>(h.degree(gd.g)) != cs.size() + 1) fail("stray edge at g");
  return bad;
}

Hypergraph osgtd_to_hypergraph(const OsgtdInstance& inst) {
  validate(inst);
  std::vector<int> pos(static_cast<std::size_t>(inst.graph.n()), -1);
  for (std::size_t i = 0; i < inst.sides.b.size(); ++i) pos[static_cast<std::size_t>(inst.sides.b[i])] = static_cast<int>(i);
  Hypergraph h;
  h.num_vertices = static_cast<int>(inst.sides.b.size());
  for (Vertex v : inst.sides.a) {
    std::vector<Vertex> e;
    for (Vertex w : inst.graph.neighbors(v)) e.push_back(pos[static_cast<std::size_t>(w)]);
    std::sort(e.begin(), e.end());
    h.edges.push_back(std::move(e));
  }
  return h;
}

SequenceMax max_one_sided(const OsgtdInstance& inst, std::size_t budget) {
  CoveringMax cm = max_covering_bruteforce(osgtd_to_hypergraph(inst), budget);
  SequenceMax out;
  out.length = cm.length;
  for (int e : cm.sequence) out.sequence.push_back(inst.sides.a[static_cast<std::size_t>(e)]);
  return out;
}

bool one_sided_at_least(const OsgtdInstance& inst, int target, std::size_t budget) {
  return covering_at_least(osgtd_to_hypergraph(inst), target, budget);
}

namespace {

enum class BipKind { GD, TGD, L };

OsgtdInstance to_bipartite(const Graph& g, int k, BipKind kind) {
  require_no_isolated(g);
  const int n = g.n();
  GraphBuilder b;
  OsgtdInstance out;
  out.target = k;
  for (int i = 0; i < n; ++i) out.sides.a.push_back(b.add_vertex("a" + idx(i)));
  if (kind != BipKind::L) {
    for (int i = 0; i < n; ++i) out.sides.b.push_back(b.add_vertex("b" + idx(i)));
    for (int i = 0; i < n; ++i) {
      if (kind == BipKind::GD) b.add_edge(i, n + i);
      for (Vertex j : g.neighbors(i)) b.add_edge(i, n + j);
    }
  } else {
    // b^1_i = n + 2i, b^2_i = n + 2i + 1
    for (int i = 0; i < n; ++i) {
      out.sides.b.push_back(b.add_vertex("b" + idx(i) + "'1"));
      out.sides.b.push_back(b.add_vertex("b" + idx(i) + "'2"));
    }
    for (int i = 0; i < n; ++i) {
      b.add_edge(i, n + 2 * i);
      for (Vertex j : g.neighbors(i)) {
        b.add_edge(i, n + 2 * j);
        b.add_edge(i, n + 2 * j + 1);
      }
    }
  }
  out.graph = b.build();
  return out;
}

}  // namespace

OsgtdInstance gd_to_osgtd(const Graph& g, int k) { return to_bipartite(g, k, BipKind::GD); }
OsgtdInstance tgd_to_osgtd(const Graph& g, int k) { return to_bipartite(g, k, BipKind::TGD); }
OsgtdInstance lgd_to_osgtd(const Graph& g, int k) { return to_bipartite(g, k, BipKind::L); }

TargetInstance osgtd_to_cobipartite(const OsgtdInstance& inst, SequenceVariant target) {
  if (target == SequenceVariant::LocalL) throw InvalidInput("no co-bipartite lift for the local L variant");
  validate(inst);
  const bool padded = target == SequenceVariant::TGD || target == SequenceVariant::L;
  if (padded && inst.target == 0) throw InvalidInput("the padded lift needs k > 0");
  const Graph& g = inst.graph;
  GraphBuilder b;
  for (Vertex v = 0; v < g.n(); ++v) b.add_vertex(g.has_labels() ? g.label(v) : std::string());
  for (auto [u, v] : g.edges()) b.add_edge(u, v);
  std::vector<Vertex> a = inst.sides.a, bs = inst.sides.b;
  if (padded) {
    a.push_back(b.add_vertex("a+1"));
    a.push_back(b.add_vertex("a+2"));
    bs.push_back(b.add_vertex("b+1"));
    bs.push_back(b.add_vertex("b+2"));
  }
  for (const auto* side : {&a, &bs})
    for (std::size_t i = 0; i < side->size(); ++i)
      for (std::size_t j = i + 1; j < side->size(); ++j) b.add_edge((*side)[i], (*side)[j]);
  return {b.build(), padded ? inst.target + 4 : inst.target};
}

Graph corona_with_leaves(const Graph& g) {
  const int n = g.n();
  std::vector<std::pair<Vertex, Vertex>> edges = g.edges();
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, n + v);
  Graph out(2 * n, edges);
  if (g.has_labels()) {
    std::vector<std::string> labels = g.labels();
    for (Vertex v = 0; v < n; ++v) labels.push_back(g.label(v) + "'");
    out.set_labels(std::move(labels));
  }
  return out;
}

}  // namespace zf
