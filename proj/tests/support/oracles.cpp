#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_set>

namespace zf::testing {

namespace {

using Mask = std::uint64_t;

std::vector<Mask> open_masks(const Graph& g) {
  if (g.n() > 24) throw std::invalid_argument("oracle limited to 24 vertices");
  std::vector<Mask> m(static_cast<std::size_t>(g.n()), 0);
  for (auto [u, v] : g.edges()) {
    m[static_cast<std::size_t>(u)] |= Mask{1} << v;
    m[static_cast<std::size_t>(v)] |= Mask{1} << u;
  }
  return m;
}

}  // namespace

int min_vertex_cover(const Graph& g) {
  if (g.n() > 24) throw std::invalid_argument("oracle limited to 24 vertices");
  const int n = g.n();
  int best = n;
  for (Mask s = 0; s < (Mask{1} << n); ++s) {
    int c = std::popcount(s);
    if (c >= best) continue;
    bool ok = true;
    for (auto [u, v] : g.edges())
      if (!((s >> u) & 1) && !((s >> v) & 1)) {
        ok = false;
        break;
      }
    if (ok) best = c;
  }
  return best;
}

int treewidth_by_orders(const Graph& g) {
  const int n = g.n();
  if (n > 11) throw std::invalid_argument("order oracle limited to 11 vertices");
  if (n == 0) return -1;
  int best = n - 1;
  // eliminate vertices one at a time, tracking the fill graph
  auto rec = [&](auto&& self, std::vector<Mask> adj, Mask left, int width) -> void {
    if (width >= best) return;
    if (left == 0) {
      best = width;
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (!((left >> v) & 1)) continue;
      Mask nb = adj[static_cast<std::size_t>(v)] & left;
      int w = std::max(width, std::popcount(nb));
      if (w >= best) continue;
      std::vector<Mask> next = adj;
      for (int u = 0; u < n; ++u)
        if ((nb >> u) & 1) next[static_cast<std::size_t>(u)] |= nb & ~(Mask{1} << u);
      self(self, std::move(next), left & ~(Mask{1} << v), w);
    }
  };
  rec(rec, open_masks(g), (Mask{1} << n) - 1, 0);
  return best;
}

int min_forcing_reference(const Graph& g, RuleSet rs) {
  const int n = g.n();
  if (n > 12) throw std::invalid_argument("forcing oracle limited to 12 vertices");
  auto adj = open_masks(g);
  const Mask all = (Mask{1} << n) - 1;
  auto successors = [&](Mask blue) {
    std::vector<Mask> out;
    for (int v = 0; v < n; ++v) {
      Mask white_nb = adj[static_cast<std::size_t>(v)] & ~blue;
      const bool v_blue = (blue >> v) & 1;
      if (v_blue && rs.has(RuleKind::Z) && std::popcount(white_nb) == 1) out.push_back(blue | white_nb);
      if (!v_blue && rs.has(RuleKind::T) && std::popcount(white_nb) == 1) out.push_back(blue | white_nb);
      if (!v_blue && rs.has(RuleKind::D) && white_nb == 0) out.push_back(blue | (Mask{1} << v));
    }
    return out;
  };
  for (int k = 0; k <= n; ++k) {
    for (Mask s = 0; s <= all; ++s) {
      if (std::popcount(s) != k) continue;
      std::unordered_set<Mask> seen{s};
      std::vector<Mask> stack{s};
      while (!stack.empty()) {
        Mask b = stack.back();
        stack.pop_back();
        if (b == all) return k;
        for (Mask nb : successors(b))
          if (seen.insert(nb).second) stack.push_back(nb);
      }
    }
  }
  return n;
}

int max_sequence_reference(const Graph& g, SequenceVariant var, const std::vector<Vertex>& allowed) {
  const int n = g.n();
  if (n > 10) throw std::invalid_argument("sequence oracle limited to 10 vertices");
  auto adj = open_masks(g);
  std::vector<Vertex> pool = allowed;
  if (pool.empty())
    for (Vertex v = 0; v < n; ++v) pool.push_back(v);
  auto target = [&](Vertex v) { return adj[static_cast<std::size_t>(v)] | (target_closed(var) ? Mask{1} << v : 0); };
  auto blocker = [&](Vertex v) { return adj[static_cast<std::size_t>(v)] | (blocker_closed(var) ? Mask{1} << v : 0); };
  int best = 0;
  auto rec = [&](auto&& self, Mask used, Mask blocked, int len) -> void {
    best = std::max(best, len);
    for (Vertex v : pool) {
      if ((used >> v) & 1) continue;
      Mask fp = target(v) & ~blocked;
      if (var == SequenceVariant::LocalL) fp &= used | (Mask{1} << v);
      if (!fp) continue;
      self(self, used | (Mask{1} << v), blocked | blocker(v), len + 1);
    }
  };
  rec(rec, 0, 0, 0);
  return best;
}

int max_covering_reference(const Hypergraph& h) {
  std::vector<Mask> e;
  for (const auto& edge : h.edges) {
    Mask m = 0;
    for (Vertex x : edge) m |= Mask{1} << x;
    e.push_back(m);
  }
  int best = 0;
  auto rec = [&](auto&& self, std::uint32_t used, Mask covered, int len) -> void {
    best = std::max(best, len);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (!((used >> i) & 1) && (e[i] & ~covered)) self(self, used | (1U << i), covered | e[i], len + 1);
  };
  rec(rec, 0, 0, 0);
  return best;
}

std::vector<std::uint32_t> reachability(const std::vector<std::uint32_t>& rows) {
  const std::size_t m = rows.size();
  std::vector<std::uint32_t> out(m, 0);
  for (std::size_t s = 0; s < m; ++s) {
    std::vector<std::size_t> stack{s};
    std::uint32_t seen = 0;
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t y = 0; y < m; ++y)
        if (((rows[x] >> y) & 1U) && !((seen >> y) & 1U)) {
          seen |= 1U << y;
          stack.push_back(y);
        }
    }
    out[s] = seen;
  }
  return out;
}

std::optional<Bipartition> two_colouring(const Graph& g) {
  std::vector<int> side(static_cast<std::size_t>(g.n()), -1);
  for (Vertex s = 0; s < g.n(); ++s) {
    if (side[static_cast<std::size_t>(s)] != -1) continue;
    side[static_cast<std::size_t>(s)] = 0;
    std::vector<Vertex> stack{s};
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(v)) {
        if (side[static_cast<std::size_t>(w)] == -1) {
          side[static_cast<std::size_t>(w)] = 1 - side[static_cast<std::size_t>(v)];
          stack.push_back(w);
        } else if (side[static_cast<std::size_t>(w)] == side[static_cast<std::size_t>(v)]) {
          return std::nullopt;
        }
      }
    }
  }
  Bipartition b;
  for (Vertex v = 0; v < g.n(); ++v) (side[static_cast<std::size_t>(v)] ? b.b : b.a).push_back(v);
  return b;
}

}  // namespace zf::testing
