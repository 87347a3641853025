#include "zf/treedec.hpp"

#include <algorithm>
#include <cmath>
#include <bit>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_set>

#include "zf/errors.hpp"

namespace zf {

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

TdCheck validate_td(const Graph& g, const TreeDecomposition& td) {
  TdCheck out;
  auto fail = [&](TdViolation v) {
    out.violation = std::move(v);
    return out;
  };
  const int b = static_cast<int>(td.bags.size());
  const auto n = static_cast<std::size_t>(g.n());

  if (b == 0) {
    if (g.n() == 0) {
      out.valid = true;
      return out;
    }
    return fail({1, 0, {-1, -1}, "no bags, vertex 0 uncovered"});
  }
  if (static_cast<int>(td.edges.size()) != b - 1)
    return fail({0, -1, {-1, -1}, "bag tree has " + std::to_string(td.edges.size()) + " edges for " +
                                      std::to_string(b) + " bags"});
  std::vector<std::vector<int>> tree(static_cast<std::size_t>(b));
  for (auto [x, y] : td.edges) {
    if (x < 0 || y < 0 || x >= b || y >= b || x == y)
      return fail({0, -1, {-1, -1}, "bag tree edge {" + std::to_string(x) + "," + std::to_string(y) + "} invalid"});
    tree[static_cast<std::size_t>(x)].push_back(y);
    tree[static_cast<std::size_t>(y)].push_back(x);
  }
  std::vector<char> seen(static_cast<std::size_t>(b), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : tree[static_cast<std::size_t>(x)])
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = 1;
        ++reached;
        stack.push_back(y);
      }
  }
  if (reached != b) return fail({0, -1, {-1, -1}, "bag tree is not connected"});

  std::vector<std::vector<int>> bags_of(n);
  std::vector<VertexSet> bag_sets;
  for (int i = 0; i < b; ++i) {
    VertexSet s(n);
    for (Vertex v : td.bags[static_cast<std::size_t>(i)]) {
      if (v < 0 || static_cast<std::size_t>(v) >= n)
        return fail({1, v, {-1, -1}, "bag " + std::to_string(i) + " holds unknown vertex " + std::to_string(v)});
      if (s.contains(v)) continue;
      s.insert(v);
      bags_of[static_cast<std::size_t>(v)].push_back(i);
    }
    bag_sets.push_back(std::move(s));
  }
  for (std::size_t v = 0; v < n; ++v)
    if (bags_of[v].empty())
      return fail({1, static_cast<Vertex>(v), {-1, -1}, "vertex " + std::to_string(v) + " is in no bag"});
  for (auto [u, v] : g.edges()) {
    bool covered = false;
    for (int i : bags_of[static_cast<std::size_t>(u)])
      if (bag_sets[static_cast<std::size_t>(i)].contains(v)) {
        covered = true;
        break;
      }
    if (!covered)
      return fail({2, -1, {u, v}, "edge {" + std::to_string(u) + "," + std::to_string(v) + "} is in no bag"});
  }
  // in a tree, the bags holding v are connected iff they span |bags_of(v)| - 1 tree edges
  std::vector<int> inner(n, 0);
  for (auto [x, y] : td.edges)
    (bag_sets[static_cast<std::size_t>(x)] & bag_sets[static_cast<std::size_t>(y)]).for_each([&](Vertex v) {
      ++inner[static_cast<std::size_t>(v)];
    });
  for (std::size_t v = 0; v < n; ++v)
    if (inner[v] != static_cast<int>(bags_of[v].size()) - 1)
      return fail({3, static_cast<Vertex>(v), {-1, -1}, "bags of vertex " + std::to_string(v) + " are disconnected"});
  out.valid = true;
  out.width = td.width();
  return out;
}

TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<Vertex>& order) {
  const int n = g.n();
  if (static_cast<int>(order.size()) != n) throw InvalidInput("elimination order must list every vertex once");
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    Vertex v = order[static_cast<std::size_t>(i)];
    if (v < 0 || v >= n || pos[static_cast<std::size_t>(v)] != -1)
      throw InvalidInput("elimination order must list every vertex once");
    pos[static_cast<std::size_t>(v)] = i;
  }
  std::vector<std::set<Vertex>> adj(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) adj[static_cast<std::size_t>(v)].insert(g.neighbors(v).begin(), g.neighbors(v).end());

  TreeDecomposition td;
  td.bags.resize(static_cast<std::size_t>(n));
  std::vector<int> roots;
  for (int i = 0; i < n; ++i) {
    Vertex v = order[static_cast<std::size_t>(i)];
    auto& nb = adj[static_cast<std::size_t>(v)];
    std::vector<Vertex> later(nb.begin(), nb.end());
    auto& bag = td.bags[static_cast<std::size_t>(i)];
    bag = later;
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    int parent = -1;
    for (Vertex w : later) {
      int p = pos[static_cast<std::size_t>(w)];
      if (parent == -1 || p < parent) parent = p;
      adj[static_cast<std::size_t>(w)].erase(v);
      for (Vertex x : later)
        if (x != w) adj[static_cast<std::size_t>(w)].insert(x);
    }
    nb.clear();
    if (parent == -1) roots.push_back(i);
    else td.edges.emplace_back(i, parent);
  }
  for (std::size_t r = 0; r + 1 < roots.size(); ++r) td.edges.emplace_back(roots[r], roots.back());
  return td;
}

std::vector<Vertex> elimination_order(const Graph& g, EliminationHeuristic h) {
  const int n = g.n();
  std::vector<std::set<Vertex>> adj(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) adj[static_cast<std::size_t>(v)].insert(g.neighbors(v).begin(), g.neighbors(v).end());
  std::vector<char> gone(static_cast<std::size_t>(n), 0);
  std::vector<long long> score(static_cast<std::size_t>(n), 0);

  auto compute = [&](Vertex v) -> long long {
    const auto& nb = adj[static_cast<std::size_t>(v)];
    if (h == EliminationHeuristic::MinDegree) return static_cast<long long>(nb.size());
    long long missing = 0;
    for (auto a = nb.begin(); a != nb.end(); ++a)
      for (auto b = std::next(a); b != nb.end(); ++b)
        if (!adj[static_cast<std::size_t>(*a)].count(*b)) ++missing;
    return missing;
  };
  using Entry = std::pair<long long, Vertex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (Vertex v = 0; v < n; ++v) {
    score[static_cast<std::size_t>(v)] = compute(v);
    heap.emplace(score[static_cast<std::size_t>(v)], v);
  }

  std::vector<Vertex> order;
  order.reserve(static_cast<std::size_t>(n));
  while (!heap.empty()) {
    auto [s, v] = heap.top();
    heap.pop();
    if (gone[static_cast<std::size_t>(v)] || s != score[static_cast<std::size_t>(v)]) continue;
    gone[static_cast<std::size_t>(v)] = 1;
    order.push_back(v);
    std::vector<Vertex> nb(adj[static_cast<std::size_t>(v)].begin(), adj[static_cast<std::size_t>(v)].end());
    for (Vertex w : nb) {
      adj[static_cast<std::size_t>(w)].erase(v);
      for (Vertex x : nb)
        if (x != w) adj[static_cast<std::size_t>(w)].insert(x);
    }
    adj[static_cast<std::size_t>(v)].clear();
    std::set<Vertex> touched(nb.begin(), nb.end());
    if (h == EliminationHeuristic::MinFill)
      for (Vertex w : nb) touched.insert(adj[static_cast<std::size_t>(w)].begin(), adj[static_cast<std::size_t>(w)].end());
    for (Vertex w : touched) {
      long long fresh = compute(w);
      if (fresh != score[static_cast<std::size_t>(w)]) {
        score[static_cast<std::size_t>(w)] = fresh;
        heap.emplace(fresh, w);
      }
    }
  }
  return order;
}

TreeDecomposition heuristic_decomposition(const Graph& g, EliminationHeuristic h) {
  return decomposition_from_order(g, elimination_order(g, h));
}

namespace {

// Neighbours of v outside `eliminated` once every vertex of `eliminated` is gone.
std::uint32_t q_mask(const std::vector<std::uint32_t>& adj, std::uint32_t eliminated, int v) {
  std::uint32_t seen = 1U << v, frontier = seen;
  while (frontier) {
    std::uint32_t next = 0;
    for (std::uint32_t f = frontier; f; f &= f - 1) next |= adj[static_cast<std::size_t>(std::countr_zero(f))];
    next &= eliminated & ~seen;
    seen |= next;
    frontier = next;
  }
  std::uint32_t out = 0;
  for (std::uint32_t s = seen; s; s &= s - 1) out |= adj[static_cast<std::size_t>(std::countr_zero(s))];
  return out & ~eliminated & ~(1U << v);
}

ExactTreewidth subset_dp(const Graph& g, std::optional<int> bound) {
  const int n = g.n();
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : g.neighbors(v)) adj[static_cast<std::size_t>(v)] |= 1U << w;
  constexpr std::uint8_t kInf = 0xff;
  const std::uint32_t full = (1U << n) - 1U;
  std::vector<std::uint8_t> tw(static_cast<std::size_t>(full) + 1, kInf);
  tw[0] = 0;
  const int cap = bound ? *bound : n;
  for (std::uint32_t s = 1; s != 0 && s <= full; ++s) {
    int best = kInf;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      int v = std::countr_zero(rest);
      std::uint32_t prev = s & ~(1U << v);
      if (tw[prev] == kInf) continue;
      int q = std::popcount(q_mask(adj, prev, v));
      int cand = std::max<int>(tw[prev], q);
      if (cand < best) best = cand;
    }
    tw[s] = best <= cap ? static_cast<std::uint8_t>(best) : kInf;
    if (s == full) break;
  }
  ExactTreewidth out;
  if (n == 0) {
    out.tw = -1;
    return out;
  }
  if (tw[full] == kInf) {
    out.within_bound = false;
    return out;
  }
  out.tw = tw[full];
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::uint32_t s = full;
  for (int i = n - 1; i >= 0; --i) {
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      int v = std::countr_zero(rest);
      std::uint32_t prev = s & ~(1U << v);
      if (tw[prev] == kInf) continue;
      if (std::max<int>(tw[prev], std::popcount(q_mask(adj, prev, v))) == tw[s]) {
        order[static_cast<std::size_t>(i)] = v;
        s = prev;
        break;
      }
    }
  }
  out.td = decomposition_from_order(g, order);
  return out;
}

// Decides tw <= k by depth-first search over elimination orders.
class EliminationSearch {
 public:
  EliminationSearch(const Graph& g, int k, std::size_t budget) : g_(g), k_(k), budget_(budget) {}

  bool run(std::vector<Vertex>& order) {
    VertexSet remaining = VertexSet::full(static_cast<std::size_t>(g_.n()));
    return dfs(remaining, order);
  }

 private:
  // Neighbourhood of v in the graph left after eliminating V minus `remaining`.
  VertexSet filled_neighbors(const VertexSet& remaining, Vertex v) const {
    const auto n = static_cast<std::size_t>(g_.n());
    VertexSet seen(n), out(n);
    std::vector<Vertex> stack{v};
    seen.insert(v);
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (Vertex w : g_.neighbors(x)) {
        if (seen.contains(w)) continue;
        seen.insert(w);
        if (remaining.contains(w)) out.insert(w);
        else stack.push_back(w);
      }
    }
    return out;
  }

  bool dfs(VertexSet& remaining, std::vector<Vertex>& order) {
    if (static_cast<int>(remaining.size()) <= k_ + 1) {
      remaining.for_each([&](Vertex v) { order.push_back(v); });
      return true;
    }
    if (failed_.count(remaining)) return false;
    if (++visited_ > budget_) throw ResourceExhausted("elimination search exceeded its node budget");
    std::vector<std::pair<int, Vertex>> cands;
    Vertex simplicial = -1;
    remaining.for_each([&](Vertex v) {
      if (simplicial >= 0) return;
      VertexSet nb = filled_neighbors(remaining, v);
      int d = static_cast<int>(nb.size());
      if (d > k_) return;
      bool clique = true;
      nb.for_each([&](Vertex a) {
        if (!clique) return;
        VertexSet na = filled_neighbors(remaining, a);
        na.insert(a);
        if (!nb.is_subset_of(na)) clique = false;
      });
      if (clique) simplicial = v;
      else cands.emplace_back(d, v);
    });
    if (simplicial >= 0) cands = {{0, simplicial}};
    std::sort(cands.begin(), cands.end());
    for (auto [d, v] : cands) {
      remaining.erase(v);
      order.push_back(v);
      if (dfs(remaining, order)) return true;
      order.pop_back();
      remaining.insert(v);
    }
    failed_.insert(remaining);
    return false;
  }

  const Graph& g_;
  int k_;
  std::size_t budget_;
  std::size_t visited_ = 0;
  std::unordered_set<VertexSet> failed_;
};

}  // namespace

ExactTreewidth exact_treewidth(const Graph& g, std::optional<int> upper_bound, int max_n, std::size_t node_budget) {
  max_n = std::min(max_n, 25);
  if (upper_bound && *upper_bound < 0) {
    ExactTreewidth out;
    out.within_bound = g.n() == 0;
    return out;
  }
  if (g.n() <= max_n) return subset_dp(g, upper_bound);
  if (!upper_bound) throw ResourceExhausted("exact treewidth limited to n <= " + std::to_string(max_n));
  EliminationSearch search(g, *upper_bound, node_budget);
  std::vector<Vertex> order;
  ExactTreewidth out;
  if (!search.run(order)) {
    out.within_bound = false;
    return out;
  }
  out.td = decomposition_from_order(g, order);
  out.tw = out.td.width();
  return out;
}

int NiceTD::width() const {
  int w = -1;
  for (const auto& nd : nodes) w = std::max(w, static_cast<int>(nd.bag.size()) - 1);
  return w;
}

namespace {

class NiceBuilder {
 public:
  explicit NiceBuilder(NiceTD& out) : out_(out) {}

  int add(NiceKind kind, Vertex v, std::vector<Vertex> bag, int c0 = -1, int c1 = -1) {
    NiceNode nd;
    nd.kind = kind;
    nd.vertex = v;
    nd.bag = std::move(bag);
    nd.child[0] = c0;
    nd.child[1] = c1;
    int id = static_cast<int>(out_.nodes.size());
    out_.nodes.push_back(std::move(nd));
    if (c0 >= 0) out_.nodes[static_cast<std::size_t>(c0)].parent = id;
    if (c1 >= 0) out_.nodes[static_cast<std::size_t>(c1)].parent = id;
    return id;
  }

  // Forgets bag \ keep (each under a rule node), then introduces target \ bag.
  int transition(int cur, const std::vector<Vertex>& target) {
    std::vector<Vertex> bag = out_.nodes[static_cast<std::size_t>(cur)].bag;
    std::vector<Vertex> drop, gain;
    std::set_difference(bag.begin(), bag.end(), target.begin(), target.end(), std::back_inserter(drop));
    std::set_difference(target.begin(), target.end(), bag.begin(), bag.end(), std::back_inserter(gain));
    for (Vertex v : drop) {
      cur = add(NiceKind::Rule, v, bag, cur);
      bag.erase(std::find(bag.begin(), bag.end(), v));
      cur = add(NiceKind::Forget, v, bag, cur);
    }
    for (Vertex v : gain) {
      bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
      cur = add(NiceKind::Introduce, v, bag, cur);
    }
    return cur;
  }

 private:
  NiceTD& out_;
};

}  // namespace

namespace {

// Contracts every tree edge whose bags are nested, keeping the larger bag.
void contract_nested(std::vector<std::vector<Vertex>>& bags, std::vector<std::vector<int>>& tree) {
  const auto nb = bags.size();
  std::vector<int> rep(nb);
  for (std::size_t i = 0; i < nb; ++i) rep[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (rep[static_cast<std::size_t>(x)] != x) x = rep[static_cast<std::size_t>(x)] = rep[static_cast<std::size_t>(rep[static_cast<std::size_t>(x)])];
    return x;
  };
  std::vector<std::pair<int, int>> edges;
  for (std::size_t x = 0; x < nb; ++x)
    for (int y : tree[x])
      if (static_cast<int>(x) < y) edges.emplace_back(static_cast<int>(x), y);
  for (auto [x, y] : edges) {
    int a = find(x), b = find(y);
    const auto& ba = bags[static_cast<std::size_t>(a)];
    const auto& bb = bags[static_cast<std::size_t>(b)];
    if (std::includes(ba.begin(), ba.end(), bb.begin(), bb.end())) rep[static_cast<std::size_t>(b)] = a;
    else if (std::includes(bb.begin(), bb.end(), ba.begin(), ba.end())) rep[static_cast<std::size_t>(a)] = b;
  }
  std::vector<int> id(nb, -1);
  std::vector<std::vector<Vertex>> nbags;
  for (std::size_t i = 0; i < nb; ++i)
    if (find(static_cast<int>(i)) == static_cast<int>(i)) {
      id[i] = static_cast<int>(nbags.size());
      nbags.push_back(std::move(bags[i]));
    }
  std::vector<std::vector<int>> ntree(nbags.size());
  for (auto [x, y] : edges) {
    int a = id[static_cast<std::size_t>(find(x))], b = id[static_cast<std::size_t>(find(y))];
    if (a == b) continue;
    ntree[static_cast<std::size_t>(a)].push_back(b);
    ntree[static_cast<std::size_t>(b)].push_back(a);
  }
  bags = std::move(nbags);
  tree = std::move(ntree);
}

NiceTD build_nice(const std::vector<std::vector<Vertex>>& bags, const std::vector<std::vector<int>>& tree, int root) {
  NiceTD out;
  NiceBuilder b(out);
  const auto nb = bags.size();
  // BFS order from the root; processing it backwards visits children first
  std::vector<int> order{root}, parent(nb, -1);
  std::vector<std::vector<int>> children(nb);
  parent[static_cast<std::size_t>(root)] = root;
  for (std::size_t i = 0; i < order.size(); ++i) {
    int x = order[i];
    for (int y : tree[static_cast<std::size_t>(x)])
      if (parent[static_cast<std::size_t>(y)] == -1) {
        parent[static_cast<std::size_t>(y)] = x;
        children[static_cast<std::size_t>(x)].push_back(y);
        order.push_back(y);
      }
  }
  std::vector<int> top(nb, -1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto t = static_cast<std::size_t>(*it);
    int cur;
    if (children[t].empty()) {
      cur = b.transition(b.add(NiceKind::Leaf, -1, {}), bags[t]);
    } else {
      // join on the part of the bag the children share, introduce the rest afterwards
      std::vector<Vertex> shared;
      for (int c : children[t]) {
        const auto& bc = bags[static_cast<std::size_t>(c)];
        for (Vertex v : bc)
          if (std::binary_search(bags[t].begin(), bags[t].end(), v)) shared.push_back(v);
      }
      std::sort(shared.begin(), shared.end());
      shared.erase(std::unique(shared.begin(), shared.end()), shared.end());
      cur = -1;
      for (int c : children[t]) {
        int branch = b.transition(top[static_cast<std::size_t>(c)], shared);
        cur = cur < 0 ? branch : b.add(NiceKind::Join, -1, shared, cur, branch);
      }
      cur = b.transition(cur, bags[t]);
    }
    top[t] = cur;
  }
  b.transition(top[static_cast<std::size_t>(root)], {});
  return out;
}

// Rough table-size proxy: every node pays a constant per bag vertex, exponentially.
double nice_cost(const NiceTD& ntd) {
  double c = 0;
  for (const auto& nd : ntd.nodes) c += std::pow(8.0, static_cast<double>(nd.bag.size()));
  return c;
}

}  // namespace

NiceTD make_nice(const Graph& g, const TreeDecomposition& td) {
  auto check = validate_td(g, td);
  if (!check.valid) throw InvalidInput("invalid tree decomposition: " + check.violation->message);
  if (td.bags.empty()) {
    NiceTD out;
    NiceBuilder(out).add(NiceKind::Leaf, -1, {});
    return out;
  }
  const auto nb = td.bags.size();
  std::vector<std::vector<Vertex>> bags(nb);
  for (std::size_t i = 0; i < nb; ++i) {
    bags[i] = td.bags[i];
    std::sort(bags[i].begin(), bags[i].end());
    bags[i].erase(std::unique(bags[i].begin(), bags[i].end()), bags[i].end());
  }
  std::vector<std::vector<int>> tree(nb);
  for (auto [x, y] : td.edges) {
    tree[static_cast<std::size_t>(x)].push_back(y);
    tree[static_cast<std::size_t>(y)].push_back(x);
  }
  contract_nested(bags, tree);

  // small decompositions try every root; large ones the first few largest bags
  std::vector<int> roots(bags.size());
  for (std::size_t i = 0; i < bags.size(); ++i) roots[i] = static_cast<int>(i);
  if (roots.size() > 64) {
    std::stable_sort(roots.begin(), roots.end(),
                     [&](int a, int b) { return bags[static_cast<std::size_t>(a)].size() > bags[static_cast<std::size_t>(b)].size(); });
    roots.resize(4);
  }
  NiceTD best;
  double best_cost = 0;
  for (int r : roots) {
    NiceTD cand = build_nice(bags, tree, r);
    double c = nice_cost(cand);
    if (best.nodes.empty() || c < best_cost) {
      best = std::move(cand);
      best_cost = c;
    }
  }
  return best;
}

std::optional<std::string> check_nice(const Graph& g, const NiceTD& ntd) {
  const int count = static_cast<int>(ntd.nodes.size());
  if (count == 0) return "no nodes";
  const auto& root = ntd.nodes.back();
  if (!root.bag.empty()) return "root bag is not empty";
  if (root.parent != -1) return "root has a parent";
  const auto n = static_cast<std::size_t>(g.n());
  std::vector<int> forget_node(n, -1);
  auto child_bag = [&](const NiceNode& nd, int i) -> const std::vector<Vertex>& {
    return ntd.nodes[static_cast<std::size_t>(nd.child[i])].bag;
  };
  for (int id = 0; id < count; ++id) {
    const auto& nd = ntd.nodes[static_cast<std::size_t>(id)];
    std::string where = "node " + std::to_string(id) + ": ";
    if (!std::is_sorted(nd.bag.begin(), nd.bag.end())) return where + "bag not sorted";
    for (int i = 0; i < 2; ++i) {
      int c = nd.child[i];
      if (c == -1) continue;
      if (c < 0 || c >= id) return where + "child does not precede its parent";
      if (ntd.nodes[static_cast<std::size_t>(c)].parent != id) return where + "child/parent link mismatch";
    }
    if (id != count - 1 && nd.parent == -1) return where + "detached node";
    int kids = (nd.child[0] >= 0) + (nd.child[1] >= 0);
    switch (nd.kind) {
      case NiceKind::Leaf:
        if (kids != 0 || !nd.bag.empty()) return where + "leaf must be childless with an empty bag";
        break;
      case NiceKind::Introduce: {
        if (kids != 1 || nd.child[0] < 0) return where + "introduce needs one child";
        auto expect = child_bag(nd, 0);
        if (std::binary_search(expect.begin(), expect.end(), nd.vertex)) return where + "vertex already present";
        expect.insert(std::upper_bound(expect.begin(), expect.end(), nd.vertex), nd.vertex);
        if (expect != nd.bag) return where + "introduce bag mismatch";
        break;
      }
      case NiceKind::Forget: {
        if (kids != 1 || nd.child[0] < 0) return where + "forget needs one child";
        const auto& c = ntd.nodes[static_cast<std::size_t>(nd.child[0])];
        if (c.kind != NiceKind::Rule || c.vertex != nd.vertex) return where + "forget child is not its rule node";
        auto expect = c.bag;
        auto it = std::find(expect.begin(), expect.end(), nd.vertex);
        if (it == expect.end()) return where + "forgotten vertex absent from child";
        expect.erase(it);
        if (expect != nd.bag) return where + "forget bag mismatch";
        if (nd.vertex < 0 || static_cast<std::size_t>(nd.vertex) >= n) return where + "unknown vertex";
        if (forget_node[static_cast<std::size_t>(nd.vertex)] != -1) return where + "vertex forgotten twice";
        forget_node[static_cast<std::size_t>(nd.vertex)] = id;
        break;
      }
      case NiceKind::Rule: {
        if (kids != 1 || nd.child[0] < 0) return where + "rule needs one child";
        if (child_bag(nd, 0) != nd.bag) return where + "rule bag differs from child";
        if (nd.parent < 0) return where + "rule node without parent";
        const auto& p = ntd.nodes[static_cast<std::size_t>(nd.parent)];
        if (p.kind != NiceKind::Forget || p.vertex != nd.vertex) return where + "rule parent is not forget of same vertex";
        break;
      }
      case NiceKind::Join:
        if (kids != 2) return where + "join needs two children";
        if (child_bag(nd, 0) != nd.bag || child_bag(nd, 1) != nd.bag) return where + "join bags differ";
        break;
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    if (forget_node[v] == -1) return "vertex " + std::to_string(v) + " never forgotten";

  // Euler intervals: children precede parents, so a DFS from the root suffices
  std::vector<int> tin(static_cast<std::size_t>(count)), tout(static_cast<std::size_t>(count));
  int clock = 0;
  std::vector<std::pair<int, int>> stack{{count - 1, 0}};
  while (!stack.empty()) {
    auto& [x, state] = stack.back();
    const auto& nd = ntd.nodes[static_cast<std::size_t>(x)];
    if (state == 0) tin[static_cast<std::size_t>(x)] = clock++;
    if (state < 2 && nd.child[state] >= 0) {
      int c = nd.child[state++];
      stack.emplace_back(c, 0);
      continue;
    }
    if (state < 2) {
      ++state;
      continue;
    }
    tout[static_cast<std::size_t>(x)] = clock++;
    stack.pop_back();
  }
  auto below = [&](int a, int anc) {
    return tin[static_cast<std::size_t>(anc)] <= tin[static_cast<std::size_t>(a)] &&
           tout[static_cast<std::size_t>(a)] <= tout[static_cast<std::size_t>(anc)];
  };
  for (std::size_t v = 0; v < n; ++v) {
    int rule = ntd.nodes[static_cast<std::size_t>(forget_node[v])].child[0];
    const auto& bag = ntd.nodes[static_cast<std::size_t>(rule)].bag;
    for (Vertex w : g.neighbors(static_cast<Vertex>(v))) {
      if (std::binary_search(bag.begin(), bag.end(), w)) continue;
      if (below(forget_node[static_cast<std::size_t>(w)], rule)) continue;
      return "neighbour " + std::to_string(w) + " of " + std::to_string(v) + " missing from its rule bag";
    }
  }
  return std::nullopt;
}

TreeDecomposition parse_td(std::string_view text) {
  TreeDecomposition td;
  std::istringstream in{std::string(text)};
  std::string line;
  long long nbags = -1, n = -1;
  std::vector<char> seen;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head == "c") continue;
    auto bad = [&](const std::string& what) { return ParseError("td line " + std::to_string(line_no) + ": " + what); };
    if (head == "s") {
      std::string kind;
      long long width1 = 0;
      if (nbags >= 0 || !(ls >> kind >> nbags >> width1 >> n) || kind != "td" || nbags < 0 || n < 0)
        throw bad("malformed solution header");
      td.bags.assign(static_cast<std::size_t>(nbags), {});
      seen.assign(static_cast<std::size_t>(nbags), 0);
      continue;
    }
    if (nbags < 0) throw bad("content before 's td' header");
    if (head == "b") {
      long long id = 0;
      if (!(ls >> id) || id < 1 || id > nbags) throw bad("bag id out of range");
      if (seen[static_cast<std::size_t>(id - 1)]++) throw bad("bag listed twice");
      long long v = 0;
      while (ls >> v) {
        if (v < 1 || v > n) throw bad("vertex id out of range");
        td.bags[static_cast<std::size_t>(id - 1)].push_back(static_cast<Vertex>(v - 1));
      }
      if (!ls.eof()) throw bad("non-numeric bag entry");
      continue;
    }
    long long x = 0, y = 0;
    std::istringstream es(line);
    std::string extra;
    if (!(es >> x >> y) || (es >> extra) || x < 1 || y < 1 || x > nbags || y > nbags) throw bad("malformed tree edge");
    td.edges.emplace_back(static_cast<int>(x - 1), static_cast<int>(y - 1));
  }
  if (nbags < 0) throw ParseError("missing 's td' header");
  return td;
}

std::string write_td(const TreeDecomposition& td, int n) {
  std::ostringstream out;
  out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << n << '\n';
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    out << "b " << i + 1;
    for (Vertex v : td.bags[i]) out << ' ' << v + 1;
    out << '\n';
  }
  for (auto [x, y] : td.edges) out << x + 1 << ' ' << y + 1 << '\n';
  return out.str();
}

std::string write_nice(const NiceTD& ntd) {
  static const char* names[] = {"leaf", "introduce", "forget", "rule", "join"};
  std::ostringstream out;
  for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
    const auto& nd = ntd.nodes[i];
    out << i << ' ' << names[static_cast<int>(nd.kind)];
    if (nd.vertex >= 0) out << ' ' << nd.vertex;
    for (int c : nd.child)
      if (c >= 0) out << ' ' << c;
    out << " :";
    for (Vertex v : nd.bag) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

}  // namespace zf
