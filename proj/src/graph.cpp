#include "zf/graph.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "zf/errors.hpp"

namespace zf {

Graph::Graph(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  if (n < 0) throw InvalidInput("negative vertex count");
  adj_.assign(static_cast<std::size_t>(n), {});
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw InvalidInput("edge {" + std::to_string(u) + "," + std::to_string(v) + "} out of range");
    if (u == v) throw InvalidInput("self-loop at vertex " + std::to_string(u));
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& nb : adj_) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    m_ += nb.size();
  }
  m_ /= 2;
  if (n <= kBitsetLimit) {
    rows_.reserve(static_cast<std::size_t>(n));
    for (const auto& nb : adj_) rows_.push_back(VertexSet::from(static_cast<std::size_t>(n), nb));
  }
}

void Graph::check(Vertex v) const {
  if (v < 0 || v >= n()) throw InvalidInput("vertex " + std::to_string(v) + " out of range");
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  check(u);
  check(v);
  if (!rows_.empty()) return rows_[static_cast<std::size_t>(u)].contains(v);
  const auto& nb = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(nb.begin(), nb.end(), v);
}

VertexSet Graph::neighborhood(Vertex v, bool closed) const {
  check(v);
  VertexSet s = rows_.empty() ? VertexSet::from(static_cast<std::size_t>(n()), adj_[static_cast<std::size_t>(v)])
                              : rows_[static_cast<std::size_t>(v)];
  if (closed) s.insert(v);
  return s;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(m_);
  for (Vertex u = 0; u < n(); ++u)
    for (Vertex v : adj_[static_cast<std::size_t>(u)])
      if (u < v) out.emplace_back(u, v);
  return out;
}

bool Graph::has_isolated_vertices() const {
  return std::any_of(adj_.begin(), adj_.end(), [](const auto& nb) { return nb.empty(); });
}

bool Graph::is_connected() const {
  if (n() == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(n()), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : adj_[static_cast<std::size_t>(v)])
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == n();
}

void Graph::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && static_cast<int>(labels.size()) != n())
    throw InvalidInput("label count does not match vertex count");
  labels_ = std::move(labels);
}

std::string Graph::label(Vertex v) const {
  check(v);
  if (labels_.empty() || labels_[static_cast<std::size_t>(v)].empty()) return std::to_string(v);
  return labels_[static_cast<std::size_t>(v)];
}

std::uint64_t Graph::mask(Vertex v) const {
  if (n() > 64) throw ResourceExhausted("64-bit neighbour masks need n <= 64");
  std::uint64_t m = 0;
  for (Vertex w : neighbors(v)) m |= 1ULL << w;
  return m;
}

void Hypergraph::validate() const {
  if (num_vertices < 0) throw InvalidInput("negative hypergraph vertex count");
  for (const auto& e : edges)
    for (Vertex x : e)
      if (x < 0 || x >= num_vertices) throw InvalidInput("hyperedge member " + std::to_string(x) + " out of range");
}

bool Bipartition::is_valid_for(const Graph& g) const {
  std::vector<int> side(static_cast<std::size_t>(g.n()), -1);
  auto mark = [&](const std::vector<Vertex>& part, int s) {
    for (Vertex v : part) {
      if (v < 0 || v >= g.n() || side[static_cast<std::size_t>(v)] != -1) return false;
      side[static_cast<std::size_t>(v)] = s;
    }
    return true;
  };
  if (!mark(a, 0) || !mark(b, 1)) return false;
  if (std::find(side.begin(), side.end(), -1) != side.end()) return false;
  for (auto [u, v] : g.edges())
    if (side[static_cast<std::size_t>(u)] == side[static_cast<std::size_t>(v)]) return false;
  return true;
}

Vertex GraphBuilder::add_vertex(std::string label) {
  labels_.push_back(std::move(label));
  return static_cast<Vertex>(labels_.size() - 1);
}

Graph GraphBuilder::build() const {
  Graph g(n(), edges_);
  if (std::any_of(labels_.begin(), labels_.end(), [](const auto& s) { return !s.empty(); })) g.set_labels(labels_);
  return g;
}

namespace gen {

Graph path(int n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

Graph cycle(int n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, e);
}

Graph complete(int n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

Graph star(int leaves) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph(leaves + 1, e);
}

Graph petersen() {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph(10, e);
}

Graph caterpillar(int spine, int legs) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i + 1 < spine; ++i) e.emplace_back(i, i + 1);
  int next = spine;
  for (int i = 0; i < spine; ++i)
    for (int l = 0; l < legs; ++l) e.emplace_back(i, next++);
  return Graph(next, e);
}

Graph random_gnp(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) e.emplace_back(i, j);
  return Graph(n, e);
}

Graph random_connected(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    e.emplace_back(pick(rng), i);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) e.emplace_back(i, j);
  return Graph(n, e);
}

std::pair<Graph, Bipartition> random_bipartite(int na, int nb, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<Vertex, Vertex>> e;
  std::vector<int> deg(static_cast<std::size_t>(na + nb), 0);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      if (coin(rng)) {
        e.emplace_back(i, na + j);
        ++deg[static_cast<std::size_t>(i)];
        ++deg[static_cast<std::size_t>(na + j)];
      }
  // patch isolated vertices with one random edge to the other side
  for (int v = 0; v < na + nb; ++v) {
    if (deg[static_cast<std::size_t>(v)] > 0) continue;
    Vertex w = v < na ? na + std::uniform_int_distribution<int>(0, nb - 1)(rng)
                      : std::uniform_int_distribution<int>(0, na - 1)(rng);
    e.emplace_back(v, w);
    ++deg[static_cast<std::size_t>(v)];
    ++deg[static_cast<std::size_t>(w)];
  }
  Bipartition parts;
  for (int i = 0; i < na; ++i) parts.a.push_back(i);
  for (int j = 0; j < nb; ++j) parts.b.push_back(na + j);
  return {Graph(na + nb, e), parts};
}

Graph random_partial_ktree(int n, int width, double keep, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(keep);
  // vertex i attaches to a clique chosen among earlier bags
  std::vector<std::vector<Vertex>> bag(static_cast<std::size_t>(n));
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    Vertex parent = pick(rng);
    std::vector<Vertex> cand = bag[static_cast<std::size_t>(parent)];
    cand.push_back(parent);
    std::shuffle(cand.begin(), cand.end(), rng);
    if (static_cast<int>(cand.size()) > width) cand.resize(static_cast<std::size_t>(width));
    bool any = false;
    for (Vertex u : cand)
      if (coin(rng)) {
        e.emplace_back(u, i);
        any = true;
      }
    if (!any) e.emplace_back(parent, i);
    bag[static_cast<std::size_t>(i)] = cand;
  }
  return Graph(n, e);
}

}  // namespace gen
}  // namespace zf
