#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zf/vertex_set.hpp"

namespace zf {

/// Simple undirected graph on dense ids 0..n-1. Immutable once built.
///
/// Adjacency is kept both as sorted neighbour lists and, for graphs up to
/// kBitsetLimit vertices, as one bit row per vertex. Queries answer from
/// whichever representation is present; results are identical.
class Graph {
 public:
  static constexpr int kBitsetLimit = 4096;

  Graph() = default;
  /// Throws InvalidInput on self-loops or out-of-range ids; duplicates are merged.
  Graph(int n, const std::vector<std::pair<Vertex, Vertex>>& edges);

  int n() const { return static_cast<int>(adj_.size()); }
  std::size_t m() const { return m_; }

  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(static_cast<std::size_t>(v)); }
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
  bool adjacent(Vertex u, Vertex v) const;

  /// N(v) as a set; N[v] when closed.
  VertexSet neighborhood(Vertex v, bool closed = false) const;

  std::vector<std::pair<Vertex, Vertex>> edges() const;

  bool has_isolated_vertices() const;
  bool is_connected() const;

  void set_labels(std::vector<std::string> labels);
  bool has_labels() const { return !labels_.empty(); }
  /// Display name; the decimal id when no label was attached.
  std::string label(Vertex v) const;
  const std::vector<std::string>& labels() const { return labels_; }

  /// Induced neighbour mask for graphs with n <= 64.
  std::uint64_t mask(Vertex v) const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  void check(Vertex v) const;

  std::vector<std::vector<Vertex>> adj_;
  std::vector<VertexSet> rows_;
  std::vector<std::string> labels_;
  std::size_t m_ = 0;
};

/// Hypergraph over X = {0..x-1}; edges may repeat and keep their order.
struct Hypergraph {
  int num_vertices = 0;
  std::vector<std::vector<Vertex>> edges;

  /// Throws InvalidInput if any member is outside X.
  void validate() const;
};

/// Two-sided vertex partition.
struct Bipartition {
  std::vector<Vertex> a;
  std::vector<Vertex> b;

  /// A ∪ B = V, A ∩ B = ∅, and no edge inside either side.
  bool is_valid_for(const Graph& g) const;
};

/// Incremental builder used by generators and reductions.
class GraphBuilder {
 public:
  Vertex add_vertex(std::string label = {});
  void add_edge(Vertex u, Vertex v) { edges_.emplace_back(u, v); }
  int n() const { return static_cast<int>(labels_.size()); }
  Graph build() const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
};

namespace gen {
Graph path(int n);
Graph cycle(int n);
Graph complete(int n);
Graph star(int leaves);
Graph petersen();
/// Spine of length `spine` with `legs` pendant vertices on each spine vertex.
Graph caterpillar(int spine, int legs);
/// G(n,p) with an explicit seed.
Graph random_gnp(int n, double p, std::uint64_t seed);
/// Connected random graph: random spanning tree plus G(n,p) extras.
Graph random_connected(int n, double p, std::uint64_t seed);
/// Random bipartite graph without isolated vertices; sides 0..na-1 and na..na+nb-1.
std::pair<Graph, Bipartition> random_bipartite(int na, int nb, double p, std::uint64_t seed);
/// Random graph assembled from a random elimination order with bounded back-degree (tw <= width).
Graph random_partial_ktree(int n, int width, double keep, std::uint64_t seed);
}  // namespace gen

}  // namespace zf
