#pragma once

#include <cstddef>
#include <string>
#include <tuple>
#include <vector>

#include "zf/graph.hpp"
#include "zf/sequences.hpp"

namespace zf {

/// Multicolored clique input: classes[i][p] is the p-th vertex of colour i.
struct MccInstance {
  Graph graph;
  std::vector<std::vector<Vertex>> classes;

  int k() const { return static_cast<int>(classes.size()); }
  int q() const { return classes.empty() ? 0 : static_cast<int>(classes.front().size()); }
};

/// Throws InvalidInput unless the classes partition V into k >= 2 independent
/// sets of equal size.
void validate(const MccInstance& inst);

/// Brute force over all q^k transversals.
bool has_multicolored_clique(const MccInstance& inst);

/// Bipartite graph with sides A and B; asks for a total dominating sequence
/// of length `target` using only vertices of A.
struct OsgtdInstance {
  Graph graph;
  Bipartition sides;
  int target = 0;
};

/// Throws InvalidInput on a bad bipartition or isolated vertices.
void validate(const OsgtdInstance& inst);

/// Vertex ids of every gadget of the clique reduction, 0-based indices.
struct MccGadgets {
  int alpha = 0, beta = 0;
  /// selection[i][p][a]
  std::vector<std::vector<std::vector<Vertex>>> selection;
  /// y[i][a]
  std::vector<std::vector<Vertex>> y;

  struct Verification {
    int i = 0, j = 0, b = 0;  // i < j
    Vertex c = -1;
    /// (p, r, vertex) for every edge between classes[i][p] and classes[j][r]
    std::vector<std::tuple<int, int, Vertex>> edge_vertices;
  };
  std::vector<Verification> verification;
  Vertex f = -1, g = -1;
};

struct MccReduction {
  OsgtdInstance instance;
  MccGadgets gadgets;
};

/// alpha = beta = 2k+1, target = alpha*k + beta*C(k,2) + 1. Side A holds the
/// selection and verification vertices and f.
MccReduction mcc_to_osgtd(const MccInstance& inst);

/// Structural self-check of a clique reduction; one message per violation.
std::vector<std::string> audit_mcc_reduction(const MccInstance& inst, const MccReduction& red);

/// Vertex count the clique reduction must produce.
std::size_t mcc_reduction_size(const MccInstance& inst);

/// X = B, one edge N(v) per v in A (in the order of sides.a).
Hypergraph osgtd_to_hypergraph(const OsgtdInstance& inst);

/// Longest total dominating sequence of A, via the covering hypergraph.
/// Throws ResourceExhausted when |B| > 64 or the search budget runs out.
SequenceMax max_one_sided(const OsgtdInstance& inst, std::size_t budget = std::size_t{1} << 24);

/// Whether A has a total dominating sequence of length >= target.
bool one_sided_at_least(const OsgtdInstance& inst, int target, std::size_t budget = std::size_t{1} << 24);

/// Instance whose one-sided maximum equals the source's GD / TGD / L maximum.
/// Throws InvalidInput on isolated vertices.
OsgtdInstance gd_to_osgtd(const Graph& g, int k);
OsgtdInstance tgd_to_osgtd(const Graph& g, int k);
OsgtdInstance lgd_to_osgtd(const Graph& g, int k);

struct TargetInstance {
  Graph graph;
  int k = 0;
};

/// Co-bipartite lift for GD, Z, TGD or L. GD and Z cliqueify both sides
/// (k' = k); TGD and L first add two fresh vertices per side (k' = k + 4).
/// Throws InvalidInput for LocalL, an invalid instance, or k = 0 with TGD/L.
TargetInstance osgtd_to_cobipartite(const OsgtdInstance& inst, SequenceVariant target);

/// Appends a pendant leaf to every vertex; leaf of v is n + v.
Graph corona_with_leaves(const Graph& g);

}  // namespace zf
