#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zf/graph.hpp"

namespace zf {

/// Bags over vertex ids plus tree edges between bag indices.
struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;
  std::vector<std::pair<int, int>> edges;

  /// Largest bag size minus one; -1 without bags.
  int width() const;
};

struct TdViolation {
  /// 0: not a tree, 1: vertex uncovered, 2: edge uncovered, 3: bags of a vertex disconnected.
  int condition = 0;
  Vertex vertex = -1;
  std::pair<Vertex, Vertex> edge{-1, -1};
  std::string message;
};

struct TdCheck {
  bool valid = false;
  int width = -1;
  std::optional<TdViolation> violation;
};

/// Checks the three decomposition conditions, reporting the first violation.
TdCheck validate_td(const Graph& g, const TreeDecomposition& td);

enum class EliminationHeuristic { MinDegree, MinFill };

/// Decomposition induced by eliminating vertices in `order` (a permutation of V).
TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<Vertex>& order);

/// Greedy elimination; ties broken by lowest id.
std::vector<Vertex> elimination_order(const Graph& g, EliminationHeuristic h);
TreeDecomposition heuristic_decomposition(const Graph& g, EliminationHeuristic h);

struct ExactTreewidth {
  /// False only when an upper bound was given and the treewidth exceeds it.
  bool within_bound = true;
  int tw = -1;
  TreeDecomposition td;
};

/// Exact treewidth by a subset DP over elimination prefixes (n <= max_n, at most 25).
/// With `upper_bound` k, decides tw <= k; for n > max_n a branch-and-bound
/// over elimination orders is used, limited by `node_budget`.
/// Throws ResourceExhausted on guard or budget violation.
ExactTreewidth exact_treewidth(const Graph& g, std::optional<int> upper_bound = std::nullopt, int max_n = 20,
                               std::size_t node_budget = std::size_t{1} << 22);

enum class NiceKind { Leaf, Introduce, Forget, Rule, Join };

struct NiceNode {
  NiceKind kind = NiceKind::Leaf;
  Vertex vertex = -1;          // introduced / forgotten / ruled vertex
  std::vector<Vertex> bag;     // sorted
  int child[2] = {-1, -1};
  int parent = -1;
};

/// Rooted binary decomposition with five node types. Nodes are stored so
/// every child precedes its parent; the root is the last node.
struct NiceTD {
  std::vector<NiceNode> nodes;

  int root() const { return static_cast<int>(nodes.size()) - 1; }
  int width() const;
};

/// Throws InvalidInput if `td` is not a valid decomposition of `g`.
NiceTD make_nice(const Graph& g, const TreeDecomposition& td);

/// Structural check of every nice-form invariant; empty when all hold.
std::optional<std::string> check_nice(const Graph& g, const NiceTD& ntd);

/// PACE .td text: "s td <bags> <width+1> <n>", "b <i> <v...>", tree edges; 1-based.
TreeDecomposition parse_td(std::string_view text);
std::string write_td(const TreeDecomposition& td, int n);

/// One node per line: "<id> <kind> [<vertex>] [children...] : <bag>", 0-based.
std::string write_nice(const NiceTD& ntd);

}  // namespace zf
