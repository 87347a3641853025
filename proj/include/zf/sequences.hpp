#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zf/graph.hpp"
#include "zf/rules.hpp"

namespace zf {

/// Footprint regimes. Target bracket / blocker bracket:
/// GD closed/closed, TGD open/open, Z open/closed, L closed/open,
/// LocalL closed/open with footprints restricted to the listed prefix.
enum class SequenceVariant { GD, TGD, Z, L, LocalL };

SequenceVariant parse_variant(std::string_view text);
std::string to_string(SequenceVariant var);
bool target_closed(SequenceVariant var);
bool blocker_closed(SequenceVariant var);

/// Rule set whose minimum forcing set is dual to the variant's maximum length.
RuleSet dual_rules(SequenceVariant var);

using VertexSequence = std::vector<Vertex>;

struct SequenceCheck {
  bool valid = false;
  /// 0-based index of the first position with an empty footprint; -1 when valid.
  int failed_at = -1;
  /// Footprint of every checked position (the failing one included, empty).
  std::vector<VertexSet> footprints;
};

/// Throws InvalidInput on isolated vertices, duplicates or bad ids.
SequenceCheck verify_sequence(const Graph& g, const VertexSequence& seq, SequenceVariant var);

struct SequenceMax {
  int length = 0;
  VertexSequence sequence;
};

/// Longest sequence by memoised search; members drawn from `restrict_to` when given.
/// Throws ResourceExhausted when n > max_n (max_n <= 64).
SequenceMax max_sequence_bruteforce(const Graph& g, SequenceVariant var,
                                    const std::optional<std::vector<Vertex>>& restrict_to = std::nullopt,
                                    int max_n = 16);

struct CoveringCheck {
  bool valid = false;
  int failed_at = -1;
  /// Elements newly covered at each checked position.
  std::vector<std::vector<Vertex>> fresh;
};

/// Throws InvalidInput on indices outside the edge list.
CoveringCheck verify_covering_sequence(const Hypergraph& h, const std::vector<int>& idx);

struct CoveringMax {
  int length = 0;
  std::vector<int> sequence;
};

/// Longest covering sequence, memoised on the covered set; |X| <= 64.
/// Throws ResourceExhausted when the memo exceeds `budget` states.
CoveringMax max_covering_bruteforce(const Hypergraph& h, std::size_t budget = std::size_t{1} << 24);

/// Whether a covering sequence of length >= target exists. Cheaper than the
/// maximum when target == |E| (a single peeling pass decides it).
bool covering_at_least(const Hypergraph& h, int target, std::size_t budget = std::size_t{1} << 24);

struct ForcingFromSequence {
  VertexSet set;
  Trace trace;
};

/// S = V minus the sequence; rules in reverse sequence order. Each position's
/// witness is the vertex itself when footprinted (a D step), otherwise the
/// lowest footprinted id (T when it appears earlier in the sequence, else Z).
/// Throws InvalidInput if the sequence does not verify.
ForcingFromSequence sequence_to_forcing(const Graph& g, const VertexSequence& seq, SequenceVariant var);

/// Targets of a full trace in reverse order. Throws InvalidInput when the
/// trace does not colour the whole graph under the variant's rule set, or on
/// isolated vertices.
VertexSequence forcing_trace_to_sequence(const Graph& g, const VertexSet& s, const Trace& trace,
                                         SequenceVariant var);

}  // namespace zf
