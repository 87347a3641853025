#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "zf/graph.hpp"

namespace zf {

enum class RuleKind : std::uint8_t { Z = 0, T = 1, D = 2 };

char rule_char(RuleKind k);

/// Non-empty subset of {Z, T, D}.
class RuleSet {
 public:
  RuleSet() = default;
  RuleSet(std::initializer_list<RuleKind> kinds);
  /// Accepts letters z/t/d in any case and order, e.g. "ztd" or "ZD".
  static RuleSet parse(std::string_view text);
  static RuleSet from_bits(unsigned bits);
  /// The seven non-empty subsets, in bit order.
  static std::vector<RuleSet> all();

  bool has(RuleKind k) const { return (bits_ >> static_cast<unsigned>(k)) & 1U; }
  unsigned bits() const { return bits_; }
  bool empty() const { return bits_ == 0; }
  /// Lower-case letters in Z,T,D order, e.g. "zd".
  std::string to_string() const;

  friend bool operator==(RuleSet, RuleSet) = default;

 private:
  unsigned bits_ = 0;
};

/// One step v -> w; for D the actor colours itself.
struct RuleApplication {
  RuleKind kind = RuleKind::Z;
  Vertex actor = 0;
  Vertex target = 0;

  friend bool operator==(const RuleApplication&, const RuleApplication&) = default;
};

using Trace = std::vector<RuleApplication>;

/// Legal applications at `blue`, sorted by actor id then Z < T < D.
std::vector<RuleApplication> applicable_rules(const Graph& g, const VertexSet& blue, RuleSet rs);

bool is_applicable(const Graph& g, const VertexSet& blue, const RuleApplication& r);

/// Throws InvalidInput when `r` is not legal at `blue`.
VertexSet apply_rule(const Graph& g, const VertexSet& blue, const RuleApplication& r);

struct ClosureResult {
  VertexSet blue;
  Trace trace;
};

/// Applies rules until none is legal, always picking the lowest actor id
/// (then Z < T < D). With T in `rs` this is one maximal order among many.
ClosureResult greedy_closure(const Graph& g, const VertexSet& start, RuleSet rs);

/// Replays `trace` from `start`; throws InvalidInput naming the first illegal step.
VertexSet replay(const Graph& g, const VertexSet& start, const Trace& trace);

struct ForcingVerdict {
  bool forcing = false;
  Trace trace;               // replayable witness when forcing
  VertexSet closure;         // largest blue set reached by the witness or by greedy when not forcing
  std::size_t explored = 0;  // blue sets visited by the order search
};

struct ForcingOptions {
  std::size_t visit_budget = std::size_t{1} << 22;
  /// Search all orders even where a single greedy closure already decides.
  bool exhaustive = false;
};

/// Decides whether `s` is an `rs`-forcing set.
///
/// Without T, and with Z present, the reachable family is upward closed under
/// rule steps, so one greedy closure decides. For {T} and {T,D} a memoised
/// search over blue sets runs; D steps are taken eagerly inside the search.
/// Throws ResourceExhausted past the visit budget.
ForcingVerdict is_forcing_set(const Graph& g, const VertexSet& s, RuleSet rs, const ForcingOptions& opt = {});

struct MinForcing {
  int k = 0;
  VertexSet set;
  Trace trace;
};

/// Minimum forcing set by a win table over all 2^n blue sets.
/// Throws ResourceExhausted when n exceeds `max_n` (hard limit 24).
MinForcing min_forcing_bruteforce(const Graph& g, RuleSet rs, int max_n = 20);

/// "<kind> <actor> <target>" per line, kind in {Z,T,D}, 0-based ids.
Trace parse_trace(std::string_view text);
std::string write_trace(const Trace& trace);
std::string to_string(const RuleApplication& r);

}  // namespace zf
