#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zf/graph.hpp"
#include "zf/rules.hpp"
#include "zf/treedec.hpp"

namespace zf::dp {

/// Largest bag the signature encoding supports (two events per vertex, 32-bit rows).
inline constexpr int kMaxBag = 16;

/// Colouring role of a bag vertex: how it turns blue (Γ) or what it applies (Φ).
enum class Tag : std::uint8_t { Bot = 0, Z = 1, T = 2, D = 3 };

char tag_char(Tag t);

inline int gamma_event(int pos) { return 2 * pos; }
inline int phi_event(int pos) { return 2 * pos + 1; }

/// Event digraph over a bag: event 2i is "bag[i] turns blue", 2i+1 is
/// "bag[i] applies its rule". rows[e] holds the successors of e.
struct DepGraph {
  std::vector<Vertex> bag;
  std::vector<std::uint32_t> rows;

  explicit DepGraph(std::vector<Vertex> bag_ = {});
  void add_arc(int from, int to) { rows[static_cast<std::size_t>(from)] |= 1U << to; }
  bool has_arc(int from, int to) const { return (rows[static_cast<std::size_t>(from)] >> to) & 1U; }
  bool acyclic() const;
  /// Reflexive-free transitive closure.
  DepGraph closure() const;
};

/// Adds the transitive closure of the subgraph induced by v's events and their
/// in/out neighbours, then deletes v's events (v leaves the bag).
DepGraph bypass(const DepGraph& dep, Vertex v);

/// Decoded table entry.
struct Signature {
  std::vector<Vertex> bag;
  std::vector<Tag> gamma, phi;
  std::vector<bool> b_gamma, b_phi;
  DepGraph dep;
  int weight = 0;

  int position(Vertex v) const;
};

struct Provenance {
  std::int32_t child[2] = {-1, -1};
  Vertex f = -1;  // colourer chosen at a rule node
  Vertex g = -1;  // vertex coloured by the ruled vertex
};

struct DpOptions {
  /// Keep every dependency graph transitively closed (merges equivalent states).
  bool normalize_closure = true;
  /// Keep one entry per key. Off only for small cross-checks.
  bool dedup = true;
  std::size_t max_table = std::size_t{1} << 24;
  std::size_t max_total = std::size_t{1} << 24;
  /// Discard entries dominated by one with a subset of the dependency arcs.
  /// Usually costs more than it saves.
  bool prune_dominated = false;
  /// Drop entries whose weight plus undecided solution vertices exceeds this.
  std::optional<int> weight_cap;
  /// Without T every colouring chain starts in the set and ends at a vertex
  /// that applies nothing, so the chain ends also bound the weight under the
  /// cap. solve() clears this for rule sets containing T.
  bool chain_end_bound = true;
  /// Retain child tables for witness reconstruction.
  bool keep_tables = true;
};

class SignatureTable {
 public:
  explicit SignatureTable(std::vector<Vertex> bag = {});

  const std::vector<Vertex>& bag() const { return bag_; }
  std::size_t size() const { return weights_.size(); }
  int words() const { return words_; }
  int weight(std::size_t i) const { return weights_[i]; }
  const Provenance& provenance(std::size_t i) const { return prov_[i]; }
  /// Forgotten vertices that apply no rule, carried along for the cap bound.
  int chain_ends(std::size_t i) const { return ends_[i]; }
  Signature get(std::size_t i) const;
  const std::uint64_t* key(std::size_t i) const { return keys_.data() + i * static_cast<std::size_t>(words_); }

  /// Inserts or improves the entry with the same (Γ, Φ, flags, dep) key.
  /// Returns false when an entry with smaller or equal weight already exists.
  bool insert(const Signature& s, const Provenance& p, bool dedup = true);

  /// Index of the entry with the key of `s`, or -1.
  long find(const Signature& s) const;

  void release();

 private:
  friend struct TableAccess;
  friend SignatureTable drop_dominated(const SignatureTable& t);
  std::size_t hash_key(const std::uint64_t* k) const;
  bool insert_packed(const std::uint64_t* k, int weight, int ends, const Provenance& p, bool dedup);
  void grow();

  std::vector<Vertex> bag_;
  int words_ = 1;
  std::vector<std::uint64_t> keys_;
  std::vector<std::int32_t> weights_;
  std::vector<std::int32_t> ends_;
  std::vector<Provenance> prov_;
  std::vector<std::int32_t> slots_;
};

/// Removes every entry whose dependency arcs contain those of another entry
/// with equal tags and flags and no larger weight. Such an entry can never
/// complete where the smaller one cannot.
SignatureTable drop_dominated(const SignatureTable& t);

SignatureTable process_leaf();
SignatureTable process_introduce(const SignatureTable& child, Vertex v, RuleSet rs, const DpOptions& opt = {});
SignatureTable process_rule(const SignatureTable& child, Vertex v, const Graph& g, const DpOptions& opt = {});
SignatureTable process_forget(const SignatureTable& child, Vertex v, const DpOptions& opt = {});
SignatureTable process_join(const SignatureTable& left, const SignatureTable& right, const DpOptions& opt = {});

struct DpResult {
  /// False when the weight cap excluded every root signature.
  bool found = false;
  int k = -1;
  VertexSet set;
  Trace trace;
  std::size_t total_signatures = 0;
  std::size_t largest_table = 0;
};

/// Minimum rs-forcing set over a nice decomposition, with a replayable witness.
/// Throws InvalidInput on a malformed decomposition, ResourceExhausted on a
/// bag above kMaxBag or past the table budgets.
DpResult solve(const Graph& g, const NiceTD& ntd, RuleSet rs, const DpOptions& opt = {});

/// Convenience: exact decomposition for n <= 12, min-fill otherwise.
DpResult solve(const Graph& g, RuleSet rs, const DpOptions& opt = {});

struct SizeDecision {
  bool yes = false;
  /// NO came from the treewidth test alone.
  bool treewidth_exceeded = false;
  int tw = -1;
  DpResult result;
};

/// Decides whether a forcing set of size <= k exists for rs = {Z} or {Z,D}.
/// Such a set bounds the pathwidth, hence the treewidth, by k; so a
/// treewidth above k answers NO outright. Throws InvalidInput for other rule sets.
SizeDecision solve_by_solution_size(const Graph& g, int k, RuleSet rs, const DpOptions& opt = {});

}  // namespace zf::dp
