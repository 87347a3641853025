#include "zf/sequences.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <unordered_map>

#include "zf/errors.hpp"

namespace zf {

SequenceVariant parse_variant(std::string_view text) {
  std::string t;
  for (char c : text) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "gd") return SequenceVariant::GD;
  if (t == "tgd") return SequenceVariant::TGD;
  if (t == "z" || t == "zseq") return SequenceVariant::Z;
  if (t == "l" || t == "lseq" || t == "lgd") return SequenceVariant::L;
  if (t == "locall" || t == "local-l") return SequenceVariant::LocalL;
  throw ParseError("unknown sequence variant '" + std::string(text) + "'");
}

std::string to_string(SequenceVariant var) {
  switch (var) {
    case SequenceVariant::GD: return "gd";
    case SequenceVariant::TGD: return "tgd";
    case SequenceVariant::Z: return "z";
    case SequenceVariant::L: return "l";
    case SequenceVariant::LocalL: return "locall";
  }
  return "?";
}

bool target_closed(SequenceVariant var) {
  return var == SequenceVariant::GD || var == SequenceVariant::L || var == SequenceVariant::LocalL;
}

bool blocker_closed(SequenceVariant var) { return var == SequenceVariant::GD || var == SequenceVariant::Z; }

RuleSet dual_rules(SequenceVariant var) {
  switch (var) {
    case SequenceVariant::Z: return {RuleKind::Z};
    case SequenceVariant::GD: return {RuleKind::Z, RuleKind::D};
    case SequenceVariant::TGD: return {RuleKind::Z, RuleKind::T};
    case SequenceVariant::L: return {RuleKind::Z, RuleKind::T, RuleKind::D};
    case SequenceVariant::LocalL: return {RuleKind::T, RuleKind::D};
  }
  return {};
}

namespace {

void require_no_isolated(const Graph& g) {
  if (g.has_isolated_vertices()) throw InvalidInput("graph has isolated vertices");
}

void require_distinct(const Graph& g, const VertexSequence& seq) {
  std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
  for (Vertex v : seq) {
    if (v < 0 || v >= g.n()) throw InvalidInput("sequence vertex " + std::to_string(v) + " out of range");
    if (seen[static_cast<std::size_t>(v)]++) throw InvalidInput("vertex " + std::to_string(v) + " repeats in sequence");
  }
}

}  // namespace

SequenceCheck verify_sequence(const Graph& g, const VertexSequence& seq, SequenceVariant var) {
  require_no_isolated(g);
  require_distinct(g, seq);
  const auto n = static_cast<std::size_t>(g.n());
  SequenceCheck out;
  VertexSet blocked(n), prefix(n);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    Vertex v = seq[i];
    prefix.insert(v);
    VertexSet fp = g.neighborhood(v, target_closed(var)) - blocked;
    if (var == SequenceVariant::LocalL) fp &= prefix;
    out.footprints.push_back(fp);
    if (fp.empty()) {
      out.failed_at = static_cast<int>(i);
      return out;
    }
    blocked |= g.neighborhood(v, blocker_closed(var));
  }
  out.valid = true;
  return out;
}

namespace {

class SequenceSearch {
 public:
  SequenceSearch(const Graph& g, SequenceVariant var, std::uint64_t allowed) : var_(var), allowed_(allowed) {
    for (Vertex v = 0; v < g.n(); ++v) {
      std::uint64_t open = g.mask(v), closed = open | (1ULL << v);
      target_.push_back(target_closed(var) ? closed : open);
      blocker_.push_back(blocker_closed(var) ? closed : open);
    }
  }

  int best(std::uint64_t blocked, std::uint64_t used) {
    auto key = state(blocked, used);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    int result = 0;
    for (int v = 0; v < static_cast<int>(target_.size()); ++v) {
      if (!footprints(v, blocked, used)) continue;
      result = std::max(result, 1 + best(blocked | blocker_[static_cast<std::size_t>(v)], used | (1ULL << v)));
    }
    memo_.emplace(key, result);
    return result;
  }

  VertexSequence witness(std::uint64_t blocked, std::uint64_t used) {
    VertexSequence seq;
    int remaining = best(blocked, used);
    while (remaining > 0) {
      for (int v = 0; v < static_cast<int>(target_.size()); ++v) {
        if (!footprints(v, blocked, used)) continue;
        std::uint64_t nb = blocked | blocker_[static_cast<std::size_t>(v)], nu = used | (1ULL << v);
        if (1 + best(nb, nu) == remaining) {
          seq.push_back(v);
          blocked = nb;
          used = nu;
          --remaining;
          break;
        }
      }
    }
    return seq;
  }

 private:
  bool footprints(int v, std::uint64_t blocked, std::uint64_t used) const {
    std::uint64_t bit = 1ULL << v;
    if (!(allowed_ & bit) || (used & bit)) return false;
    std::uint64_t fp = target_[static_cast<std::size_t>(v)] & ~blocked;
    if (var_ == SequenceVariant::LocalL) fp &= used | bit;
    return fp != 0;
  }

  // Only the part of `used` that can still influence the future enters the key.
  std::pair<std::uint64_t, std::uint64_t> state(std::uint64_t blocked, std::uint64_t used) const {
    switch (var_) {
      case SequenceVariant::LocalL: return {blocked, used};
      case SequenceVariant::L: return {blocked, used & ~blocked};
      default: return {blocked, 0};
    }
  }

  struct PairHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const noexcept {
      return std::hash<std::uint64_t>{}(p.first * 0x9e3779b97f4a7c15ULL ^ p.second);
    }
  };

  SequenceVariant var_;
  std::uint64_t allowed_;
  std::vector<std::uint64_t> target_, blocker_;
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, int, PairHash> memo_;
};

}  // namespace

SequenceMax max_sequence_bruteforce(const Graph& g, SequenceVariant var,
                                    const std::optional<std::vector<Vertex>>& restrict_to, int max_n) {
  if (g.n() > std::min(max_n, 64))
    throw ResourceExhausted("sequence brute force limited to n <= " + std::to_string(std::min(max_n, 64)));
  require_no_isolated(g);
  std::uint64_t allowed = g.n() == 64 ? ~0ULL : ((1ULL << g.n()) - 1);
  if (restrict_to) {
    allowed = 0;
    for (Vertex v : *restrict_to) {
      if (v < 0 || v >= g.n()) throw InvalidInput("restriction vertex out of range");
      allowed |= 1ULL << v;
    }
  }
  SequenceSearch search(g, var, allowed);
  SequenceMax out;
  out.length = search.best(0, 0);
  out.sequence = search.witness(0, 0);
  return out;
}

CoveringCheck verify_covering_sequence(const Hypergraph& h, const std::vector<int>& idx) {
  h.validate();
  CoveringCheck out;
  std::vector<char> covered(static_cast<std::size_t>(h.num_vertices), 0);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= static_cast<int>(h.edges.size()))
      throw InvalidInput("edge index " + std::to_string(idx[i]) + " out of range");
    std::vector<Vertex> fresh;
    for (Vertex x : h.edges[static_cast<std::size_t>(idx[i])])
      if (!covered[static_cast<std::size_t>(x)] &&
          std::find(fresh.begin(), fresh.end(), x) == fresh.end())
        fresh.push_back(x);
    std::sort(fresh.begin(), fresh.end());
    out.fresh.push_back(fresh);
    if (fresh.empty()) {
      out.failed_at = static_cast<int>(i);
      return out;
    }
    for (Vertex x : fresh) covered[static_cast<std::size_t>(x)] = 1;
  }
  out.valid = true;
  return out;
}

namespace {

std::vector<std::uint64_t> edge_masks(const Hypergraph& h) {
  h.validate();
  if (h.num_vertices > 64) throw ResourceExhausted("covering brute force limited to |X| <= 64");
  std::vector<std::uint64_t> masks;
  for (const auto& e : h.edges) {
    std::uint64_t m = 0;
    for (Vertex x : e) m |= 1ULL << x;
    masks.push_back(m);
  }
  return masks;
}

class CoveringSearch {
 public:
  CoveringSearch(std::vector<std::uint64_t> masks, std::size_t budget) : masks_(std::move(masks)), budget_(budget) {}

  int best(std::uint64_t covered) {
    if (auto it = memo_.find(covered); it != memo_.end()) return it->second;
    if (memo_.size() >= budget_) throw ResourceExhausted("covering search exceeded its state budget");
    int result = 0;
    for (auto m : masks_)
      if (m & ~covered) result = std::max(result, 1 + best(covered | m));
    memo_.emplace(covered, result);
    return result;
  }

  std::vector<int> witness() {
    std::vector<int> seq;
    std::uint64_t covered = 0;
    int remaining = best(0);
    while (remaining > 0)
      for (std::size_t e = 0; e < masks_.size(); ++e)
        if ((masks_[e] & ~covered) && 1 + best(covered | masks_[e]) == remaining) {
          seq.push_back(static_cast<int>(e));
          covered |= masks_[e];
          --remaining;
          break;
        }
    return seq;
  }

 private:
  std::vector<std::uint64_t> masks_;
  std::size_t budget_;
  std::unordered_map<std::uint64_t, int> memo_;
};

}  // namespace

CoveringMax max_covering_bruteforce(const Hypergraph& h, std::size_t budget) {
  CoveringSearch search(edge_masks(h), budget);
  CoveringMax out;
  out.length = search.best(0);
  out.sequence = search.witness();
  return out;
}

bool covering_at_least(const Hypergraph& h, int target, std::size_t budget) {
  auto masks = edge_masks(h);
  const int m = static_cast<int>(masks.size());
  if (target <= 0) return true;
  if (target > m) return false;
  if (target == m) {
    // All edges usable iff edges can be peeled one by one, each owning an
    // element no other remaining edge has; the reverse peel order is the sequence.
    std::vector<char> alive(masks.size(), 1);
    for (int left = m; left > 0; --left) {
      int peeled = -1;
      for (int e = 0; e < m && peeled < 0; ++e) {
        if (!alive[static_cast<std::size_t>(e)]) continue;
        std::uint64_t others = 0;
        for (int f = 0; f < m; ++f)
          if (f != e && alive[static_cast<std::size_t>(f)]) others |= masks[static_cast<std::size_t>(f)];
        if (masks[static_cast<std::size_t>(e)] & ~others) peeled = e;
      }
      if (peeled < 0) return false;
      alive[static_cast<std::size_t>(peeled)] = 0;
    }
    return true;
  }
  return CoveringSearch(std::move(masks), budget).best(0) >= target;
}

ForcingFromSequence sequence_to_forcing(const Graph& g, const VertexSequence& seq, SequenceVariant var) {
  auto check = verify_sequence(g, seq, var);
  if (!check.valid)
    throw InvalidInput("sequence fails at position " + std::to_string(check.failed_at + 1));
  const auto n = static_cast<std::size_t>(g.n());
  ForcingFromSequence out;
  out.set = VertexSet::full(n);
  for (Vertex v : seq) out.set.erase(v);
  std::vector<int> pos(n, -1);
  for (std::size_t i = 0; i < seq.size(); ++i) pos[static_cast<std::size_t>(seq[i])] = static_cast<int>(i);
  for (std::size_t i = seq.size(); i-- > 0;) {
    Vertex v = seq[i];
    const VertexSet& fp = check.footprints[i];
    Vertex u = fp.contains(v) ? v : fp.first();
    RuleKind kind;
    if (u == v) kind = RuleKind::D;
    else if (pos[static_cast<std::size_t>(u)] >= 0 && pos[static_cast<std::size_t>(u)] < static_cast<int>(i))
      kind = RuleKind::T;
    else kind = RuleKind::Z;
    out.trace.push_back({kind, u, v});
  }
  return out;
}

VertexSequence forcing_trace_to_sequence(const Graph& g, const VertexSet& s, const Trace& trace,
                                         SequenceVariant var) {
  require_no_isolated(g);
  RuleSet rs = dual_rules(var);
  for (const auto& r : trace)
    if (!rs.has(r.kind))
      throw InvalidInput("rule " + to_string(r) + " is outside the rule set of variant " + to_string(var));
  VertexSet blue = replay(g, s, trace);
  if (blue.size() != static_cast<std::size_t>(g.n())) throw InvalidInput("trace does not colour every vertex");
  VertexSequence seq;
  for (auto it = trace.rbegin(); it != trace.rend(); ++it) seq.push_back(it->target);
  return seq;
}

}  // namespace zf
