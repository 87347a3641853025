#include "zf/rules.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "zf/errors.hpp"

namespace zf {

char rule_char(RuleKind k) {
  switch (k) {
    case RuleKind::Z: return 'Z';
    case RuleKind::T: return 'T';
    case RuleKind::D: return 'D';
  }
  return '?';
}

RuleSet::RuleSet(std::initializer_list<RuleKind> kinds) {
  for (auto k : kinds) bits_ |= 1U << static_cast<unsigned>(k);
}

RuleSet RuleSet::parse(std::string_view text) {
  RuleSet rs;
  for (char c : text) {
    switch (std::tolower(static_cast<unsigned char>(c))) {
      case 'z': rs.bits_ |= 1U; break;
      case 't': rs.bits_ |= 2U; break;
      case 'd': rs.bits_ |= 4U; break;
      case ',': case ' ': break;
      default: throw ParseError(std::string("unknown rule letter '") + c + "'");
    }
  }
  if (rs.empty()) throw ParseError("rule set must not be empty");
  return rs;
}

RuleSet RuleSet::from_bits(unsigned bits) {
  if (bits == 0 || bits > 7) throw InvalidInput("rule-set bits must be in 1..7");
  RuleSet rs;
  rs.bits_ = bits;
  return rs;
}

std::vector<RuleSet> RuleSet::all() {
  std::vector<RuleSet> out;
  for (unsigned b = 1; b <= 7; ++b) out.push_back(from_bits(b));
  return out;
}

std::string RuleSet::to_string() const {
  std::string s;
  if (has(RuleKind::Z)) s += 'z';
  if (has(RuleKind::T)) s += 't';
  if (has(RuleKind::D)) s += 'd';
  return s;
}

namespace {

// Single white neighbour of v, -1 if none, -2 if several.
Vertex sole_white_neighbor(const Graph& g, const VertexSet& blue, Vertex v) {
  Vertex found = -1;
  for (Vertex w : g.neighbors(v)) {
    if (blue.contains(w)) continue;
    if (found != -1) return -2;
    found = w;
  }
  return found;
}

// Incremental colouring state with per-vertex white-neighbour counters.
class Tracker {
 public:
  Tracker(const Graph& g, const VertexSet& start) : g_(g), blue_(start), white_(static_cast<std::size_t>(g.n()), 0) {
    if (start.universe() != static_cast<std::size_t>(g.n()))
      throw InvalidInput("start set universe does not match the graph");
    for (Vertex v = 0; v < g.n(); ++v)
      for (Vertex w : g.neighbors(v))
        if (!blue_.contains(w)) ++white_[static_cast<std::size_t>(v)];
  }

  bool blue(Vertex v) const { return blue_.contains(v); }
  int white_count(Vertex v) const { return white_[static_cast<std::size_t>(v)]; }
  const VertexSet& set() const { return blue_; }

  Vertex white_neighbor(Vertex v) const {
    for (Vertex w : g_.neighbors(v))
      if (!blue_.contains(w)) return w;
    return -1;
  }

  bool legal(const RuleApplication& r) const {
    if (r.actor < 0 || r.actor >= g_.n() || r.target < 0 || r.target >= g_.n()) return false;
    switch (r.kind) {
      case RuleKind::Z:
        return blue(r.actor) && !blue(r.target) && white_count(r.actor) == 1 && g_.adjacent(r.actor, r.target);
      case RuleKind::T:
        return !blue(r.actor) && !blue(r.target) && r.actor != r.target && white_count(r.actor) == 1 &&
               g_.adjacent(r.actor, r.target);
      case RuleKind::D:
        return r.actor == r.target && !blue(r.actor) && white_count(r.actor) == 0;
    }
    return false;
  }

  void color(Vertex v) {
    blue_.insert(v);
    for (Vertex w : g_.neighbors(v)) --white_[static_cast<std::size_t>(w)];
  }

 private:
  const Graph& g_;
  VertexSet blue_;
  std::vector<int> white_;
};

// First legal application with the given actor in Z < T < D order.
bool first_rule_for(const Tracker& tr, Vertex v, RuleSet rs, RuleApplication& out) {
  int wc = tr.white_count(v);
  if (tr.blue(v)) {
    if (rs.has(RuleKind::Z) && wc == 1) {
      out = {RuleKind::Z, v, tr.white_neighbor(v)};
      return true;
    }
    return false;
  }
  if (rs.has(RuleKind::T) && wc == 1) {
    out = {RuleKind::T, v, tr.white_neighbor(v)};
    return true;
  }
  if (rs.has(RuleKind::D) && wc == 0) {
    out = {RuleKind::D, v, v};
    return true;
  }
  return false;
}

}  // namespace

std::vector<RuleApplication> applicable_rules(const Graph& g, const VertexSet& blue, RuleSet rs) {
  std::vector<RuleApplication> out;
  for (Vertex v = 0; v < g.n(); ++v) {
    Vertex w = sole_white_neighbor(g, blue, v);
    if (blue.contains(v)) {
      if (rs.has(RuleKind::Z) && w >= 0) out.push_back({RuleKind::Z, v, w});
    } else {
      if (rs.has(RuleKind::T) && w >= 0) out.push_back({RuleKind::T, v, w});
      if (rs.has(RuleKind::D) && w == -1) out.push_back({RuleKind::D, v, v});
    }
  }
  return out;
}

bool is_applicable(const Graph& g, const VertexSet& blue, const RuleApplication& r) {
  if (r.actor < 0 || r.actor >= g.n() || r.target < 0 || r.target >= g.n()) return false;
  Vertex w = sole_white_neighbor(g, blue, r.actor);
  switch (r.kind) {
    case RuleKind::Z: return blue.contains(r.actor) && w == r.target;
    case RuleKind::T: return !blue.contains(r.actor) && w == r.target;
    case RuleKind::D: return r.actor == r.target && !blue.contains(r.actor) && w == -1;
  }
  return false;
}

VertexSet apply_rule(const Graph& g, const VertexSet& blue, const RuleApplication& r) {
  if (!is_applicable(g, blue, r)) throw InvalidInput("rule " + to_string(r) + " is not applicable");
  VertexSet out = blue;
  out.insert(r.target);
  return out;
}

ClosureResult greedy_closure(const Graph& g, const VertexSet& start, RuleSet rs) {
  Tracker tr(g, start);
  ClosureResult res;
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> candidates;
  for (Vertex v = 0; v < g.n(); ++v) candidates.push(v);
  while (!candidates.empty()) {
    Vertex v = candidates.top();
    candidates.pop();
    RuleApplication r;
    if (!first_rule_for(tr, v, rs, r)) continue;
    tr.color(r.target);
    res.trace.push_back(r);
    // the actor and every vertex next to the new blue vertex may have changed
    candidates.push(r.target);
    for (Vertex w : g.neighbors(r.target)) candidates.push(w);
    if (r.actor != r.target) candidates.push(r.actor);
  }
  res.blue = tr.set();
  return res;
}

VertexSet replay(const Graph& g, const VertexSet& start, const Trace& trace) {
  Tracker tr(g, start);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!tr.legal(trace[i]))
      throw InvalidInput("step " + std::to_string(i + 1) + " (" + to_string(trace[i]) + ") is not applicable");
    tr.color(trace[i].target);
  }
  return tr.set();
}

namespace {

class OrderSearch {
 public:
  OrderSearch(const Graph& g, RuleSet rs, std::size_t budget) : g_(g), rs_(rs), budget_(budget) {}

  bool run(const VertexSet& start, Trace& out) { return dfs(start, out); }
  std::size_t explored() const { return visited_.size(); }

 private:
  bool dfs(VertexSet blue, Trace& trace) {
    std::size_t mark = trace.size();
    // D steps never hurt: take them all before branching
    if (rs_.has(RuleKind::D)) {
      bool changed = true;
      while (changed) {
        changed = false;
        for (Vertex v = 0; v < g_.n(); ++v)
          if (!blue.contains(v) && sole_white_neighbor(g_, blue, v) == -1) {
            blue.insert(v);
            trace.push_back({RuleKind::D, v, v});
            changed = true;
          }
      }
    }
    if (blue.size() == static_cast<std::size_t>(g_.n())) return true;
    if (!visited_.insert(blue).second) {
      trace.resize(mark);
      return false;
    }
    if (visited_.size() > budget_) throw ResourceExhausted("forcing search exceeded its visit budget");
    for (const auto& r : applicable_rules(g_, blue, rs_)) {
      VertexSet next = blue;
      next.insert(r.target);
      trace.push_back(r);
      if (dfs(std::move(next), trace)) return true;
      trace.pop_back();
    }
    trace.resize(mark);
    return false;
  }

  const Graph& g_;
  RuleSet rs_;
  std::size_t budget_;
  std::unordered_set<VertexSet> visited_;
};

}  // namespace

ForcingVerdict is_forcing_set(const Graph& g, const VertexSet& s, RuleSet rs, const ForcingOptions& opt) {
  if (s.universe() != static_cast<std::size_t>(g.n())) throw InvalidInput("set universe does not match the graph");
  ForcingVerdict v;
  auto greedy = greedy_closure(g, s, rs);
  bool full = greedy.blue.size() == static_cast<std::size_t>(g.n());
  if (full || (!opt.exhaustive && (rs.has(RuleKind::Z) || !rs.has(RuleKind::T)))) {
    v.forcing = full;
    v.closure = greedy.blue;
    if (full) v.trace = std::move(greedy.trace);
    return v;
  }
  OrderSearch search(g, rs, opt.visit_budget);
  Trace trace;
  v.forcing = search.run(s, trace);
  v.explored = search.explored();
  if (v.forcing) {
    v.trace = std::move(trace);
    v.closure = VertexSet::full(static_cast<std::size_t>(g.n()));
  } else {
    v.closure = greedy.blue;
  }
  return v;
}

MinForcing min_forcing_bruteforce(const Graph& g, RuleSet rs, int max_n) {
  const int n = g.n();
  if (n > std::min(max_n, 24)) throw ResourceExhausted("brute force limited to n <= " + std::to_string(std::min(max_n, 24)));
  const std::uint32_t full = (1U << n) - 1U;
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : g.neighbors(v)) adj[static_cast<std::size_t>(v)] |= 1U << w;

  // legal step from `blue`, in the greedy order, whose result satisfies pred
  auto next_step = [&](std::uint32_t blue, auto&& pred, RuleApplication& out) {
    for (Vertex v = 0; v < n; ++v) {
      std::uint32_t white = adj[static_cast<std::size_t>(v)] & ~blue;
      bool is_blue = (blue >> v) & 1U;
      int wc = std::popcount(white);
      if (is_blue) {
        if (rs.has(RuleKind::Z) && wc == 1 && pred(blue | white)) {
          out = {RuleKind::Z, v, std::countr_zero(white)};
          return true;
        }
      } else {
        if (rs.has(RuleKind::T) && wc == 1 && pred(blue | white)) {
          out = {RuleKind::T, v, std::countr_zero(white)};
          return true;
        }
        if (rs.has(RuleKind::D) && wc == 0 && pred(blue | (1U << v))) {
          out = {RuleKind::D, v, v};
          return true;
        }
      }
    }
    return false;
  };

  std::vector<std::uint8_t> win(static_cast<std::size_t>(full) + 1, 0);
  auto winning = [&](std::uint32_t b) { return win[b] != 0; };
  RuleApplication scratch;
  for (std::uint64_t b = full + 1ULL; b-- > 0;) {
    auto blue = static_cast<std::uint32_t>(b);
    win[blue] = blue == full || next_step(blue, winning, scratch);
  }

  int best = n + 1;
  std::uint32_t best_mask = full;
  for (std::uint64_t b = 0; b <= full; ++b)
    if (win[b] && std::popcount(static_cast<std::uint32_t>(b)) < best) {
      best = std::popcount(static_cast<std::uint32_t>(b));
      best_mask = static_cast<std::uint32_t>(b);
    }

  MinForcing res;
  res.k = best;
  res.set = VertexSet(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v)
    if ((best_mask >> v) & 1U) res.set.insert(v);
  std::uint32_t blue = best_mask;
  while (blue != full) {
    RuleApplication r;
    next_step(blue, winning, r);
    res.trace.push_back(r);
    blue |= 1U << r.target;
  }
  return res;
}

std::string to_string(const RuleApplication& r) {
  return std::string(1, rule_char(r.kind)) + ' ' + std::to_string(r.actor) + ' ' + std::to_string(r.target);
}

Trace parse_trace(std::string_view text) {
  Trace out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind) || kind[0] == '#') continue;
    RuleApplication r;
    if (kind == "Z" || kind == "z") r.kind = RuleKind::Z;
    else if (kind == "T" || kind == "t") r.kind = RuleKind::T;
    else if (kind == "D" || kind == "d") r.kind = RuleKind::D;
    else throw ParseError("trace line " + std::to_string(line_no) + ": unknown rule '" + kind + "'");
    std::string extra;
    if (!(ls >> r.actor >> r.target) || (ls >> extra))
      throw ParseError("trace line " + std::to_string(line_no) + ": expected '<kind> <actor> <target>'");
    if (r.kind == RuleKind::D && r.actor != r.target)
      throw ParseError("trace line " + std::to_string(line_no) + ": D rule must have actor == target");
    out.push_back(r);
  }
  return out;
}

std::string write_trace(const Trace& trace) {
  std::string out;
  for (const auto& r : trace) out += to_string(r) + '\n';
  return out;
}

}  // namespace zf
