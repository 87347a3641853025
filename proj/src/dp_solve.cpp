#include <algorithm>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "dp_internal.hpp"
#include "zf/errors.hpp"

namespace zf::dp {

namespace {

struct Choice {
  Tag gam = Tag::Bot, phi = Tag::Bot;
  Vertex actor = -1;  // who colours this vertex (itself for D, -1 for S)
  Vertex target = -1;  // whom this vertex colours via Z or T
};

// Walks provenance from the root entry collecting the tags and partners of
// every vertex, then orders the rule applications along the dependency
// digraph those choices induce.
class Reconstructor {
 public:
  Reconstructor(const Graph& g, const NiceTD& ntd, const std::vector<SignatureTable>& tables)
      : g_(g), ntd_(ntd), tables_(tables), choice_(static_cast<std::size_t>(g.n())) {}

  DpResult run(std::size_t root_entry) {
    std::vector<std::pair<int, std::size_t>> stack{{ntd_.root(), root_entry}};
    while (!stack.empty()) {
      auto [node, idx] = stack.back();
      stack.pop_back();
      visit(node, idx);
      const auto& prov = tables_[static_cast<std::size_t>(node)].provenance(idx);
      const auto& nn = ntd_.nodes[static_cast<std::size_t>(node)];
      for (int c = 0; c < 2; ++c)
        if (nn.child[c] >= 0) stack.emplace_back(nn.child[c], static_cast<std::size_t>(prov.child[c]));
    }
    return order();
  }

 private:
  void visit(int node, std::size_t idx) {
    const auto& table = tables_[static_cast<std::size_t>(node)];
    const auto& nn = ntd_.nodes[static_cast<std::size_t>(node)];
    if (nn.kind != NiceKind::Rule) return;
    Raw r;
    unpack(table.key(idx), static_cast<int>(nn.bag.size()), r);
    const int p = static_cast<int>(std::lower_bound(nn.bag.begin(), nn.bag.end(), nn.vertex) - nn.bag.begin());
    auto& c = choice_[static_cast<std::size_t>(nn.vertex)];
    c.gam = static_cast<Tag>(r.gam[p]);
    c.phi = static_cast<Tag>(r.phi[p]);
    if (c.gam == Tag::D) c.actor = nn.vertex;
    const auto& prov = table.provenance(idx);
    if (prov.f >= 0) {
      c.actor = prov.f;
      choice_[static_cast<std::size_t>(prov.f)].target = nn.vertex;
    }
    if (prov.g >= 0) {
      c.target = prov.g;
      choice_[static_cast<std::size_t>(prov.g)].actor = nn.vertex;
    }
  }

  // Event digraph over 2v (v turns blue) and 2v+1 (v applies its rule).
  std::vector<std::vector<int>> event_arcs() const {
    const int n = g_.n();
    std::vector<std::vector<int>> out(static_cast<std::size_t>(2 * n));
    auto arc = [&](int a, int b) { out[static_cast<std::size_t>(a)].push_back(b); };
    for (Vertex v = 0; v < n; ++v) {
      const auto& c = choice_[static_cast<std::size_t>(v)];
      if (c.phi == Tag::Z) arc(2 * v, 2 * v + 1);
      if (c.phi == Tag::T || c.phi == Tag::D) arc(2 * v + 1, 2 * v);
      if ((c.gam == Tag::Z || c.gam == Tag::T) && c.actor >= 0) {
        arc(2 * c.actor + 1, 2 * v);
        if (c.phi == Tag::T) arc(2 * v + 1, 2 * c.actor + 1);
      }
      // every other neighbour must be blue before a neighbour acts
      for (Vertex w : g_.neighbors(v))
        if (w != c.actor && choice_[static_cast<std::size_t>(w)].phi != Tag::Bot) arc(2 * v, 2 * w + 1);
    }
    return out;
  }

  DpResult order() {
    const int n = g_.n();
    DpResult res;
    res.found = true;
    res.set = VertexSet(static_cast<std::size_t>(n));
    // unit of each event: the vertex whose colouring it belongs to
    std::vector<int> unit(static_cast<std::size_t>(2 * n), -1);
    for (Vertex v = 0; v < n; ++v) {
      const auto& c = choice_[static_cast<std::size_t>(v)];
      unit[static_cast<std::size_t>(2 * v)] = v;
      if (c.gam == Tag::Bot) res.set.insert(v);
      else if (c.actor < 0) throw std::logic_error("reconstruction: vertex " + std::to_string(v) + " has no colourer");
      if (c.phi == Tag::D) unit[static_cast<std::size_t>(2 * v + 1)] = v;
      else if (c.phi == Tag::Z || c.phi == Tag::T) {
        if (c.target < 0) throw std::logic_error("reconstruction: vertex " + std::to_string(v) + " has no target");
        unit[static_cast<std::size_t>(2 * v + 1)] = c.target;
      }
    }
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(n));
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    const auto arcs = event_arcs();
    for (int e = 0; e < 2 * n; ++e) {
      int ue = unit[static_cast<std::size_t>(e)];
      if (ue < 0) continue;
      for (int f : arcs[static_cast<std::size_t>(e)]) {
        int uf = unit[static_cast<std::size_t>(f)];
        if (uf < 0 || uf == ue) continue;
        succ[static_cast<std::size_t>(ue)].push_back(uf);
      }
    }
    for (auto& l : succ) {
      std::sort(l.begin(), l.end());
      l.erase(std::unique(l.begin(), l.end()), l.end());
      for (int u : l) ++indeg[static_cast<std::size_t>(u)];
    }
    // S first, then lowest actor
    using Key = std::tuple<int, Vertex, Vertex>;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
    auto key = [&](Vertex v) -> Key {
      const auto& c = choice_[static_cast<std::size_t>(v)];
      return {c.gam == Tag::Bot ? 0 : 1, c.actor, v};
    };
    for (Vertex v = 0; v < n; ++v)
      if (indeg[static_cast<std::size_t>(v)] == 0) ready.push(key(v));
    int done = 0;
    while (!ready.empty()) {
      auto [cls, actor, v] = ready.top();
      ready.pop();
      ++done;
      const auto& c = choice_[static_cast<std::size_t>(v)];
      if (cls == 1) {
        RuleKind kind = c.gam == Tag::Z ? RuleKind::Z : c.gam == Tag::T ? RuleKind::T : RuleKind::D;
        res.trace.push_back({kind, actor, v});
      }
      for (int u : succ[static_cast<std::size_t>(v)])
        if (--indeg[static_cast<std::size_t>(u)] == 0) ready.push(key(u));
    }
    if (done != n) throw std::logic_error("reconstruction: dependency order is cyclic");
    try {
      if (replay(g_, res.set, res.trace).size() != static_cast<std::size_t>(n))
        throw std::logic_error("reconstruction: replay does not colour every vertex");
    } catch (const InvalidInput& e) {
      throw std::logic_error(std::string("reconstruction: ") + e.what());
    }
    res.k = static_cast<int>(res.set.size());
    return res;
  }

  const Graph& g_;
  const NiceTD& ntd_;
  const std::vector<SignatureTable>& tables_;
  std::vector<Choice> choice_;
};

}  // namespace

DpResult solve(const Graph& g, const NiceTD& ntd, RuleSet rs, const DpOptions& options) {
  DpOptions opt = options;
  if (rs.has(RuleKind::T)) opt.chain_end_bound = false;
  if (auto err = check_nice(g, ntd)) throw InvalidInput("invalid nice decomposition: " + *err);
  if (ntd.width() + 1 > kMaxBag)
    throw ResourceExhausted("decomposition width " + std::to_string(ntd.width()) + " exceeds the limit of " +
                            std::to_string(kMaxBag - 1));
  std::vector<SignatureTable> tables(ntd.nodes.size());
  DpResult res;
  for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
    const auto& nn = ntd.nodes[i];
    auto child = [&](int c) -> const SignatureTable& { return tables[static_cast<std::size_t>(nn.child[c])]; };
    switch (nn.kind) {
      case NiceKind::Leaf: tables[i] = process_leaf(); break;
      case NiceKind::Introduce: tables[i] = process_introduce(child(0), nn.vertex, rs, opt); break;
      case NiceKind::Rule: tables[i] = process_rule(child(0), nn.vertex, g, opt); break;
      case NiceKind::Forget: tables[i] = process_forget(child(0), nn.vertex, opt); break;
      case NiceKind::Join: tables[i] = process_join(child(0), child(1), opt); break;
    }
    if (opt.prune_dominated && nn.kind != NiceKind::Leaf) tables[i] = drop_dominated(tables[i]);
    res.total_signatures += tables[i].size();
    res.largest_table = std::max(res.largest_table, tables[i].size());
    if (res.total_signatures > opt.max_total)
      throw ResourceExhausted("signature budget of " + std::to_string(opt.max_total) + " exceeded");
    if (!opt.keep_tables)
      for (int c : nn.child)
        if (c >= 0) tables[static_cast<std::size_t>(c)].release();
  }
  const auto& root = tables.back();
  if (root.size() == 0) return res;
  std::size_t best = 0;
  for (std::size_t i = 1; i < root.size(); ++i)
    if (root.weight(i) < root.weight(best)) best = i;
  if (!opt.keep_tables) {
    res.found = true;
    res.k = root.weight(best);
    return res;
  }
  DpResult rec = Reconstructor(g, ntd, tables).run(best);
  if (rec.k != root.weight(best)) throw std::logic_error("reconstruction: witness size differs from table weight");
  rec.total_signatures = res.total_signatures;
  rec.largest_table = res.largest_table;
  return rec;
}

DpResult solve(const Graph& g, RuleSet rs, const DpOptions& opt) {
  TreeDecomposition td = g.n() <= 12 ? exact_treewidth(g).td : heuristic_decomposition(g, EliminationHeuristic::MinFill);
  return solve(g, make_nice(g, td), rs, opt);
}

SizeDecision solve_by_solution_size(const Graph& g, int k, RuleSet rs, const DpOptions& opt) {
  if (!(rs == RuleSet{RuleKind::Z} || rs == RuleSet{RuleKind::Z, RuleKind::D}))
    throw InvalidInput("solution-size decision supports only rule sets z and zd");
  SizeDecision d;
  if (k < 0) return d;
  ExactTreewidth tw = exact_treewidth(g, k);
  if (!tw.within_bound) {
    d.treewidth_exceeded = true;
    return d;
  }
  d.tw = tw.tw;
  DpOptions o = opt;
  o.weight_cap = opt.weight_cap ? std::min(*opt.weight_cap, k) : k;
  d.result = solve(g, make_nice(g, tw.td), rs, o);
  d.yes = d.result.found && d.result.k <= k;
  return d;
}

}  // namespace zf::dp
