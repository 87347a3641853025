// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--criteria 1,2,...] [--c8-seconds S]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "enumerate.hpp"
#include "oracles.hpp"
#include "zf/dp.hpp"
#include "zf/errors.hpp"
#include "zf/reductions.hpp"
#include "zf/rules.hpp"
#include "zf/sequences.hpp"
#include "zf/treedec.hpp"

using namespace zf;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void fail(const std::string& what) {
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string describe(const Graph& g) {
  std::ostringstream s;
  s << "n=" << g.n() << " E={";
  for (auto [u, v] : g.edges()) s << u << '-' << v << ' ';
  s << '}';
  return s.str();
}

dp::DpOptions wide_budget() {
  dp::DpOptions o;
  o.max_table = std::size_t{1} << 26;
  o.max_total = std::size_t{1} << 26;
  return o;
}

// Connected graphs with 1 <= n <= max_n, one per isomorphism class.
std::vector<Graph> connected_up_to(int max_n, int min_n = 1) {
  std::vector<Graph> out;
  for (int n = min_n; n <= max_n; ++n)
    for (const auto& sg : testing::connected_graphs(n)) out.push_back(sg.to_graph());
  return out;
}

// Random graphs with n <= 10 and treewidth <= 3.
std::vector<Graph> seeded_low_width(int count) {
  std::vector<Graph> out;
  for (int i = 0; i < count; ++i) {
    const int n = 4 + i % 7;
    const int width = 1 + i % 3;
    out.push_back(gen::random_partial_ktree(n, width, 0.6 + 0.1 * (i % 4), 1000 + static_cast<std::uint64_t>(i)));
  }
  return out;
}

bool witness_ok(const Graph& g, RuleSet rs, const dp::DpResult& r, std::string& why) {
  if (static_cast<int>(r.set.size()) != r.k) {
    why = "|S| differs from k";
    return false;
  }
  for (const auto& step : r.trace)
    if (!rs.has(step.kind)) {
      why = "trace uses a rule outside the set";
      return false;
    }
  try {
    if (replay(g, r.set, r.trace).size() != static_cast<std::size_t>(g.n())) {
      why = "replay leaves white vertices";
      return false;
    }
  } catch (const InvalidInput& e) {
    why = e.what();
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Outcome duality_identities() {
  Outcome out;
  const std::vector<std::pair<SequenceVariant, RuleSet>> pairs{
      {SequenceVariant::Z, RuleSet{RuleKind::Z}},
      {SequenceVariant::GD, RuleSet{RuleKind::Z, RuleKind::D}},
      {SequenceVariant::TGD, RuleSet{RuleKind::Z, RuleKind::T}},
      {SequenceVariant::L, RuleSet{RuleKind::Z, RuleKind::T, RuleKind::D}},
      {SequenceVariant::LocalL, RuleSet{RuleKind::T, RuleKind::D}}};
  long checks = 0;
  for (const Graph& g : connected_up_to(7, 2))
    for (const auto& [var, rs] : pairs) {
      int len = max_sequence_bruteforce(g, var).length;
      int k = min_forcing_bruteforce(g, rs).k;
      ++checks;
      if (len + k != g.n())
        out.fail(to_string(var) + " " + describe(g) + ": " + std::to_string(len) + " + " + std::to_string(k));
    }
  out.detail = std::to_string(checks) + " (graph, pairing) checks on connected graphs 2<=n<=7";
  return out;
}

Outcome dp_matches_bruteforce() {
  Outcome out;
  const auto opt = wide_budget();
  long checks = 0;
  auto check = [&](const Graph& g, const std::string& tag) {
    for (RuleSet rs : RuleSet::all()) {
      int bf = min_forcing_bruteforce(g, rs).k;
      try {
        int k = dp::solve(g, rs, opt).k;
        if (k != bf) out.fail(tag + " rs=" + rs.to_string() + " " + describe(g) + ": dp " + std::to_string(k) + " bf " + std::to_string(bf));
      } catch (const std::exception& e) {
        out.fail(tag + " rs=" + rs.to_string() + " " + describe(g) + ": " + e.what());
      }
      ++checks;
    }
  };
  for (const Graph& g : connected_up_to(7)) check(g, "connected");
  for (const Graph& g : seeded_low_width(200)) check(g, "random");
  out.detail = std::to_string(checks) + " (graph, rule set) checks: connected n<=7 and 200 random n<=10, tw<=3";
  return out;
}

Outcome witnesses_replay() {
  Outcome out;
  long witnesses = 0;
  auto check = [&](const Graph& g, RuleSet rs, const dp::DpResult& r) {
    ++witnesses;
    std::string why;
    if (!r.found || !witness_ok(g, rs, r, why)) out.fail("rs=" + rs.to_string() + " " + describe(g) + ": " + why);
  };
  for (const Graph& g : connected_up_to(6))
    for (RuleSet rs : RuleSet::all()) check(g, rs, dp::solve(g, rs));
  for (const Graph& g : seeded_low_width(200))
    for (RuleSet rs : RuleSet::all()) check(g, rs, dp::solve(g, rs));
  for (const Graph& g : connected_up_to(6))
    for (RuleSet rs : {RuleSet{RuleKind::Z}, RuleSet{RuleKind::Z, RuleKind::D}}) {
      auto d = dp::solve_by_solution_size(g, g.n(), rs);
      check(g, rs, d.result);
    }
  out.detail = std::to_string(witnesses) + " witnesses replayed";
  return out;
}

Outcome vertex_cover_observation() {
  Outcome out;
  long graphs = 0;
  for (int n = 1; n <= 8; ++n)
    for (const auto& sg : testing::all_graphs(n)) {
      Graph g = sg.to_graph();
      ++graphs;
      int d = min_forcing_bruteforce(g, RuleSet{RuleKind::D}).k;
      int vc = testing::min_vertex_cover(g);
      if (d != vc) out.fail("{D} " + describe(g) + ": " + std::to_string(d) + " vs cover " + std::to_string(vc));
      if (g.m() > 0) {
        int t = min_forcing_bruteforce(g, RuleSet{RuleKind::T}).k;
        if (t != g.n()) out.fail("{T} " + describe(g) + ": " + std::to_string(t));
      }
    }
  out.detail = std::to_string(graphs) + " graphs with n<=8";
  return out;
}

Outcome corona_proposition() {
  Outcome out;
  for (int i = 0; i < 20; ++i) {
    const int n = 3 + i % 6;
    Graph base = gen::random_gnp(n, 0.35 + 0.05 * (i % 5), 500 + static_cast<std::uint64_t>(i));
    Graph c = corona_with_leaves(base);
    for (RuleSet rs : {RuleSet{RuleKind::Z, RuleKind::T}, RuleSet{RuleKind::T, RuleKind::D}}) {
      auto r = dp::solve(c, rs);
      std::string why;
      if (r.k != 0 || !witness_ok(c, rs, r, why)) out.fail("rs=" + rs.to_string() + " base " + describe(base) + " k=" + std::to_string(r.k) + " " + why);
      if (min_forcing_bruteforce(c, rs).k != 0) out.fail("brute force nonzero, base " + describe(base));
    }
    int tb = exact_treewidth(base).tw, tc = exact_treewidth(c).tw;
    if (tc < tb) out.fail("treewidth dropped for base " + describe(base));
  }
  out.detail = "20 seeded bases, n<=8";
  return out;
}

// One vertex per class, pairwise adjacent, by trying every choice.
bool clique_by_choices(const MccInstance& inst) {
  std::vector<Vertex> pick;
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == inst.classes.size()) return true;
    for (Vertex v : inst.classes[i]) {
      bool ok = true;
      for (Vertex u : pick) ok = ok && inst.graph.adjacent(u, v);
      if (!ok) continue;
      pick.push_back(v);
      if (self(self, i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return rec(rec, 0);
}

Outcome mcc_soundness() {
  Outcome out;
  int instances = 0, yes = 0;
  auto run = [&](const MccInstance& inst) {
    ++instances;
    auto red = mcc_to_osgtd(inst);
    auto bad = audit_mcc_reduction(inst, red);
    for (const auto& b : bad) out.fail("audit: " + b);
    const int k = inst.k();
    const int gamma = (2 * k + 1) * k + (2 * k + 1) * (k * (k - 1) / 2) + 1;
    if (red.instance.target != gamma) out.fail("target " + std::to_string(red.instance.target));
    bool clique = clique_by_choices(inst);
    if (clique != has_multicolored_clique(inst)) out.fail("library clique check disagrees");
    bool reach = one_sided_at_least(red.instance, gamma);
    yes += clique;
    if (clique != reach) out.fail("k=" + std::to_string(k) + " q=" + std::to_string(inst.q()) + " " + describe(inst.graph));
  };
  // k = 2: every cross-edge pattern for q = 1 and q = 2
  for (int q = 1; q <= 2; ++q) {
    std::vector<std::pair<Vertex, Vertex>> cross;
    for (int p = 0; p < q; ++p)
      for (int r = 0; r < q; ++r) cross.emplace_back(p, q + r);
    for (unsigned mask = 0; mask < (1U << cross.size()); ++mask) {
      std::vector<std::pair<Vertex, Vertex>> e;
      for (std::size_t i = 0; i < cross.size(); ++i)
        if ((mask >> i) & 1U) e.push_back(cross[i]);
      MccInstance inst{Graph(2 * q, e), {}};
      inst.classes.resize(2);
      for (int p = 0; p < q; ++p) {
        inst.classes[0].push_back(p);
        inst.classes[1].push_back(q + p);
      }
      run(inst);
    }
  }
  // k = 3, q = 1: seeded patterns over the three cross edges
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    std::vector<std::pair<Vertex, Vertex>> e;
    const std::pair<Vertex, Vertex> all[3] = {{0, 1}, {0, 2}, {1, 2}};
    std::uint64_t x = seed * 0x9E3779B97F4A7C15ULL + 7;
    for (int i = 0; i < 3; ++i)
      if ((x >> (17 + 5 * i)) & 1U) e.push_back(all[i]);
    run(MccInstance{Graph(3, e), {{0}, {1}, {2}}});
  }
  out.detail = std::to_string(instances) + " instances (" + std::to_string(yes) + " with a clique)";
  return out;
}

Outcome reduction_sweeps() {
  Outcome out;
  long checks = 0;
  auto one_sided = [](const OsgtdInstance& inst) {
    return max_sequence_bruteforce(inst.graph, SequenceVariant::TGD, inst.sides.a, 24).length;
  };
  auto expect = [&](bool ok, const std::string& what) {
    ++checks;
    if (!ok) out.fail(what);
  };

  const auto sources = connected_up_to(6, 2);
  std::vector<OsgtdInstance> bip;
  for (const Graph& g : sources) {
    expect(max_sequence_bruteforce(g, SequenceVariant::GD).length == one_sided(gd_to_osgtd(g, 0)), "gd " + describe(g));
    expect(max_sequence_bruteforce(g, SequenceVariant::TGD).length == one_sided(tgd_to_osgtd(g, 0)), "tgd " + describe(g));
    expect(max_sequence_bruteforce(g, SequenceVariant::L).length == one_sided(lgd_to_osgtd(g, 0)), "l " + describe(g));
    if (auto sides = testing::two_colouring(g)) {
      bip.push_back({g, *sides, 1});
      bip.push_back({g, {sides->b, sides->a}, 1});
    }
    bip.push_back(gd_to_osgtd(g, 1));
    bip.push_back(tgd_to_osgtd(g, 1));
    bip.push_back(lgd_to_osgtd(g, 1));
  }
  for (const auto& inst : bip) {
    const int m = one_sided(inst);
    const std::string tag = describe(inst.graph);
    for (auto var : {SequenceVariant::GD, SequenceVariant::Z}) {
      auto lift = osgtd_to_cobipartite(inst, var);
      expect(lift.k == inst.target && max_sequence_bruteforce(lift.graph, var, std::nullopt, 24).length == m,
             "lift " + to_string(var) + " " + tag);
    }
    for (auto var : {SequenceVariant::TGD, SequenceVariant::L}) {
      auto lift = osgtd_to_cobipartite(inst, var);
      expect(lift.k == inst.target + 4 && max_sequence_bruteforce(lift.graph, var, std::nullopt, 24).length == m + 4,
             "padded lift " + to_string(var) + " " + tag);
    }
    expect(max_covering_bruteforce(osgtd_to_hypergraph(inst)).length == m, "hypergraph " + tag);
    OsgtdInstance flipped{inst.graph, {inst.sides.b, inst.sides.a}, inst.target};
    const int total = max_sequence_bruteforce(inst.graph, SequenceVariant::TGD, std::nullopt, 24).length;
    expect(one_sided(flipped) == m && total == 2 * m, "sides " + tag);
  }
  out.detail = std::to_string(checks) + " equalities over " + std::to_string(sources.size()) + " source graphs and " +
               std::to_string(bip.size()) + " bipartite instances";
  return out;
}

Outcome solution_size_wrapper(double budget_seconds) {
  Outcome out;
  const auto t0 = Clock::now();
  const RuleSet z{RuleKind::Z}, zd{RuleKind::Z, RuleKind::D};
  {
    auto d = dp::solve_by_solution_size(gen::complete(5), 2, z);
    if (d.yes || !d.treewidth_exceeded) out.fail("K5 with k=2 is not a treewidth NO");
  }
  // isomorphism classes on exactly n vertices
  const long classes[10] = {1, 1, 2, 4, 11, 34, 156, 1044, 12346, 274668};
  long graphs = 0, queries = 0, total = 0;
  for (int n = 1; n <= 9; ++n) total += classes[n];
  int complete_up_to = 0;
  bool stopped = false;
  for (int n = 1; n <= 9 && !stopped; ++n) {
    for (const auto& sg : testing::all_graphs(n)) {
      if (seconds_since(t0) > budget_seconds) {
        stopped = true;
        break;
      }
      Graph g = sg.to_graph();
      ++graphs;
      for (RuleSet rs : {z, zd}) {
        const int bf = min_forcing_bruteforce(g, rs).k;
        for (int k : {bf - 1, bf}) {
          if (k < 0) continue;
          ++queries;
          auto d = dp::solve_by_solution_size(g, k, rs);
          if (d.yes != (k >= bf)) out.fail("rs=" + rs.to_string() + " k=" + std::to_string(k) + " " + describe(g));
          std::string why;
          if (d.yes && !witness_ok(g, rs, d.result, why)) out.fail("witness " + describe(g) + ": " + why);
        }
      }
    }
    if (!stopped) complete_up_to = n;
  }
  if (stopped) {
    out.fail("incomplete: wall-clock budget of " + std::to_string(static_cast<long>(budget_seconds)) + "s spent after " +
             std::to_string(graphs) + " of " + std::to_string(total) + " graphs (all n<=" + std::to_string(complete_up_to) +
             " done)");
  }
  out.detail = std::to_string(queries) + " queries on " + std::to_string(graphs) + " graphs";
  return out;
}

Outcome scaling_sanity() {
  Outcome out;
  const RuleSet z{RuleKind::Z};
  auto timed = [&](const Graph& g) {
    double best = 1e9;
    for (int rep = 0; rep < 3; ++rep) {
      auto t0 = Clock::now();
      auto r = dp::solve(g, z);
      best = std::min(best, seconds_since(t0));
      std::string why;
      if (!witness_ok(g, z, r, why)) out.fail("witness on n=" + std::to_string(g.n()) + ": " + why);
    }
    return best;
  };
  std::ostringstream d;
  for (const char* family : {"path", "caterpillar"}) {
    auto make = [&](int n) { return std::string(family) == "path" ? gen::path(n) : gen::caterpillar(n / 2, 1); };
    const double small = timed(make(1000)), large = timed(make(10000));
    // quasi-linear: a tenfold size increase may cost at most 20x
    const double ratio = large / std::max(small, 1e-6);
    if (large >= 60.0) out.fail(std::string(family) + " n=10000 took " + std::to_string(large) + "s");
    if (ratio > 20.0) out.fail(std::string(family) + " growth ratio " + std::to_string(ratio));
    d << family << " 1e3:" << small << "s 1e4:" << large << "s ratio " << ratio << "; ";
  }
  out.detail = d.str();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only;
  double c8_seconds = 3600;
  app.add_option("--criteria", only, "Criteria to run (default all)")->delimiter(',');
  app.add_option("--c8-seconds", c8_seconds, "Wall-clock budget for criterion 8");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"duality identities", duality_identities},
      {"dp equals brute force", dp_matches_bruteforce},
      {"witness replay", witnesses_replay},
      {"vertex cover and {T} observations", vertex_cover_observation},
      {"leaf corona", corona_proposition},
      {"clique reduction soundness", mcc_soundness},
      {"reduction sweeps", reduction_sweeps},
      {"solution-size wrapper", [&] { return solution_size_wrapper(c8_seconds); }},
      {"scaling sanity", scaling_sanity}};

  bool all_pass = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    all_pass = all_pass && o.pass;
    std::printf("%s criterion %d (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                o.detail.c_str(), seconds_since(t0));
    for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
