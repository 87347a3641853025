#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zf/dp.hpp"
#include "zf/errors.hpp"
#include "zf/graph_io.hpp"
#include "zf/reductions.hpp"
#include "zf/rules.hpp"
#include "zf/sequences.hpp"
#include "zf/treedec.hpp"

namespace {

using namespace zf;

enum Exit { kOk = 0, kNo = 1, kParse = 2, kResource = 3, kInternal = 4 };

// A record is one output line: ordered key=value pairs. Lists print
// comma-separated in key=value form and as arrays in JSON.
using Value = std::variant<long long, bool, std::string, std::vector<long long>>;
using Record = std::vector<std::pair<std::string, Value>>;

class Output {
 public:
  explicit Output(bool json) : json_(json) {}

  void emit(const Record& r) const {
    if (json_) {
      nlohmann::ordered_json j = nlohmann::ordered_json::object();
      for (const auto& [k, v] : r) std::visit([&](const auto& x) { j[k] = x; }, v);
      std::cout << j.dump() << '\n';
      return;
    }
    std::string line;
    for (const auto& [k, v] : r) {
      if (!line.empty()) line += ' ';
      line += k + '=' + text(v);
    }
    std::cout << line << '\n';
  }

 private:
  static std::string text(const Value& v) {
    if (auto p = std::get_if<long long>(&v)) return std::to_string(*p);
    if (auto p = std::get_if<bool>(&v)) return *p ? "true" : "false";
    if (auto p = std::get_if<std::string>(&v)) return *p;
    std::string s;
    for (long long x : std::get<std::vector<long long>>(v)) {
      if (!s.empty()) s += ',';
      s += std::to_string(x);
    }
    return s;
  }

  bool json_;
};

std::vector<long long> ids(const std::vector<Vertex>& vs) { return {vs.begin(), vs.end()}; }

std::vector<long long> members(const VertexSet& s) {
  std::vector<long long> out;
  for (std::size_t v = 0; v < s.universe(); ++v)
    if (s.contains(static_cast<Vertex>(v))) out.push_back(static_cast<long long>(v));
  return out;
}

Graph load_graph(const std::string& path) { return io::parse_graph(io::read_file(path)); }

void emit_trace(const Output& out, const Trace& trace) {
  long long i = 0;
  for (const auto& r : trace)
    out.emit({{"step", ++i}, {"rule", std::string(1, rule_char(r.kind))}, {"actor", r.actor}, {"target", r.target}});
}

void write_witness(const std::string& set_out, const std::string& trace_out, const VertexSet& s, const Trace& t) {
  if (!set_out.empty()) {
    std::vector<Vertex> vs;
    for (long long v : members(s)) vs.push_back(static_cast<Vertex>(v));
    io::write_file(set_out, io::write_vertex_list(vs));
  }
  if (!trace_out.empty()) io::write_file(trace_out, write_trace(t));
}

// Two lines in partition format: side A, then side B.
Bipartition load_sides(const std::string& path) {
  auto parts = io::parse_partition(io::read_file(path));
  if (parts.size() != 2) throw ParseError("sides file needs exactly two lines (A, then B)");
  return {parts[0], parts[1]};
}

std::string write_sides(const Bipartition& s) {
  std::string out;
  for (const auto* side : {&s.a, &s.b}) {
    std::string line;
    for (Vertex v : *side) line += (line.empty() ? "" : " ") + std::to_string(v);
    out += line + '\n';
  }
  return out;
}

// Writes `text` to `path`, or to stdout when no path was given.
void deliver(const std::string& path, const std::string& text) {
  if (path.empty()) std::cout << text;
  else io::write_file(path, text);
}

TreeDecomposition decompose_with(const Graph& g, const std::string& method) {
  if (method == "exact") return exact_treewidth(g).td;
  if (method == "min-fill") return heuristic_decomposition(g, EliminationHeuristic::MinFill);
  if (method == "min-degree") return heuristic_decomposition(g, EliminationHeuristic::MinDegree);
  if (method == "auto") return g.n() <= 12 ? exact_treewidth(g).td : heuristic_decomposition(g, EliminationHeuristic::MinFill);
  throw ParseError("unknown decomposition method '" + method + "'");
}

struct SolveArgs {
  std::string graph, rules, variant, method = "dp", td, decomposition = "auto", set_out, trace_out;
  std::optional<int> k;
  int max_n = 20;
  std::size_t budget = std::size_t{1} << 24;
};

int run_solve(const SolveArgs& a, const Output& out) {
  Graph g = load_graph(a.graph);
  std::optional<SequenceVariant> var;
  if (!a.variant.empty()) var = parse_variant(a.variant);
  if (a.rules.empty() == !var) throw ParseError("give exactly one of --rules and --variant");
  RuleSet rs = var ? dual_rules(*var) : RuleSet::parse(a.rules);
  if (var && g.has_isolated_vertices()) throw InvalidInput("sequences need a graph without isolated vertices");
  dp::DpOptions opt;
  opt.max_total = a.budget;
  opt.max_table = a.budget;

  if (a.k) {
    if (a.method != "dp") throw ParseError("--k is answered by the dp method only");
    auto d = dp::solve_by_solution_size(g, *a.k, rs, opt);
    Record head{{"answer", std::string(d.yes ? "yes" : "no")}, {"k", static_cast<long long>(*a.k)}};
    if (d.treewidth_exceeded) head.emplace_back("reason", std::string("treewidth"));
    else head.emplace_back("tw", static_cast<long long>(d.tw));
    out.emit(head);
    if (!d.yes) return kNo;
    out.emit({{"size", static_cast<long long>(d.result.k)}});
    out.emit({{"set", members(d.result.set)}});
    emit_trace(out, d.result.trace);
    write_witness(a.set_out, a.trace_out, d.result.set, d.result.trace);
    return kOk;
  }

  VertexSet set;
  Trace trace;
  int k = 0;
  Record meta{{"method", a.method}, {"rules", rs.to_string()}, {"n", static_cast<long long>(g.n())}};
  if (a.method == "brute") {
    auto r = min_forcing_bruteforce(g, rs, a.max_n);
    set = r.set;
    trace = r.trace;
    k = r.k;
  } else if (a.method == "dp") {
    TreeDecomposition td = a.td.empty() ? decompose_with(g, a.decomposition) : parse_td(io::read_file(a.td));
    NiceTD ntd = make_nice(g, td);
    auto r = dp::solve(g, ntd, rs, opt);
    if (!r.found) throw std::logic_error("no valid root signature");
    set = r.set;
    trace = r.trace;
    k = r.k;
    meta.emplace_back("width", static_cast<long long>(ntd.width()));
    meta.emplace_back("signatures", static_cast<long long>(r.total_signatures));
  } else {
    throw ParseError("unknown method '" + a.method + "'");
  }
  out.emit({{"k", static_cast<long long>(k)}});
  out.emit({{"set", members(set)}});
  emit_trace(out, trace);
  if (var) {
    VertexSequence seq = forcing_trace_to_sequence(g, set, trace, *var);
    out.emit({{"variant", to_string(*var)}, {"length", static_cast<long long>(seq.size())}});
    out.emit({{"sequence", ids(seq)}});
  }
  out.emit(meta);
  write_witness(a.set_out, a.trace_out, set, trace);
  return kOk;
}

struct VerifyArgs {
  std::string graph, rules, set, trace, sequence, variant;
};

int run_verify(const VerifyArgs& a, const Output& out) {
  Graph g = load_graph(a.graph);
  if (!a.sequence.empty()) {
    if (a.variant.empty()) throw ParseError("--sequence needs --variant");
    auto seq = io::parse_vertex_list(io::read_file(a.sequence));
    auto var = parse_variant(a.variant);
    auto check = verify_sequence(g, seq, var);
    Record head{{"valid", check.valid}, {"variant", to_string(var)}, {"length", static_cast<long long>(seq.size())}};
    if (!check.valid) head.emplace_back("failed_at", static_cast<long long>(check.failed_at + 1));
    out.emit(head);
    for (std::size_t i = 0; i < check.footprints.size(); ++i)
      out.emit({{"position", static_cast<long long>(i + 1)},
                {"vertex", static_cast<long long>(seq[i])},
                {"footprint", members(check.footprints[i])}});
    return check.valid ? kOk : kNo;
  }
  if (a.set.empty() || a.rules.empty()) throw ParseError("verify needs --sequence or --set with --rules");
  RuleSet rs = RuleSet::parse(a.rules);
  auto list = io::parse_vertex_list(io::read_file(a.set));
  for (Vertex v : list)
    if (v < 0 || v >= g.n()) throw ParseError("set member " + std::to_string(v) + " out of range");
  VertexSet s = VertexSet::from(static_cast<std::size_t>(g.n()), list);
  if (!a.trace.empty()) {
    Trace t = parse_trace(io::read_file(a.trace));
    VertexSet blue = s;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto& r = t[i];
      if (!rs.has(r.kind) || !is_applicable(g, blue, r)) {
        out.emit({{"valid", false}, {"failed_step", static_cast<long long>(i + 1)}, {"rule", to_string(r)}});
        return kNo;
      }
      blue = apply_rule(g, blue, r);
    }
    const bool all = blue.size() == static_cast<std::size_t>(g.n());
    out.emit({{"valid", all}, {"k", static_cast<long long>(s.size())}, {"blue", static_cast<long long>(blue.size())}});
    return all ? kOk : kNo;
  }
  auto v = is_forcing_set(g, s, rs);
  out.emit({{"valid", v.forcing}, {"k", static_cast<long long>(s.size())}, {"blue", static_cast<long long>(v.closure.size())}});
  if (v.forcing) emit_trace(out, v.trace);
  return v.forcing ? kOk : kNo;
}

struct ConvertArgs {
  std::string graph, variant, sequence, set, trace, set_out, trace_out, sequence_out;
};

int run_convert(const ConvertArgs& a, const Output& out) {
  Graph g = load_graph(a.graph);
  auto var = parse_variant(a.variant);
  if (!a.sequence.empty()) {
    auto seq = io::parse_vertex_list(io::read_file(a.sequence));
    auto f = sequence_to_forcing(g, seq, var);
    out.emit({{"rules", dual_rules(var).to_string()}, {"k", static_cast<long long>(f.set.size())}});
    out.emit({{"set", members(f.set)}});
    emit_trace(out, f.trace);
    write_witness(a.set_out, a.trace_out, f.set, f.trace);
    return kOk;
  }
  if (a.set.empty() || a.trace.empty()) throw ParseError("convert needs --sequence, or --set with --trace");
  auto list = io::parse_vertex_list(io::read_file(a.set));
  for (Vertex v : list)
    if (v < 0 || v >= g.n()) throw ParseError("set member " + std::to_string(v) + " out of range");
  VertexSet s = VertexSet::from(static_cast<std::size_t>(g.n()), list);
  auto seq = forcing_trace_to_sequence(g, s, parse_trace(io::read_file(a.trace)), var);
  out.emit({{"variant", to_string(var)}, {"length", static_cast<long long>(seq.size())}});
  out.emit({{"sequence", ids(seq)}});
  if (!a.sequence_out.empty()) io::write_file(a.sequence_out, io::write_vertex_list(seq));
  return kOk;
}

struct ReduceArgs {
  std::string graph, from, to, partition, sides, out, sides_out;
  int k = 0;
  bool certify = false;
};

int run_reduce(const ReduceArgs& a, const Output& out) {
  Graph g = load_graph(a.graph);
  auto emit_osgtd = [&](const OsgtdInstance& inst) {
    io::write_file(a.out, io::write_graph(inst.graph));
    if (!a.sides_out.empty()) io::write_file(a.sides_out, write_sides(inst.sides));
    out.emit({{"n", static_cast<long long>(inst.graph.n())},
              {"m", static_cast<long long>(inst.graph.m())},
              {"a", static_cast<long long>(inst.sides.a.size())},
              {"b", static_cast<long long>(inst.sides.b.size())},
              {"target", static_cast<long long>(inst.target)}});
  };
  if (a.out.empty()) throw ParseError("reduce needs --out");

  if (a.from == "mcc") {
    if (a.to != "osgtd") throw ParseError("mcc reduces to osgtd only");
    if (a.partition.empty()) throw ParseError("mcc input needs --partition");
    MccInstance inst{g, io::parse_partition(io::read_file(a.partition))};
    auto red = mcc_to_osgtd(inst);
    emit_osgtd(red.instance);
    auto bad = audit_mcc_reduction(inst, red);
    out.emit({{"alpha", static_cast<long long>(red.gadgets.alpha)},
              {"beta", static_cast<long long>(red.gadgets.beta)},
              {"audit", std::string(bad.empty() ? "ok" : "failed")}});
    for (const auto& msg : bad) std::cerr << "audit: " << msg << '\n';
    if (!bad.empty()) throw std::logic_error("reduction failed its structural audit");
    if (a.certify) {
      const bool clique = has_multicolored_clique(inst);
      const bool reach = one_sided_at_least(red.instance, red.instance.target);
      out.emit({{"clique", clique}, {"reaches_target", reach}, {"sound", clique == reach}});
      if (clique != reach) throw std::logic_error("certification disagrees with the clique search");
    }
    return kOk;
  }

  if (a.from == "gd" || a.from == "tgd" || a.from == "l") {
    if (a.to != "osgtd") throw ParseError(a.from + " reduces to osgtd only");
    auto inst = a.from == "gd" ? gd_to_osgtd(g, a.k) : a.from == "tgd" ? tgd_to_osgtd(g, a.k) : lgd_to_osgtd(g, a.k);
    emit_osgtd(inst);
    if (a.certify) {
      auto var = parse_variant(a.from);
      long long src = max_sequence_bruteforce(g, var).length;
      long long dst = max_one_sided(inst).length;
      out.emit({{"source_max", src}, {"one_sided_max", dst}, {"sound", src == dst}});
      if (src != dst) throw std::logic_error("maxima differ across the reduction");
    }
    return kOk;
  }

  if (a.from == "osgtd") {
    if (a.sides.empty()) throw ParseError("osgtd input needs --sides");
    OsgtdInstance inst{g, load_sides(a.sides), a.k};
    if (a.to == "hypergraph") {
      Hypergraph h = osgtd_to_hypergraph(inst);
      io::write_file(a.out, io::write_hypergraph(h));
      out.emit({{"vertices", static_cast<long long>(h.num_vertices)}, {"edges", static_cast<long long>(h.edges.size())}});
      return kOk;
    }
    auto var = parse_variant(a.to);
    auto lift = osgtd_to_cobipartite(inst, var);
    io::write_file(a.out, io::write_graph(lift.graph));
    out.emit({{"n", static_cast<long long>(lift.graph.n())},
              {"m", static_cast<long long>(lift.graph.m())},
              {"variant", to_string(var)},
              {"k", static_cast<long long>(lift.k)}});
    if (a.certify) {
      long long src = max_one_sided(inst).length;
      long long dst = max_sequence_bruteforce(lift.graph, var).length;
      long long pad = lift.k - inst.target;
      out.emit({{"one_sided_max", src}, {"target_max", dst}, {"sound", src + pad == dst}});
      if (src + pad != dst) throw std::logic_error("maxima differ across the reduction");
    }
    return kOk;
  }
  throw ParseError("unknown reduction source '" + a.from + "'");
}

struct GenerateArgs {
  std::string kind, graph, out;
  int n = 10, width = 2, spine = 5, legs = 1;
  double p = 0.3, keep = 0.7;
  std::uint64_t seed = 1;
  bool connected = false;
};

int run_generate(const GenerateArgs& a) {
  Graph g;
  if (a.kind == "corona") {
    if (a.graph.empty()) throw ParseError("corona needs an input graph");
    g = corona_with_leaves(load_graph(a.graph));
  } else if (a.kind == "random") {
    g = a.connected ? gen::random_connected(a.n, a.p, a.seed) : gen::random_gnp(a.n, a.p, a.seed);
  } else if (a.kind == "partial-ktree") {
    g = gen::random_partial_ktree(a.n, a.width, a.keep, a.seed);
  } else if (a.kind == "path") {
    g = gen::path(a.n);
  } else if (a.kind == "cycle") {
    g = gen::cycle(a.n);
  } else if (a.kind == "complete") {
    g = gen::complete(a.n);
  } else if (a.kind == "star") {
    g = gen::star(a.n);
  } else if (a.kind == "caterpillar") {
    g = gen::caterpillar(a.spine, a.legs);
  } else if (a.kind == "petersen") {
    g = gen::petersen();
  } else {
    throw ParseError("unknown generator '" + a.kind + "'");
  }
  deliver(a.out, io::write_graph(g));
  return kOk;
}

struct DecomposeArgs {
  std::string graph, method = "min-fill", out;
  bool nice = false;
};

int run_decompose(const DecomposeArgs& a, const Output& out) {
  Graph g = load_graph(a.graph);
  TreeDecomposition td = decompose_with(g, a.method);
  if (a.nice) {
    NiceTD ntd = make_nice(g, td);
    if (a.out.empty()) std::cout << write_nice(ntd);
    else {
      io::write_file(a.out, write_nice(ntd));
      out.emit({{"width", static_cast<long long>(ntd.width())}, {"nodes", static_cast<long long>(ntd.nodes.size())}});
    }
    return kOk;
  }
  if (a.out.empty()) std::cout << write_td(td, g.n());
  else {
    io::write_file(a.out, write_td(td, g.n()));
    out.emit({{"width", static_cast<long long>(td.width())}, {"bags", static_cast<long long>(td.bags.size())}});
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero forcing and Grundy domination toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "kv";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"kv", "json-lines"}));

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Minimum forcing set, or maximum sequence via --variant");
  solve->add_option("graph", sa.graph, "Graph file (PACE or edge list)")->required();
  solve->add_option("--rules", sa.rules, "Rule set, letters from z t d");
  solve->add_option("--variant", sa.variant, "Sequence variant: gd tgd z l locall");
  solve->add_option("--method", sa.method, "dp or brute")->check(CLI::IsMember({"dp", "brute"}));
  solve->add_option("--td", sa.td, "PACE .td decomposition to use");
  solve->add_option("--decomposition", sa.decomposition, "auto exact min-fill min-degree");
  solve->add_option("--k", sa.k, "Decide whether a set of size <= k exists (rules z or zd)");
  solve->add_option("--max-n", sa.max_n, "Brute-force vertex guard");
  solve->add_option("--budget", sa.budget, "DP signature budget");
  solve->add_option("--set-out", sa.set_out, "Write the set, one id per line");
  solve->add_option("--trace-out", sa.trace_out, "Write the trace");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a forcing set, a trace or a sequence");
  verify->add_option("graph", va.graph)->required();
  verify->add_option("--rules", va.rules);
  verify->add_option("--set", va.set);
  verify->add_option("--trace", va.trace);
  verify->add_option("--sequence", va.sequence);
  verify->add_option("--variant", va.variant);

  ConvertArgs ca;
  auto* convert = app.add_subcommand("convert", "Sequence to forcing set and back");
  convert->add_option("graph", ca.graph)->required();
  convert->add_option("--variant", ca.variant)->required();
  convert->add_option("--sequence", ca.sequence);
  convert->add_option("--set", ca.set);
  convert->add_option("--trace", ca.trace);
  convert->add_option("--set-out", ca.set_out);
  convert->add_option("--trace-out", ca.trace_out);
  convert->add_option("--sequence-out", ca.sequence_out);

  ReduceArgs ra;
  auto* reduce = app.add_subcommand("reduce", "Hardness reductions");
  reduce->add_option("graph", ra.graph)->required();
  reduce->add_option("--from", ra.from, "mcc gd tgd l osgtd")->required();
  reduce->add_option("--to", ra.to, "osgtd gd z tgd l hypergraph")->required();
  reduce->add_option("--partition", ra.partition, "Colour classes, one per line");
  reduce->add_option("--sides", ra.sides, "Sides A and B, one per line");
  reduce->add_option("--k", ra.k, "Target length of the source instance");
  reduce->add_option("--out", ra.out, "Output graph or hypergraph file");
  reduce->add_option("--sides-out", ra.sides_out, "Write the bipartition");
  reduce->add_flag("--certify", ra.certify, "Brute-force soundness check (small inputs)");

  GenerateArgs ga;
  auto* generate = app.add_subcommand("generate", "Graph generators");
  generate->add_option("kind", ga.kind, "corona random partial-ktree path cycle complete star caterpillar petersen")
      ->required();
  generate->add_option("graph", ga.graph, "Base graph for corona");
  generate->add_option("--n", ga.n);
  generate->add_option("--p", ga.p);
  generate->add_option("--seed", ga.seed);
  generate->add_option("--width", ga.width);
  generate->add_option("--keep", ga.keep);
  generate->add_option("--spine", ga.spine);
  generate->add_option("--legs", ga.legs);
  generate->add_flag("--connected", ga.connected);
  generate->add_option("--out", ga.out);

  DecomposeArgs da;
  auto* decompose = app.add_subcommand("decompose", "Tree decompositions");
  decompose->add_option("graph", da.graph)->required();
  decompose->add_option("--method", da.method, "exact min-fill min-degree")
      ->check(CLI::IsMember({"exact", "min-fill", "min-degree"}));
  decompose->add_flag("--nice", da.nice, "Emit the nice form");
  decompose->add_option("--out", da.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  Output out(format == "json-lines");
  try {
    if (*solve) return run_solve(sa, out);
    if (*verify) return run_verify(va, out);
    if (*convert) return run_convert(ca, out);
    if (*reduce) return run_reduce(ra, out);
    if (*generate) return run_generate(ga);
    if (*decompose) return run_decompose(da, out);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kParse;
  } catch (const ResourceExhausted& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}
