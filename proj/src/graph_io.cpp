#include "zf/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "zf/errors.hpp"

namespace zf::io {
namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long long to_int(std::string_view tok, std::size_t line_no) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("line " + std::to_string(line_no) + ": expected integer, got '" + std::string(tok) + "'");
  return value;
}

bool blank(std::string_view line) { return tokens(line).empty(); }

Graph parse_pace(const std::vector<std::string_view>& lines) {
  long long n = -1, m = -1;
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::pair<long long, std::string>> labels;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto tok = tokens(lines[i]);
    if (tok.empty()) continue;
    if (tok[0] == "c") {
      if (tok.size() >= 4 && tok[1] == "label") {
        auto start = lines[i].find(tok[3]);
        labels.emplace_back(to_int(tok[2], i + 1), std::string(lines[i].substr(start)));
      }
      continue;
    }
    if (tok[0] == "p") {
      if (n >= 0) throw ParseError("line " + std::to_string(i + 1) + ": second header");
      if (tok.size() != 4 || tok[1] != "tw") throw ParseError("line " + std::to_string(i + 1) + ": malformed header");
      n = to_int(tok[2], i + 1);
      m = to_int(tok[3], i + 1);
      if (n < 0 || m < 0) throw ParseError("negative count in header");
      continue;
    }
    if (n < 0) throw ParseError("line " + std::to_string(i + 1) + ": edge before header");
    if (tok.size() != 2) throw ParseError("line " + std::to_string(i + 1) + ": expected two vertex ids");
    long long u = to_int(tok[0], i + 1), v = to_int(tok[1], i + 1);
    if (u < 1 || v < 1 || u > n || v > n)
      throw ParseError("line " + std::to_string(i + 1) + ": vertex id out of range");
    if (u == v) throw ParseError("line " + std::to_string(i + 1) + ": self-loop");
    edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
  }
  if (n < 0) throw ParseError("missing 'p tw' header");
  if (static_cast<long long>(edges.size()) != m)
    throw ParseError("header announces " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  Graph g(static_cast<int>(n), edges);
  if (!labels.empty()) {
    std::vector<std::string> names(static_cast<std::size_t>(n));
    for (auto& [id, text] : labels) {
      if (id < 1 || id > n) throw ParseError("label for vertex out of range");
      names[static_cast<std::size_t>(id - 1)] = text;
    }
    g.set_labels(std::move(names));
  }
  return g;
}

Graph parse_plain(const std::vector<std::string_view>& lines) {
  long long n = -1;
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto tok = tokens(lines[i]);
    if (tok.empty() || tok[0].front() == '#') continue;
    if (n < 0) {
      if (tok.size() != 1) throw ParseError("line " + std::to_string(i + 1) + ": expected vertex count");
      n = to_int(tok[0], i + 1);
      if (n < 0) throw ParseError("negative vertex count");
      continue;
    }
    if (tok.size() != 2) throw ParseError("line " + std::to_string(i + 1) + ": expected two vertex ids");
    long long u = to_int(tok[0], i + 1), v = to_int(tok[1], i + 1);
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ParseError("line " + std::to_string(i + 1) + ": vertex id out of range");
    if (u == v) throw ParseError("line " + std::to_string(i + 1) + ": self-loop");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (n < 0) throw ParseError("empty graph text");
  return Graph(static_cast<int>(n), edges);
}

}  // namespace

Graph parse_graph(std::string_view text) {
  auto lines = split_lines(text);
  for (auto line : lines) {
    auto tok = tokens(line);
    if (tok.empty()) continue;
    if (tok[0] == "p" || tok[0] == "c") return parse_pace(lines);
    break;
  }
  return parse_plain(lines);
}

std::string write_graph(const Graph& g) {
  std::ostringstream out;
  out << "p tw " << g.n() << ' ' << g.m() << '\n';
  if (g.has_labels())
    for (Vertex v = 0; v < g.n(); ++v)
      if (!g.labels()[static_cast<std::size_t>(v)].empty()) out << "c label " << v + 1 << ' ' << g.label(v) << '\n';
  for (auto [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

Hypergraph parse_hypergraph(std::string_view text) {
  auto lines = split_lines(text);
  Hypergraph h;
  long long expected = -1;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto tok = tokens(lines[i]);
    if (expected < 0) {
      if (tok.empty()) continue;
      if (tok.size() != 2) throw ParseError("hypergraph header must be '<|X|> <|E|>'");
      h.num_vertices = static_cast<int>(to_int(tok[0], i + 1));
      expected = to_int(tok[1], i + 1);
      if (h.num_vertices < 0 || expected < 0) throw ParseError("negative count in hypergraph header");
      continue;
    }
    if (static_cast<long long>(h.edges.size()) == expected) {
      if (!blank(lines[i])) throw ParseError("line " + std::to_string(i + 1) + ": more edges than announced");
      continue;
    }
    std::vector<Vertex> e;
    for (auto t : tok) {
      long long x = to_int(t, i + 1);
      if (x < 0 || x >= h.num_vertices) throw ParseError("line " + std::to_string(i + 1) + ": member out of range");
      e.push_back(static_cast<Vertex>(x));
    }
    h.edges.push_back(std::move(e));
  }
  if (expected < 0) throw ParseError("missing hypergraph header");
  if (static_cast<long long>(h.edges.size()) != expected) throw ParseError("fewer hyperedges than announced");
  return h;
}

std::string write_hypergraph(const Hypergraph& h) {
  std::ostringstream out;
  out << h.num_vertices << ' ' << h.edges.size() << '\n';
  for (const auto& e : h.edges) {
    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
    out << '\n';
  }
  return out.str();
}

std::vector<Vertex> parse_vertex_list(std::string_view text) {
  std::vector<Vertex> out;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto tok = tokens(lines[i]);
    if (tok.empty() || tok[0].front() == '#') continue;
    for (auto t : tok) out.push_back(static_cast<Vertex>(to_int(t, i + 1)));
  }
  return out;
}

std::string write_vertex_list(const std::vector<Vertex>& vs) {
  std::string out;
  for (Vertex v : vs) out += std::to_string(v) + '\n';
  return out;
}

std::vector<std::vector<Vertex>> parse_partition(std::string_view text) {
  std::vector<std::vector<Vertex>> classes;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto tok = tokens(lines[i]);
    if (tok.empty() || tok[0].front() == '#') continue;
    std::vector<Vertex> cls;
    for (auto t : tok) cls.push_back(static_cast<Vertex>(to_int(t, i + 1)));
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << content;
}

}  // namespace zf::io
