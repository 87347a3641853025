#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "zf/graph.hpp"

namespace zf::io {

/// Reads either PACE `p tw n m` text (1-based ids, `c` comments) or the plain
/// edge-list form (first line `n`, then 0-based `u v` pairs).
/// PACE comments of the form `c label <id> <text>` restore vertex labels.
Graph parse_graph(std::string_view text);

/// PACE form; labels, if any, are emitted as `c label` comments.
std::string write_graph(const Graph& g);

/// `<|X|> <|E|>` header, then one line of 0-based ids per edge.
Hypergraph parse_hypergraph(std::string_view text);
std::string write_hypergraph(const Hypergraph& h);

/// One 0-based vertex id per line; blank lines and `#` comments are skipped.
std::vector<Vertex> parse_vertex_list(std::string_view text);
std::string write_vertex_list(const std::vector<Vertex>& vs);

/// One class per line, 0-based ids separated by whitespace.
std::vector<std::vector<Vertex>> parse_partition(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace zf::io
