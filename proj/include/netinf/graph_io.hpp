#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "netinf/graph.hpp"
#include "netinf/io_util.hpp"

namespace netinf {

enum class GraphFormat { EdgeList, PajekNet };

namespace detail {

inline std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] inline void parse_fail(const std::string& context, int line, const std::string& msg) {
  throw ParseError(context + ":" + std::to_string(line) + ": " + msg);
}

inline int parse_int(const std::string& tok, const std::string& what, const std::string& ctx,
                     int line) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) parse_fail(ctx, line, "invalid " + what + " '" + tok + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    parse_fail(ctx, line, "invalid " + what + " '" + tok + "'");
  }
}

inline int parse_node_id(const std::string& tok, int n, const std::string& ctx, int line) {
  int id = parse_int(tok, "node id", ctx, line);
  if (id < 1 || id > n)
    throw IndexError(ctx + ":" + std::to_string(line) + ": node id " + std::to_string(id) +
                     " outside 1.." + std::to_string(n));
  return id - 1;  // to 0-based
}

inline double parse_weight(const std::string& tok, const std::string& ctx, int line) {
  try {
    std::size_t pos = 0;
    double w = std::stod(tok, &pos);
    if (pos != tok.size()) parse_fail(ctx, line, "invalid weight '" + tok + "'");
    return w;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    parse_fail(ctx, line, "invalid weight '" + tok + "'");
  }
}

inline std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream iss(line);
  std::vector<std::string> toks;
  std::string t;
  while (iss >> t) toks.push_back(t);
  return toks;
}

inline Graph read_edge_list(std::istream& in, const std::string& ctx) {
  std::string line;
  int lineno = 0;
  int n = -1;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (n < 0) {
      if (toks.size() != 2 || lowercase(toks[0]) != "n")
        parse_fail(ctx, lineno, "expected header 'n <count>'");
      n = parse_int(toks[1], "node count", ctx, lineno);
      if (n < 2) parse_fail(ctx, lineno, "node count must be at least 2");
      continue;
    }
    if (toks.size() != 2 && toks.size() != 3)
      parse_fail(ctx, lineno, "expected 'i j [w]'");
    int i = parse_node_id(toks[0], n, ctx, lineno);
    int j = parse_node_id(toks[1], n, ctx, lineno);
    if (i == j) parse_fail(ctx, lineno, "self-loop on node " + toks[0]);
    double w = toks.size() == 3 ? parse_weight(toks[2], ctx, lineno) : 1.0;
    if (w < 0.0) parse_fail(ctx, lineno, "negative weight");
    if (i > j) std::swap(i, j);
    for (const Edge& e : edges)
      if (e.i == i && e.j == j) parse_fail(ctx, lineno, "duplicate edge");
    edges.push_back({i, j, w});
  }
  if (n < 0) throw ParseError(ctx + ":1: missing 'n <count>' header");
  return Graph(n, std::move(edges));
}

/// Pajek .net subset: *Vertices, then *Arcs / *Edges sections. Arcs and edges
/// are both read as undirected unit-weight links (arc i->j or j->i yields one
/// edge {i,j}); duplicates collapse.
inline Graph read_pajek(std::istream& in, const std::string& ctx) {
  std::string line;
  int lineno = 0;
  int n = -1;
  enum class Section { None, Vertices, Links } section = Section::None;
  std::map<std::pair<int, int>, double> links;

  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('%'); h != std::string::npos) line.erase(h);  // Pajek comments
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks[0][0] == '*') {
      std::string name = lowercase(toks[0]);
      if (name == "*vertices") {
        if (toks.size() < 2) parse_fail(ctx, lineno, "*Vertices needs a count");
        n = parse_int(toks[1], "node count", ctx, lineno);
        if (n < 2) parse_fail(ctx, lineno, "node count must be at least 2");
        section = Section::Vertices;
      } else if (name == "*arcs" || name == "*edges") {
        if (n < 0) parse_fail(ctx, lineno, "*Vertices must come first");
        section = Section::Links;
      } else {
        parse_fail(ctx, lineno, "unsupported section '" + toks[0] + "'");
      }
      continue;
    }
    switch (section) {
      case Section::None:
        parse_fail(ctx, lineno, "content before *Vertices");
      case Section::Vertices:
        // vertex label lines; ids are implicit, nothing to record
        break;
      case Section::Links: {
        if (toks.size() != 2 && toks.size() != 3)
          parse_fail(ctx, lineno, "expected 'i j [w]'");
        int i = parse_node_id(toks[0], n, ctx, lineno);
        int j = parse_node_id(toks[1], n, ctx, lineno);
        if (i == j) parse_fail(ctx, lineno, "self-loop on node " + toks[0]);
        if (i > j) std::swap(i, j);
        links[{i, j}] = 1.0;  // unweighted interpretation
        break;
      }
    }
  }
  if (n < 0) throw ParseError(ctx + ":1: missing *Vertices section");
  std::vector<Edge> edges;
  edges.reserve(links.size());
  for (const auto& [key, w] : links) edges.push_back({key.first, key.second, w});
  return Graph(n, std::move(edges));
}

}  // namespace detail

inline Graph read_graph(std::istream& in, GraphFormat format, const std::string& context = "<stream>") {
  return format == GraphFormat::EdgeList ? detail::read_edge_list(in, context)
                                         : detail::read_pajek(in, context);
}

inline Graph read_graph(const std::filesystem::path& path, GraphFormat format) {
  auto in = open_input(path);
  return read_graph(in, format, path.string());
}

/// Writes 1-based node ids; weights round-trip exactly in edge-list format.
inline void write_graph(const Graph& g, std::ostream& out, GraphFormat format) {
  if (format == GraphFormat::EdgeList) {
    out << "n " << g.node_count() << "\n";
    for (const Edge& e : g.edges())
      out << (e.i + 1) << " " << (e.j + 1) << " " << format_double(e.weight) << "\n";
  } else {
    out << "*Vertices " << g.node_count() << "\n*Edges\n";
    for (const Edge& e : g.edges()) out << (e.i + 1) << " " << (e.j + 1) << " 1\n";
  }
}

inline void write_graph(const Graph& g, const std::filesystem::path& path, GraphFormat format) {
  atomic_write_file(path, [&](std::ostream& out) { write_graph(g, out, format); });
}

}  // namespace netinf
