#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gallai/coloring.hpp"
#include "gallai/errors.hpp"
#include "gallai/graph.hpp"
#include "gallai/instances.hpp"

namespace gallai {

// Parsed form of the line-oriented instance format:
//   graph <n>
//   edge <u> <v>
//   list <v> <c>...
//   forbid <v> <c>...
//   precolor <v> <c>
//   mode <d3|d4>
//   # comment
// Vertices are 0-based; at most one of list/forbid per vertex.
struct InstanceFile {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::pair<int, std::vector<int>>> lists;
  std::vector<std::pair<int, std::vector<int>>> forbids;
  std::vector<std::pair<int, int>> precolors;
  std::optional<SolveMode> mode_hint;
};

inline InstanceFile parse_instance(const std::string& text) {
  InstanceFile file;
  bool have_graph = false;
  std::set<std::pair<int, int>> seen_edges;
  std::set<int> listed, precolored;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head[0] == '#') continue;

    auto want_int = [&](const char* what) {
      long long x;
      if (!(ls >> x)) throw parse_error(lineno, std::string("expected ") + what);
      return x;
    };
    auto want_vertex = [&](const char* what) {
      long long x = want_int(what);
      if (!have_graph) throw parse_error(lineno, "record before the graph line");
      if (x < 0 || x >= file.n)
        throw parse_error(lineno, std::string(what) + " " + std::to_string(x) + " out of range");
      return static_cast<int>(x);
    };
    auto want_colors = [&]() {
      std::vector<int> colors;
      long long c;
      while (ls >> c) {
        if (c < 1) throw parse_error(lineno, "colors must be positive");
        colors.push_back(static_cast<int>(c));
      }
      if (colors.empty()) throw parse_error(lineno, "expected at least one color");
      return colors;
    };
    auto no_trailing = [&]() {
      std::string rest;
      if (ls >> rest) throw parse_error(lineno, "unexpected trailing token '" + rest + "'");
    };

    if (head == "graph") {
      if (have_graph) throw parse_error(lineno, "duplicate graph line");
      long long n = want_int("vertex count");
      if (n < 0) throw parse_error(lineno, "negative vertex count");
      file.n = static_cast<int>(n);
      have_graph = true;
      no_trailing();
    } else if (head == "edge") {
      int u = want_vertex("endpoint");
      int v = want_vertex("endpoint");
      no_trailing();
      if (u == v) throw parse_error(lineno, "self-loop at vertex " + std::to_string(u));
      auto key = std::minmax(u, v);
      if (!seen_edges.insert({key.first, key.second}).second)
        throw parse_error(lineno, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
      file.edges.emplace_back(u, v);
    } else if (head == "list" || head == "forbid") {
      int v = want_vertex("vertex");
      auto colors = want_colors();
      if (!listed.insert(v).second)
        throw parse_error(lineno, "vertex " + std::to_string(v) +
                                      " already has a list or forbid record");
      if (head == "list")
        file.lists.emplace_back(v, std::move(colors));
      else
        file.forbids.emplace_back(v, std::move(colors));
    } else if (head == "precolor") {
      int v = want_vertex("vertex");
      long long c = want_int("color");
      no_trailing();
      if (c < 1) throw parse_error(lineno, "colors must be positive");
      if (!precolored.insert(v).second)
        throw parse_error(lineno, "vertex " + std::to_string(v) + " precolored twice");
      file.precolors.emplace_back(v, static_cast<int>(c));
    } else if (head == "mode") {
      std::string m;
      if (!(ls >> m)) throw parse_error(lineno, "expected d3 or d4");
      no_trailing();
      if (m == "d3")
        file.mode_hint = SolveMode::kDistance3;
      else if (m == "d4")
        file.mode_hint = SolveMode::kDistance4;
      else
        throw parse_error(lineno, "unknown mode '" + m + "'");
    } else {
      throw parse_error(lineno, "unknown directive '" + head + "'");
    }
  }
  if (!have_graph) throw parse_error(lineno == 0 ? 1 : lineno, "missing graph line");
  return file;
}

inline std::string serialize_instance(const InstanceFile& file) {
  std::ostringstream out;
  out << "graph " << file.n << "\n";
  if (file.mode_hint)
    out << "mode " << (*file.mode_hint == SolveMode::kDistance3 ? "d3" : "d4") << "\n";
  for (auto [u, v] : file.edges) out << "edge " << u << " " << v << "\n";
  for (const auto& [v, colors] : file.lists) {
    out << "list " << v;
    for (int c : colors) out << " " << c;
    out << "\n";
  }
  for (const auto& [v, colors] : file.forbids) {
    out << "forbid " << v;
    for (int c : colors) out << " " << c;
    out << "\n";
  }
  for (auto [v, c] : file.precolors) out << "precolor " << v << " " << c << "\n";
  return out.str();
}

// Solver-ready view: forbid records become palette lists, every vertex gets
// the default palette when unspecified, and the restricted set collects the
// vertices whose list ends up shorter than the palette.
struct ProblemInput {
  Graph graph;
  std::vector<int> restricted;
  ListAssignment lists;
  PartialColoring precoloring;
  std::optional<SolveMode> mode_hint;
};

inline ProblemInput to_problem(const InstanceFile& file) {
  ProblemInput pi;
  pi.graph = Graph(file.n, file.edges);
  const int delta = pi.graph.max_degree();
  pi.lists = palette_lists(pi.graph);
  for (const auto& [v, colors] : file.lists) pi.lists.set(v, colors);
  if (!file.forbids.empty()) {
    ForbiddenAssignment fb(file.n);
    for (const auto& [v, colors] : file.forbids) fb.set(v, colors);
    ListAssignment translated = lists_from_forbidden(pi.graph, fb);
    for (const auto& [v, colors] : file.forbids) pi.lists.set(v, translated.at(v));
  }
  for (int v = 0; v < file.n; ++v)
    if (static_cast<int>(pi.lists.at(v).size()) < delta) pi.restricted.push_back(v);
  pi.precoloring = PartialColoring(file.n);
  for (auto [v, c] : file.precolors) pi.precoloring.set(v, c);
  pi.mode_hint = file.mode_hint;
  return pi;
}

inline InstanceFile bundle_to_file(const InstanceBundle& b) {
  InstanceFile file;
  file.n = b.graph.vertex_count();
  file.edges = b.graph.edges();
  const int delta = b.graph.max_degree();
  for (int v = 0; v < file.n; ++v) {
    if (!b.lists.defined(v)) continue;
    const auto& list = b.lists.at(v);
    std::vector<int> palette;
    for (int c = 1; c <= delta; ++c) palette.push_back(c);
    if (list != palette) file.lists.emplace_back(v, list);
  }
  if (b.precoloring)
    for (int v = 0; v < file.n; ++v)
      if (b.precoloring->colored(v)) file.precolors.emplace_back(v, b.precoloring->color(v));
  file.mode_hint = b.mode_hint;
  return file;
}

// Coloring files are `color <v> <c>` lines plus comments.
inline PartialColoring parse_coloring(const std::string& text, int n) {
  PartialColoring c(n);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head[0] == '#') continue;
    if (head != "color") throw parse_error(lineno, "unknown directive '" + head + "'");
    long long v, col;
    if (!(ls >> v >> col)) throw parse_error(lineno, "expected vertex and color");
    if (v < 0 || v >= n) throw parse_error(lineno, "vertex out of range");
    if (col < 1) throw parse_error(lineno, "colors must be positive");
    c.set(static_cast<int>(v), static_cast<int>(col));
  }
  return c;
}

inline std::string serialize_coloring(const PartialColoring& c) {
  std::ostringstream out;
  for (int v = 0; v < c.size(); ++v)
    if (c.colored(v)) out << "color " << v << " " << c.color(v) << "\n";
  return out.str();
}

}  // namespace gallai
