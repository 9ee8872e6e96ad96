#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "gallai/errors.hpp"

namespace gallai {

// Undirected multigraph with stable edge ids; parallel edges allowed, no
// self-loops.
struct Multigraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  int add_edge(int u, int v) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("multigraph endpoint out of range");
    if (u == v) throw std::invalid_argument("multigraph self-loop");
    edges.emplace_back(u, v);
    return static_cast<int>(edges.size()) - 1;
  }

  int edge_count() const { return static_cast<int>(edges.size()); }

  std::vector<int> degrees() const {
    std::vector<int> d(n, 0);
    for (const auto& e : edges) {
      ++d[e.first];
      ++d[e.second];
    }
    return d;
  }

  int max_degree() const {
    auto d = degrees();
    return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
  }

  int other_end(int edge, int v) const {
    return edges[edge].first == v ? edges[edge].second : edges[edge].first;
  }
};

// Two-coloring of the vertices across edges, or nullopt on an odd cycle.
inline std::optional<std::vector<int>> bipartition(const Multigraph& mg) {
  std::vector<std::vector<int>> adj(mg.n);
  for (const auto& e : mg.edges) {
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  std::vector<int> side(mg.n, -1);
  for (int s = 0; s < mg.n; ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : adj[v]) {
        if (side[w] == -1) {
          side[w] = 1 - side[v];
          q.push(w);
        } else if (side[w] == side[v]) {
          return std::nullopt;
        }
      }
    }
  }
  return side;
}

// Proper edge coloring of a bipartite multigraph with colors 1..k, where k is
// at least the maximum degree. Classic alternating-path augmentation: to
// color edge uv, take a color free at u and one free at v; if they differ,
// swap them along the maximal two-colored path from u, which cannot reach v
// in a bipartite graph.
inline std::vector<int> konig_edge_coloring(const Multigraph& mg, int k) {
  if (!bipartition(mg)) throw std::invalid_argument("konig_edge_coloring: graph not bipartite");
  if (k < mg.max_degree())
    throw std::invalid_argument("konig_edge_coloring: fewer colors than the maximum degree");

  // incident[v][c-1] = edge at v colored c, or -1.
  std::vector<std::vector<int>> incident(mg.n, std::vector<int>(k, -1));
  std::vector<int> color(mg.edge_count(), 0);

  auto free_color = [&](int v) {
    for (int c = 1; c <= k; ++c)
      if (incident[v][c - 1] == -1) return c;
    throw internal_error("konig_edge_coloring: no free color");
  };

  for (int e = 0; e < mg.edge_count(); ++e) {
    auto [u, v] = mg.edges[e];
    int a = free_color(u);
    int b = free_color(v);
    if (a != b) {
      // Walk the (b,a)-alternating path from u and swap its colors.
      std::vector<int> path;
      int cur = u, want = b;
      while (true) {
        int next_edge = incident[cur][want - 1];
        if (next_edge == -1) break;
        path.push_back(next_edge);
        cur = mg.other_end(next_edge, cur);
        want = (want == b) ? a : b;
      }
      for (int pe : path) {
        auto [x, y] = mg.edges[pe];
        int old = color[pe];
        int fresh = (old == a) ? b : a;
        incident[x][old - 1] = -1;
        incident[y][old - 1] = -1;
        color[pe] = fresh;
        incident[x][fresh - 1] = pe;
        incident[y][fresh - 1] = pe;
      }
      if (incident[u][b - 1] != -1 || incident[v][b - 1] != -1)
        throw internal_error("konig_edge_coloring: augmentation failed");
    }
    color[e] = b;
    incident[u][b - 1] = e;
    incident[v][b - 1] = e;
  }
  return color;
}

// Alternating edge selection along an Euler circuit of every component of an
// even-degree multigraph. Each vertex retains exactly half its degree, except
// that a circuit of odd length must skip one extra edge; the resulting
// deficit is steered onto a vertex with gap_ok set whenever the component has
// one. Circuits start at the lowest-id vertex of their component.
inline std::vector<char> euler_alternate_selection(const Multigraph& mg,
                                                   const std::vector<char>& gap_ok) {
  for (int d : mg.degrees())
    if (d % 2 != 0) throw internal_error("euler_alternate_selection: odd degree");

  std::vector<std::vector<std::pair<int, int>>> adj(mg.n);  // (edge, other end)
  for (int e = 0; e < mg.edge_count(); ++e) {
    adj[mg.edges[e].first].emplace_back(e, mg.edges[e].second);
    adj[mg.edges[e].second].emplace_back(e, mg.edges[e].first);
  }
  std::vector<char> used(mg.edge_count(), 0), selected(mg.edge_count(), 0);
  std::vector<size_t> next_at(mg.n, 0);

  for (int start = 0; start < mg.n; ++start) {
    if (adj[start].empty()) continue;
    bool fresh = false;
    for (const auto& [e, w] : adj[start])
      if (!used[e]) fresh = true;
    if (!fresh) continue;

    // Hierholzer: circuit_edges[i] leads from circuit_verts[i] to
    // circuit_verts[i+1]; the walk starts and ends at `start`.
    std::vector<int> circuit_edges, circuit_verts;
    std::vector<std::pair<int, int>> stack{{start, -1}};
    while (!stack.empty()) {
      auto [v, via] = stack.back();
      bool advanced = false;
      while (next_at[v] < adj[v].size()) {
        auto [e, w] = adj[v][next_at[v]];
        ++next_at[v];
        if (used[e]) continue;
        used[e] = 1;
        stack.emplace_back(w, e);
        advanced = true;
        break;
      }
      if (!advanced) {
        stack.pop_back();
        if (via != -1) {
          circuit_edges.push_back(via);
          circuit_verts.push_back(v);
        }
      }
    }
    // The unwinding above produces the circuit reversed; direction is
    // irrelevant for alternation but fix it for determinism.
    std::reverse(circuit_edges.begin(), circuit_edges.end());
    std::reverse(circuit_verts.begin(), circuit_verts.end());
    // circuit_verts now lists the endpoint reached after each edge, with the
    // final entry equal to `start`.
    const int len = static_cast<int>(circuit_edges.size());
    if (len == 0) continue;
    if (len % 2 == 0) {
      for (int i = 0; i < len; i += 2) selected[circuit_edges[i]] = 1;
    } else {
      // Visit i sits between edges i and i+1 (cyclically) at circuit_verts[i].
      int gap = len - 1;  // default: the start vertex absorbs the deficit
      for (int i = 0; i < len; ++i)
        if (gap_ok[circuit_verts[i]]) {
          gap = i;
          break;
        }
      // Leave edges gap and gap+1 unselected, keep every second one after.
      for (int t = 0; t < (len - 1) / 2; ++t)
        selected[circuit_edges[(gap + 2 + 2 * t) % len]] = 1;
    }
  }
  return selected;
}

}  // namespace gallai
