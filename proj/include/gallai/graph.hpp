#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gallai/errors.hpp"

namespace gallai {

// Simple undirected graph on dense vertex ids 0..n-1. Adjacency lists are
// sorted and deduplicated; construction rejects self-loops and out-of-range
// endpoints. Immutable after construction.
class Graph {
 public:
  Graph() = default;

  Graph(int n, const std::vector<std::pair<int, int>>& edges) : adj_(check_n(n)) {
    for (const auto& [u, v] : edges) {
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(u) + "," +
                                    std::to_string(v) + ")");
      if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (auto& nb : adj_) {
      std::sort(nb.begin(), nb.end());
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
  }

  static Graph build(int n, const std::vector<std::pair<int, int>>& edges) {
    return Graph(n, edges);
  }

  int vertex_count() const { return static_cast<int>(adj_.size()); }

  int edge_count() const {
    int deg_sum = 0;
    for (const auto& nb : adj_) deg_sum += static_cast<int>(nb.size());
    return deg_sum / 2;
  }

  const std::vector<int>& neighbors(int v) const { return adj_[check_v(v)]; }

  int degree(int v) const { return static_cast<int>(adj_[check_v(v)].size()); }

  int max_degree() const {
    int d = 0;
    for (const auto& nb : adj_) d = std::max(d, static_cast<int>(nb.size()));
    return d;
  }

  bool adjacent(int u, int v) const {
    const auto& nb = adj_[check_v(u)];
    return std::binary_search(nb.begin(), nb.end(), check_v(v));
  }

  // Every pair of distinct vertices adjacent; vacuously true for n <= 1.
  bool is_complete() const {
    const int n = vertex_count();
    for (const auto& nb : adj_)
      if (static_cast<int>(nb.size()) != n - 1) return false;
    return true;
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < vertex_count(); ++u)
      for (int v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

 private:
  static int check_n(int n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    return n;
  }
  int check_v(int v) const {
    if (v < 0 || v >= vertex_count())
      throw std::invalid_argument("vertex out of range: " + std::to_string(v));
    return v;
  }

  std::vector<std::vector<int>> adj_;
};

// BFS distances from src; -1 for unreachable vertices.
inline std::vector<int> bfs_distances(const Graph& g, int src) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::queue<int> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : g.neighbors(v)) {
      if (dist[w] == -1) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

// Shortest-path length, or nullopt when u and v are in different components.
inline std::optional<int> pairwise_distance(const Graph& g, int u, int v) {
  if (u == v) return 0;
  auto dist = bfs_distances(g, u);
  if (dist[v] == -1) return std::nullopt;
  return dist[v];
}

inline bool is_connected(const Graph& g) {
  if (g.vertex_count() <= 1) return true;
  auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d == -1; });
}

// Vertex sets of connected components, each sorted, ordered by smallest member.
inline std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<std::vector<int>> comps;
  std::vector<char> seen(g.vertex_count(), 0);
  for (int s = 0; s < g.vertex_count(); ++s) {
    if (seen[s]) continue;
    std::vector<int> comp{s};
    seen[s] = 1;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : g.neighbors(v))
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
          q.push(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

// Induced subgraph with a local relabeling 0..k-1 plus both direction maps.
struct ComponentView {
  Graph graph;                 // induced subgraph on local ids
  std::vector<int> to_global;  // local id -> parent vertex id
  std::vector<int> to_local;   // parent vertex id -> local id, -1 if absent
};

inline ComponentView induced_component(const Graph& g, const std::vector<int>& vertices) {
  ComponentView view;
  view.to_local.assign(g.vertex_count(), -1);
  view.to_global = vertices;
  std::sort(view.to_global.begin(), view.to_global.end());
  for (int i = 0; i < static_cast<int>(view.to_global.size()); ++i)
    view.to_local[view.to_global[i]] = i;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < static_cast<int>(view.to_global.size()); ++i)
    for (int w : g.neighbors(view.to_global[i])) {
      int j = view.to_local[w];
      if (j > i) edges.emplace_back(i, j);
    }
  view.graph = Graph(static_cast<int>(view.to_global.size()), edges);
  return view;
}

}  // namespace gallai
