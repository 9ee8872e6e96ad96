#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "gallai/graph.hpp"

namespace testutil {

// Small deterministic RNG for seeded test loops.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x2545f4914f6cdd1dULL) {}
  std::uint64_t next() {
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    return state_;
  }
  int uniform(int lo, int hi) { return lo + static_cast<int>(next() % (hi - lo + 1)); }
  bool chance(double p) { return (next() >> 11) * 0x1.0p-53 < p; }

 private:
  std::uint64_t state_;
};

inline gallai::Graph path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return gallai::Graph(n, e);
}

inline gallai::Graph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return gallai::Graph(n, e);
}

inline gallai::Graph complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return gallai::Graph(n, e);
}

// All graphs on n labeled vertices, as edge bitmasks over the pairs
// (0,1),(0,2),...,(n-2,n-1).
inline std::vector<std::pair<int, int>> pair_table(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  return pairs;
}

inline gallai::Graph graph_from_mask(int n, std::uint64_t mask) {
  auto pairs = pair_table(n);
  std::vector<std::pair<int, int>> edges;
  for (size_t k = 0; k < pairs.size(); ++k)
    if (mask >> k & 1) edges.push_back(pairs[k]);
  return gallai::Graph(n, edges);
}

inline gallai::Graph random_connected_graph(Rng& rng, int n, int max_deg) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(v, rng.uniform(0, v - 1));
  gallai::Graph g(n, edges);
  int additions = rng.uniform(0, 2 * n);
  for (int i = 0; i < additions; ++i) {
    int x = rng.uniform(0, n - 1), y = rng.uniform(0, n - 1);
    if (x == y || g.adjacent(x, y)) continue;
    if (g.degree(x) >= max_deg || g.degree(y) >= max_deg) continue;
    edges.emplace_back(x, y);
    g = gallai::Graph(n, edges);
  }
  return g;
}

// Independent block oracle for small graphs: two edges lie in a common block
// exactly when some simple cycle passes through both. Enumerates all simple
// cycles by DFS, unions their edge sets, and leaves bridges and isolated
// vertices as their own blocks.
inline std::vector<std::set<int>> brute_force_blocks(const gallai::Graph& g) {
  auto edges = g.edges();
  auto edge_id = [&](int u, int v) {
    if (u > v) std::swap(u, v);
    for (size_t i = 0; i < edges.size(); ++i)
      if (edges[i] == std::make_pair(u, v)) return static_cast<int>(i);
    return -1;
  };
  std::vector<int> parent(edges.size());
  for (size_t i = 0; i < edges.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };

  // Enumerate simple cycles: paths starting at their smallest vertex.
  std::vector<int> stack;
  std::vector<char> used(g.vertex_count(), 0);
  std::function<void(int, int)> dfs = [&](int start, int v) {
    for (int w : g.neighbors(v)) {
      if (w == start && stack.size() >= 3) {
        for (size_t i = 0; i + 1 < stack.size(); ++i)
          unite(edge_id(stack[i], stack[i + 1]), edge_id(stack[0], stack[1]));
        unite(edge_id(stack.back(), start), edge_id(stack[0], stack[1]));
      }
      if (w <= start || used[w]) continue;
      used[w] = 1;
      stack.push_back(w);
      dfs(start, w);
      stack.pop_back();
      used[w] = 0;
    }
  };
  for (int s = 0; s < g.vertex_count(); ++s) {
    stack = {s};
    used.assign(g.vertex_count(), 0);
    used[s] = 1;
    dfs(s, s);
  }

  std::vector<std::set<int>> blocks;
  std::vector<char> claimed(edges.size(), 0);
  for (size_t i = 0; i < edges.size(); ++i) {
    if (claimed[i]) continue;
    std::set<int> verts;
    for (size_t j = 0; j < edges.size(); ++j)
      if (find(static_cast<int>(j)) == find(static_cast<int>(i))) {
        claimed[j] = 1;
        verts.insert(edges[j].first);
        verts.insert(edges[j].second);
      }
    blocks.push_back(std::move(verts));
  }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) == 0) blocks.push_back({v});
  return blocks;
}

}  // namespace testutil
