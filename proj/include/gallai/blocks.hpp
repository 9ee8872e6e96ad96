#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gallai/graph.hpp"

namespace gallai {

// Blocks (maximal 2-connected subgraphs, bridge edges, and isolated vertices),
// cut vertices, and the bipartite block-cutpoint tree. A vertex is a cut
// vertex exactly when it lies in two or more blocks.
struct BlockDecomposition {
  std::vector<std::vector<int>> blocks;      // sorted vertex sets
  std::vector<int> cut_vertices;             // sorted
  std::vector<std::vector<int>> membership;  // per vertex: sorted block ids

  // Block-cutpoint tree nodes: block b -> node b, cut vertex with index i in
  // cut_vertices -> node blocks.size() + i. Edges join blocks to the cut
  // vertices they contain.
  std::vector<std::pair<int, int>> bc_edges;

  bool is_cut(int v) const { return membership[v].size() >= 2; }
  int block_count() const { return static_cast<int>(blocks.size()); }
};

// Lowpoint algorithm, iterative. Isolated vertices become singleton blocks,
// bridges become two-vertex blocks.
inline BlockDecomposition block_decomposition(const Graph& g) {
  const int n = g.vertex_count();
  BlockDecomposition dec;
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<std::pair<int, int>> edge_stack;
  int timer = 0;

  struct Frame {
    int v;
    int parent;
    size_t next = 0;
    bool parent_skipped = false;
  };

  auto emit_block = [&](int p, int v) {
    std::vector<int> verts;
    while (true) {
      auto e = edge_stack.back();
      edge_stack.pop_back();
      verts.push_back(e.first);
      verts.push_back(e.second);
      if (e.first == p && e.second == v) break;
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    dec.blocks.push_back(std::move(verts));
  };

  for (int root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    if (g.degree(root) == 0) {
      disc[root] = timer++;
      dec.blocks.push_back({root});
      continue;
    }
    std::vector<Frame> stack;
    stack.push_back({root, -1});
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& nb = g.neighbors(f.v);
      if (f.next < nb.size()) {
        int w = nb[f.next++];
        if (w == f.parent && !f.parent_skipped) {
          f.parent_skipped = true;
          continue;
        }
        if (disc[w] == -1) {
          edge_stack.emplace_back(f.v, w);
          disc[w] = low[w] = timer++;
          stack.push_back({w, f.v});
        } else if (disc[w] < disc[f.v]) {
          edge_stack.emplace_back(f.v, w);
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        int v = f.v;
        stack.pop_back();
        if (!stack.empty()) {
          int p = stack.back().v;
          low[p] = std::min(low[p], low[v]);
          if (low[v] >= disc[p]) emit_block(p, v);
        }
      }
    }
  }

  dec.membership.assign(n, {});
  for (int b = 0; b < dec.block_count(); ++b)
    for (int v : dec.blocks[b]) dec.membership[v].push_back(b);
  for (int v = 0; v < n; ++v)
    if (dec.membership[v].size() >= 2) dec.cut_vertices.push_back(v);
  for (int i = 0; i < static_cast<int>(dec.cut_vertices.size()); ++i)
    for (int b : dec.membership[dec.cut_vertices[i]])
      dec.bc_edges.emplace_back(b, dec.block_count() + i);
  return dec;
}

// Block ids whose block contains at most one cut vertex.
inline std::vector<int> leaf_blocks(const BlockDecomposition& dec) {
  std::vector<int> out;
  for (int b = 0; b < dec.block_count(); ++b) {
    int cuts = 0;
    for (int v : dec.blocks[b])
      if (dec.is_cut(v)) ++cuts;
    if (cuts <= 1) out.push_back(b);
  }
  return out;
}

inline bool block_is_complete(const Graph& g, const std::vector<int>& block) {
  for (size_t i = 0; i < block.size(); ++i)
    for (size_t j = i + 1; j < block.size(); ++j)
      if (!g.adjacent(block[i], block[j])) return false;
  return true;
}

inline bool block_is_odd_cycle(const Graph& g, const std::vector<int>& block) {
  if (block.size() < 3 || block.size() % 2 == 0) return false;
  for (int v : block) {
    int inside = 0;
    for (int w : g.neighbors(v))
      if (std::binary_search(block.begin(), block.end(), w)) ++inside;
    if (inside != 2) return false;
  }
  return true;
}

// Connected graph in which every block is a complete graph or an odd cycle.
inline bool is_gallai_tree(const Graph& g) {
  if (!is_connected(g)) throw std::invalid_argument("is_gallai_tree requires a connected graph");
  auto dec = block_decomposition(g);
  for (const auto& block : dec.blocks)
    if (!block_is_complete(g, block) && !block_is_odd_cycle(g, block)) return false;
  return true;
}

}  // namespace gallai
