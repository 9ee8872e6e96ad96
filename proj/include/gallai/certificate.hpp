#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "gallai/blocks.hpp"
#include "gallai/coloring.hpp"
#include "gallai/graph.hpp"

namespace gallai {

// Witness that a connected graph has no coloring from exact-degree lists:
// every list has size equal to the vertex degree, the graph is a Gallai tree,
// and each block B carries a color set of size chi(B)-1 such that the sets of
// the blocks through any vertex partition that vertex's list.
struct UncolorabilityCertificate {
  std::vector<int> component;                  // vertices covered
  std::vector<std::vector<int>> blocks;        // block vertex sets
  std::vector<std::vector<int>> block_colors;  // per block: its color set
  bool condition_a = false;                    // list sizes equal degrees
  bool condition_b = false;                    // Gallai tree
  bool condition_c = false;                    // block color sets exist
};

namespace detail {

inline bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool disjoint_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j])
      ++i;
    else
      ++j;
  }
  return true;
}

// Backtracking over the blocks without a forced color set. `used` tracks the
// colors already claimed at each vertex by assigned blocks.
inline bool assign_free_blocks(const Graph& t, const BlockDecomposition& dec,
                               const ListAssignment& lists, const std::vector<int>& free_blocks,
                               size_t pos, std::vector<std::vector<int>>& used,
                               std::vector<std::vector<int>>& result) {
  if (pos == free_blocks.size()) return true;
  int b = free_blocks[pos];
  const auto& block = dec.blocks[b];
  const int want =
      block_is_complete(t, block) ? static_cast<int>(block.size()) - 1 : 2;

  // Colors usable by this block: present in every member's list, not yet used.
  std::vector<int> base = lists.at(block[0]);
  for (int v : block) {
    std::vector<int> narrowed;
    for (int c : base)
      if (lists.contains(v, c) && !std::binary_search(used[v].begin(), used[v].end(), c))
        narrowed.push_back(c);
    base.swap(narrowed);
  }
  if (static_cast<int>(base.size()) < want) return false;

  std::vector<int> pick(want);
  std::vector<int> idx(want);
  for (int i = 0; i < want; ++i) idx[i] = i;
  while (true) {
    for (int i = 0; i < want; ++i) pick[i] = base[idx[i]];
    for (int v : block) {
      auto& u = used[v];
      u.insert(u.end(), pick.begin(), pick.end());
      std::sort(u.begin(), u.end());
    }
    result[b] = pick;
    if (assign_free_blocks(t, dec, lists, free_blocks, pos + 1, used, result)) return true;
    for (int v : block) {
      auto& u = used[v];
      std::vector<int> rest;
      for (int c : u)
        if (std::find(pick.begin(), pick.end(), c) == pick.end()) rest.push_back(c);
      u.swap(rest);
    }
    // next combination of indices
    int i = want - 1;
    while (i >= 0 && idx[i] == static_cast<int>(base.size()) - want + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < want; ++j) idx[j] = idx[j - 1] + 1;
  }
  return false;
}

}  // namespace detail

// Searches for an uncolorability certificate of a connected graph under a
// supervalent list assignment (|L(v)| >= degree(v) everywhere). Returns one
// exactly when the graph has no coloring from the lists. Blocks containing a
// non-cut vertex have their color set forced by that vertex's list; only
// blocks made entirely of cut vertices need search.
inline std::optional<UncolorabilityCertificate> find_certificate(const Graph& t,
                                                                 const ListAssignment& lists) {
  const int n = t.vertex_count();
  if (!is_connected(t)) throw std::invalid_argument("find_certificate requires a connected graph");
  for (int v = 0; v < n; ++v)
    if (!lists.defined(v) || static_cast<int>(lists.at(v).size()) < t.degree(v))
      throw std::invalid_argument("find_certificate requires supervalent lists");

  for (int v = 0; v < n; ++v)
    if (static_cast<int>(lists.at(v).size()) != t.degree(v)) return std::nullopt;

  auto dec = block_decomposition(t);
  for (const auto& block : dec.blocks)
    if (!block_is_complete(t, block) && !block_is_odd_cycle(t, block)) return std::nullopt;

  const int nblocks = dec.block_count();
  std::vector<std::vector<int>> result(nblocks);
  std::vector<std::vector<int>> used(n);
  std::vector<int> free_blocks;

  for (int b = 0; b < nblocks; ++b) {
    const auto& block = dec.blocks[b];
    const bool complete = block_is_complete(t, block);
    const int want = complete ? static_cast<int>(block.size()) - 1 : 2;
    int non_cut = -1;
    for (int v : block)
      if (!dec.is_cut(v)) {
        non_cut = v;
        break;
      }
    if (non_cut == -1) {
      free_blocks.push_back(b);
      continue;
    }
    // Forced: a non-cut vertex lies in this block only, so its whole list
    // must be the block's set. All non-cut members must agree and every
    // member's list must contain the set.
    std::vector<int> forced = lists.at(non_cut);
    if (static_cast<int>(forced.size()) != want) return std::nullopt;
    for (int v : block) {
      if (!dec.is_cut(v) && lists.at(v) != forced) return std::nullopt;
      if (!detail::subset_of(forced, lists.at(v))) return std::nullopt;
    }
    for (int v : block) {
      if (!detail::disjoint_sorted(used[v], forced)) return std::nullopt;
      auto& u = used[v];
      u.insert(u.end(), forced.begin(), forced.end());
      std::sort(u.begin(), u.end());
    }
    result[b] = std::move(forced);
  }

  if (!detail::assign_free_blocks(t, dec, lists, free_blocks, 0, used, result))
    return std::nullopt;

  // Sizes now force each vertex's list to be exactly the disjoint union of
  // its blocks' sets; degrees match list sizes, so no residue can remain.
  UncolorabilityCertificate cert;
  cert.component.resize(n);
  for (int v = 0; v < n; ++v) cert.component[v] = v;
  cert.blocks = dec.blocks;
  cert.block_colors = std::move(result);
  cert.condition_a = cert.condition_b = cert.condition_c = true;
  return cert;
}

// A connected graph with supervalent lists is "bad" when it has no coloring
// from them. Fast filter first (exact-degree lists, Gallai tree), then the
// certificate search. Deterministic and polynomial apart from rare all-cut
// block branching.
inline bool is_bad_component(const Graph& t, const ListAssignment& lists) {
  for (int v = 0; v < t.vertex_count(); ++v) {
    if (!lists.defined(v) || static_cast<int>(lists.at(v).size()) < t.degree(v))
      throw std::invalid_argument("is_bad_component requires supervalent lists");
    if (static_cast<int>(lists.at(v).size()) != t.degree(v)) return false;
  }
  return find_certificate(t, lists).has_value();
}

// A leaf block of the component T together with a restricted vertex adjacent
// to exactly max_degree(g)-1 of the block's vertices, when one exists.
// Block ids refer to `dec`, which must decompose T.graph; the returned vertex
// id is global. Lowest block id, then lowest vertex id.
inline std::optional<std::pair<int, int>> leaf_block_with_sole_anchor(
    const Graph& g, const ComponentView& t, const std::vector<int>& restricted,
    const BlockDecomposition& dec) {
  const int want = g.max_degree() - 1;
  for (int b : leaf_blocks(dec)) {
    for (int p : restricted) {
      int count = 0;
      for (int local : dec.blocks[b])
        if (g.adjacent(p, t.to_global[local])) ++count;
      if (count == want) return std::make_pair(b, p);
    }
  }
  return std::nullopt;
}

}  // namespace gallai
