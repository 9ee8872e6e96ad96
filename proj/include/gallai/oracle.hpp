#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "gallai/coloring.hpp"
#include "gallai/graph.hpp"

namespace gallai {

namespace detail {

// Backtracking on one component over normalized color bitmasks. avail[v] is
// the set of colors still open at v; vertices are picked smallest-remaining-
// list first with ties by id, colors tried in ascending order.
inline bool color_component(const Graph& g, const std::vector<int>& comp,
                            std::vector<std::uint64_t>& avail, std::vector<int>& chosen) {
  int best = -1, best_count = 0;
  for (int v : comp) {
    if (chosen[v] != -1) continue;
    int cnt = std::popcount(avail[v]);
    if (cnt == 0) return false;
    if (best == -1 || cnt < best_count) {
      best = v;
      best_count = cnt;
    }
  }
  if (best == -1) return true;

  std::uint64_t options = avail[best];
  while (options) {
    int bit = std::countr_zero(options);
    options &= options - 1;
    chosen[best] = bit;
    std::vector<int> touched;
    for (int w : g.neighbors(best)) {
      if (chosen[w] == -1 && (avail[w] >> bit & 1)) {
        avail[w] &= ~(std::uint64_t{1} << bit);
        touched.push_back(w);
      }
    }
    if (color_component(g, comp, avail, chosen)) return true;
    for (int w : touched) avail[w] |= std::uint64_t{1} << bit;
    chosen[best] = -1;
  }
  return false;
}

}  // namespace detail

// Exact decision procedure: a proper coloring picking each vertex's color
// from its list, or nullopt when none exists. Ground truth for everything
// else in the library. Supports up to 64 distinct colors per instance.
inline std::optional<PartialColoring> exact_list_color(const Graph& g,
                                                       const ListAssignment& lists) {
  const int n = g.vertex_count();
  std::map<int, int> color_index;
  for (int v = 0; v < n; ++v) {
    if (!lists.defined(v)) throw std::invalid_argument("exact_list_color: undefined list");
    for (int c : lists.at(v)) color_index.emplace(c, 0);
  }
  if (color_index.size() > 64)
    throw std::invalid_argument("exact_list_color supports at most 64 distinct colors");
  std::vector<int> index_color;
  for (auto& [c, idx] : color_index) {
    idx = static_cast<int>(index_color.size());
    index_color.push_back(c);
  }

  std::vector<std::uint64_t> avail(n, 0);
  for (int v = 0; v < n; ++v) {
    for (int c : lists.at(v)) avail[v] |= std::uint64_t{1} << color_index[c];
    if (avail[v] == 0) return std::nullopt;
  }

  std::vector<int> chosen(n, -1);
  for (const auto& comp : connected_components(g))
    if (!detail::color_component(g, comp, avail, chosen)) return std::nullopt;

  PartialColoring out(n);
  for (int v = 0; v < n; ++v) out.set(v, index_color[chosen[v]]);
  return out;
}

// Coloring with palette {1..k} differing from phi wherever phi is defined,
// or nullopt when impossible.
inline std::optional<PartialColoring> exact_avoid(const Graph& g, const PartialColoring& phi,
                                                  int k) {
  if (k < 1) throw std::invalid_argument("exact_avoid: palette size must be positive");
  ListAssignment lists(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<int> list;
    for (int c = 1; c <= k; ++c)
      if (!phi.colored(v) || phi.color(v) != c) list.push_back(c);
    lists.set(v, std::move(list));
  }
  return exact_list_color(g, lists);
}

}  // namespace gallai
