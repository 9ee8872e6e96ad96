#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gallai/coloring.hpp"
#include "gallai/errors.hpp"
#include "gallai/graph.hpp"
#include "gallai/oracle.hpp"
#include "gallai/solver.hpp"

namespace gallai {

// Parameters of the avoidance propositions: d0 bounds the restricted
// neighbors of any outside vertex, d1 the components a restricted vertex
// touches, d the density threshold, k the color count of the avoided
// coloring.
struct AvoidanceParams {
  int d0 = 0;
  int d1 = 0;
  int d = 0;
  int k = 0;
};

namespace detail {

inline void require(bool ok, std::vector<std::string>& violations, const std::string& msg) {
  if (!ok) violations.push_back(msg);
}

inline void check_precoloring_on(const Graph& g, const PartialColoring& phi,
                                 const std::vector<char>& in_p,
                                 std::vector<std::string>& violations) {
  if (!is_proper(g, phi)) violations.push_back("avoided coloring is not proper");
  for (int v = 0; v < g.vertex_count(); ++v)
    if (phi.colored(v) && !in_p[v])
      violations.push_back("vertex " + std::to_string(v) +
                           " is precolored but outside the restricted set");
}

inline void assert_avoider(const Graph& g, const PartialColoring& phi,
                           const PartialColoring& out) {
  if (!out.total()) throw internal_error("avoidance produced a partial coloring");
  if (!is_proper(g, out)) throw internal_error("avoidance produced an improper coloring");
  for (int v = 0; v < g.vertex_count(); ++v)
    if (phi.colored(v) && out.color(v) == phi.color(v))
      throw internal_error("avoidance repeated an avoided color");
}

}  // namespace detail

// Avoids phi when outside vertices see at most d0 restricted neighbors, each
// restricted vertex touches at most d1 components of G-P, d0*d1 < delta-1,
// and every component has a leaf block with d0+1 distinct restricted
// neighbors. Builds a conflict graph on P by raising a clique on d0+1 chosen
// neighbors of one qualifying leaf block per component; greedy coloring from
// {1..delta} minus the avoided color then leaves every component a leaf block
// whose neighbors carry d0+1 distinct colors, which no uncolorable component
// can absorb.
inline PartialColoring avoid_conflict_graph(const Graph& g, const std::vector<int>& restricted,
                                            const PartialColoring& phi,
                                            const AvoidanceParams& params) {
  const int delta = g.max_degree();
  std::vector<char> in_p(g.vertex_count(), 0);
  for (int p : restricted) in_p[p] = 1;

  std::vector<std::string> violations;
  detail::require(is_connected(g), violations, "graph is not connected");
  detail::require(!g.is_complete(), violations, "graph is complete");
  detail::require(delta >= 4, violations, "max degree below 4");
  detail::require(params.d0 >= 1 && params.d1 >= 1, violations, "d0 and d1 must be positive");
  detail::require(params.d0 * params.d1 < delta - 1, violations,
                  "d0*d1 must stay below max degree - 1");
  for (size_t i = 0; i < restricted.size(); ++i)
    for (size_t j = i + 1; j < restricted.size(); ++j)
      if (g.adjacent(restricted[i], restricted[j])) {
        violations.push_back("restricted set is not independent");
        j = restricted.size();
        i = restricted.size();
      }
  detail::check_precoloring_on(g, phi, in_p, violations);
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!in_p[v] && detail::restricted_neighbor_count(g, in_p, v) > params.d0)
      violations.push_back("vertex " + std::to_string(v) + " has more than d0 restricted neighbors");

  OffRestrictedPartition part = partition_off_restricted(g, restricted);
  for (int p : restricted) {
    std::vector<int> comps;
    for (int w : g.neighbors(p))
      if (!in_p[w]) comps.push_back(part.component_of[w]);
    std::sort(comps.begin(), comps.end());
    comps.erase(std::unique(comps.begin(), comps.end()), comps.end());
    if (static_cast<int>(comps.size()) > params.d1)
      violations.push_back("restricted vertex " + std::to_string(p) +
                           " touches more than d1 components");
  }

  // One qualifying leaf block per component: lowest block id with at least
  // d0+1 distinct restricted neighbors; take the d0+1 lowest of those.
  std::vector<std::vector<int>> chosen(part.components.size());
  for (int t = 0; t < static_cast<int>(part.components.size()); ++t) {
    const auto& view = part.components[t];
    bool found = false;
    for (int b : leaf_blocks(part.decs[t])) {
      std::vector<int> nbrs;
      for (int local : part.decs[t].blocks[b])
        for (int w : g.neighbors(view.to_global[local]))
          if (in_p[w]) nbrs.push_back(w);
      std::sort(nbrs.begin(), nbrs.end());
      nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
      if (static_cast<int>(nbrs.size()) >= params.d0 + 1) {
        chosen[t].assign(nbrs.begin(), nbrs.begin() + params.d0 + 1);
        found = true;
        break;
      }
    }
    if (!found)
      violations.push_back("component " + std::to_string(t) +
                           " has no leaf block with d0+1 distinct restricted neighbors");
  }
  if (!violations.empty()) throw hypothesis_error(violations);

  // Conflict graph on the restricted set, then greedy coloring avoiding phi.
  std::vector<std::vector<int>> conflict(g.vertex_count());
  for (const auto& clique : chosen)
    for (size_t i = 0; i < clique.size(); ++i)
      for (size_t j = i + 1; j < clique.size(); ++j) {
        conflict[clique[i]].push_back(clique[j]);
        conflict[clique[j]].push_back(clique[i]);
      }
  PartialColoring f(g.vertex_count());
  std::vector<int> order = restricted;
  std::sort(order.begin(), order.end());
  for (int p : order) {
    int pick = 0;
    for (int c = 1; c <= delta; ++c) {
      if (phi.colored(p) && phi.color(p) == c) continue;
      bool clash = false;
      for (int q : conflict[p])
        if (f.colored(q) && f.color(q) == c) {
          clash = true;
          break;
        }
      if (!clash) {
        pick = c;
        break;
      }
    }
    if (pick == 0) throw internal_error("conflict graph greedy ran out of colors");
    f.set(p, pick);
  }

  PartialColoring out = extend_to_rest(g, order, f, palette_lists(g));
  detail::assert_avoider(g, phi, out);
  return out;
}

// Avoids phi when every outside vertex has at least d restricted neighbors or
// none and the restricted set induces a subgraph of maximum degree below d-2:
// a greedy (d-1)-coloring of G[P] avoiding phi leaves every touched vertex a
// residual list longer than its component degree.
inline PartialColoring avoid_sparse_precolored_subgraph(const Graph& g,
                                                        const std::vector<int>& restricted,
                                                        const PartialColoring& phi, int d) {
  const int delta = g.max_degree();
  std::vector<char> in_p(g.vertex_count(), 0);
  for (int p : restricted) in_p[p] = 1;

  std::vector<std::string> violations;
  detail::require(is_connected(g), violations, "graph is not connected");
  detail::require(!g.is_complete(), violations, "graph is complete");
  detail::require(delta >= 3, violations, "max degree below 3");
  detail::require(d >= 3, violations, "d must be at least 3");
  detail::require(d - 1 <= delta, violations, "d-1 colors must fit the palette");
  detail::check_precoloring_on(g, phi, in_p, violations);
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (in_p[v]) continue;
    int pn = detail::restricted_neighbor_count(g, in_p, v);
    if (pn != 0 && pn < d)
      violations.push_back("vertex " + std::to_string(v) + " has " + std::to_string(pn) +
                           " restricted neighbors; needs 0 or at least " + std::to_string(d));
  }
  int induced_max = 0;
  for (int p : restricted) {
    int deg = 0;
    for (int w : g.neighbors(p))
      if (in_p[w]) ++deg;
    induced_max = std::max(induced_max, deg);
  }
  detail::require(induced_max < d - 2, violations,
                  "restricted set induces max degree " + std::to_string(induced_max) +
                      "; needs below " + std::to_string(d - 2));
  if (!violations.empty()) throw hypothesis_error(violations);

  PartialColoring f(g.vertex_count());
  std::vector<int> order = restricted;
  std::sort(order.begin(), order.end());
  for (int p : order) {
    int pick = 0;
    for (int c = 1; c <= d - 1; ++c) {
      if (phi.colored(p) && phi.color(p) == c) continue;
      bool clash = false;
      for (int w : g.neighbors(p))
        if (in_p[w] && f.colored(w) && f.color(w) == c) {
          clash = true;
          break;
        }
      if (!clash) {
        pick = c;
        break;
      }
    }
    if (pick == 0) throw internal_error("sparse-subgraph greedy ran out of colors");
    f.set(p, pick);
  }

  PartialColoring out = extend_to_rest(g, order, f, palette_lists(g));
  detail::assert_avoider(g, phi, out);
  return out;
}

// Avoids a coloring with at most k colors whose classes each cover at most
// delta-k vertices. No constructive route is implemented; the exact oracle
// decides, and the hypotheses guarantee it succeeds.
inline std::optional<PartialColoring> avoid_small_color_classes(const Graph& g,
                                                                const PartialColoring& phi,
                                                                int k) {
  const int delta = g.max_degree();
  std::vector<std::string> violations;
  detail::require(is_connected(g), violations, "graph is not connected");
  detail::require(!g.is_complete(), violations, "graph is complete");
  detail::require(k >= 1, violations, "k must be positive");
  if (!is_proper(g, phi)) violations.push_back("avoided coloring is not proper");
  std::map<int, int> class_size;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (phi.colored(v)) ++class_size[phi.color(v)];
  detail::require(static_cast<int>(class_size.size()) <= k, violations,
                  "avoided coloring uses more than k colors");
  for (const auto& [c, size] : class_size)
    detail::require(size <= delta - k, violations,
                    "color " + std::to_string(c) + " covers " + std::to_string(size) +
                        " vertices; at most " + std::to_string(delta - k) + " allowed");
  if (!violations.empty()) throw hypothesis_error(violations);

  auto out = exact_avoid(g, phi, delta);
  if (!out) throw internal_error("small-color-class instance had no avoider");
  detail::assert_avoider(g, phi, *out);
  return out;
}

// Avoids a partial coloring on an independent set given any proper k-coloring
// f: every clash moves to the fresh color k+1, which independence keeps
// proper.
inline PartialColoring avoid_kplus1(const Graph& g, const PartialColoring& phi, int k,
                                    const PartialColoring& f) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (!f.total() || !is_proper(g, f))
    throw std::invalid_argument("base coloring must be total and proper");
  for (int v = 0; v < g.vertex_count(); ++v)
    if (f.color(v) > k)
      throw std::invalid_argument("base coloring uses a color above k");
  auto dom = phi.domain();
  for (size_t i = 0; i < dom.size(); ++i)
    for (size_t j = i + 1; j < dom.size(); ++j)
      if (g.adjacent(dom[i], dom[j]))
        throw std::invalid_argument("avoided coloring's domain is not independent");
  for (int v : dom)
    if (phi.color(v) > k + 1)
      throw std::invalid_argument("avoided coloring uses a color above k+1");

  PartialColoring out = f;
  for (int v : dom)
    if (out.color(v) == phi.color(v)) out.set(v, k + 1);
  detail::assert_avoider(g, phi, out);
  return out;
}

}  // namespace gallai
