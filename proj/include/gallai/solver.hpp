#pragma once

#include <algorithm>
#include <atomic>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gallai/blocks.hpp"
#include "gallai/certificate.hpp"
#include "gallai/coloring.hpp"
#include "gallai/digraph.hpp"
#include "gallai/errors.hpp"
#include "gallai/graph.hpp"
#include "gallai/multigraph.hpp"
#include "gallai/oracle.hpp"

namespace gallai {

// Counters bumped by the in-pipeline structural checks, so test harnesses can
// confirm the checks actually ran.
struct SolverAudit {
  std::atomic<long> edge_colorings_checked{0};
  std::atomic<long> pairings_checked{0};
  std::atomic<long> link_graphs_checked{0};
  std::atomic<long> sweep_recolorings{0};
  std::atomic<long> local_search_moves{0};
};

inline SolverAudit& solver_audit() {
  static SolverAudit audit;
  return audit;
}

// Component structure of H = G minus the restricted set.
struct OffRestrictedPartition {
  std::vector<ComponentView> components;   // ordered by smallest member
  std::vector<BlockDecomposition> decs;    // per component, on local ids
  std::vector<int> component_of;           // global vertex -> component, -1 on P
};

inline OffRestrictedPartition partition_off_restricted(const Graph& g,
                                                       const std::vector<int>& restricted) {
  std::vector<char> in_p(g.vertex_count(), 0);
  for (int p : restricted) in_p[p] = 1;
  std::vector<int> rest;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!in_p[v]) rest.push_back(v);
  ComponentView h = induced_component(g, rest);

  OffRestrictedPartition part;
  part.component_of.assign(g.vertex_count(), -1);
  for (const auto& comp_local : connected_components(h.graph)) {
    std::vector<int> global;
    for (int v : comp_local) global.push_back(h.to_global[v]);
    ComponentView view = induced_component(g, global);
    for (int v : global) part.component_of[v] = static_cast<int>(part.components.size());
    part.decs.push_back(block_decomposition(view.graph));
    part.components.push_back(std::move(view));
  }
  return part;
}

inline ListAssignment restrict_lists(const ComponentView& view, const ListAssignment& lists) {
  ListAssignment out(view.graph.vertex_count());
  for (int v = 0; v < view.graph.vertex_count(); ++v) out.set(v, lists.at(view.to_global[v]));
  return out;
}

namespace detail {

inline int restricted_neighbor_count(const Graph& g, const std::vector<char>& in_p, int v) {
  int c = 0;
  for (int w : g.neighbors(v))
    if (in_p[w]) ++c;
  return c;
}

// A component can be uncolorable from some residual lists only if it is a
// Gallai tree whose vertices all carry lists of size max_degree(G) and have
// full degree in G, with the degree split between the component and at most
// one restricted neighbor. Everything the pipelines recolor lives in such
// components; the rest are exempt.
inline bool component_eligible(const Graph& g, const std::vector<char>& in_p,
                               const ComponentView& view, const BlockDecomposition& dec,
                               const ListAssignment& lists) {
  const int delta = g.max_degree();
  for (int v = 0; v < view.graph.vertex_count(); ++v) {
    int global = view.to_global[v];
    if (!lists.defined(global) || static_cast<int>(lists.at(global).size()) != delta)
      return false;
    int pn = restricted_neighbor_count(g, in_p, global);
    if (pn > 1) return false;
    if (view.graph.degree(v) != delta - pn) return false;
  }
  for (const auto& block : dec.blocks)
    if (!block_is_complete(view.graph, block) && !block_is_odd_cycle(view.graph, block))
      return false;
  return true;
}

}  // namespace detail

// Proper list coloring of an independent restricted set: smallest list color
// everywhere. Independence makes any choice proper.
inline PartialColoring color_restricted_greedy(const Graph& g, const std::vector<int>& restricted,
                                               const ListAssignment& lists) {
  PartialColoring phi(g.vertex_count());
  for (size_t i = 0; i < restricted.size(); ++i)
    for (size_t j = i + 1; j < restricted.size(); ++j)
      if (g.adjacent(restricted[i], restricted[j]))
        throw std::invalid_argument("restricted set is not independent");
  for (int p : restricted) {
    if (!lists.defined(p) || lists.at(p).empty())
      throw std::invalid_argument("empty list at restricted vertex " + std::to_string(p));
    phi.set(p, lists.at(p).front());
  }
  return phi;
}

// Components of G minus the restricted set that are uncolorable from their
// residual lists, with certificates mapped back to global vertex ids.
inline std::vector<std::pair<int, UncolorabilityCertificate>> bad_components(
    const Graph& g, const std::vector<int>& restricted, const PartialColoring& phi,
    const ListAssignment& lists, const OffRestrictedPartition& part) {
  std::vector<std::pair<int, UncolorabilityCertificate>> out;
  ListAssignment resid = residual_lists(g, restricted, phi, lists);
  for (int t = 0; t < static_cast<int>(part.components.size()); ++t) {
    const auto& view = part.components[t];
    ListAssignment local = restrict_lists(view, resid);
    bool tight = true;
    for (int v = 0; v < view.graph.vertex_count() && tight; ++v)
      if (static_cast<int>(local.at(v).size()) != view.graph.degree(v)) tight = false;
    if (!tight) continue;
    auto cert = find_certificate(view.graph, local);
    if (!cert) continue;
    for (int& v : cert->component) v = view.to_global[v];
    std::sort(cert->component.begin(), cert->component.end());
    for (auto& block : cert->blocks) {
      for (int& v : block) v = view.to_global[v];
      std::sort(block.begin(), block.end());
    }
    out.emplace_back(t, std::move(*cert));
  }
  return out;
}

// Conflict digraph for the distance-4 pipeline: one vertex per component of
// H, plus a sink per anchored leaf block whose anchor has no further H
// neighbor. An arc labeled p runs from t to the component holding p's one
// neighbor outside the anchored block.
struct ConflictDigraph {
  Digraph digraph;              // components first, then sinks
  int component_count = 0;
  std::vector<int> arc_anchor;  // per arc: the restricted vertex it recolors
  std::vector<int> sink_anchor; // per sink node (component_count + i)
  std::vector<char> eligible;   // per component
  std::vector<int> s_vertices;  // eligible component ids, ascending
};

inline ConflictDigraph build_conflict_digraph(const Graph& g, const std::vector<int>& restricted,
                                              const ListAssignment& lists,
                                              const OffRestrictedPartition& part) {
  const int delta = g.max_degree();
  std::vector<char> in_p(g.vertex_count(), 0);
  for (int p : restricted) in_p[p] = 1;

  ConflictDigraph cdg;
  cdg.component_count = static_cast<int>(part.components.size());
  cdg.eligible.resize(cdg.component_count);
  for (int t = 0; t < cdg.component_count; ++t) {
    cdg.eligible[t] =
        detail::component_eligible(g, in_p, part.components[t], part.decs[t], lists);
    if (cdg.eligible[t]) cdg.s_vertices.push_back(t);
  }

  struct PendingArc {
    int from;
    int to;  // -1: fresh sink
    int anchor;
  };
  std::vector<PendingArc> pending;
  for (int t = 0; t < cdg.component_count; ++t) {
    const auto& view = part.components[t];
    for (int b : leaf_blocks(part.decs[t])) {
      const auto& block = part.decs[t].blocks[b];
      int anchor = -1;
      for (int p : restricted) {
        int count = 0;
        for (int local : block)
          if (g.adjacent(p, view.to_global[local])) ++count;
        if (count == delta - 1) {
          anchor = p;
          break;
        }
      }
      if (anchor == -1) {
        if (cdg.eligible[t])
          throw hypothesis_error("leaf block of component " + std::to_string(t) +
                                 " has no restricted vertex adjacent to " +
                                 std::to_string(delta - 1) + " of its vertices");
        continue;
      }
      std::vector<char> in_block(g.vertex_count(), 0);
      for (int local : block) in_block[view.to_global[local]] = 1;
      int extra = -1;
      for (int w : g.neighbors(anchor))
        if (!in_p[w] && !in_block[w]) extra = w;
      if (extra == -1) {
        pending.push_back({t, -1, anchor});
      } else if (part.component_of[extra] != t) {
        pending.push_back({t, part.component_of[extra], anchor});
      }
      // An extra neighbor inside t itself yields no arc.
    }
  }

  cdg.digraph.n = cdg.component_count;
  for (const auto& pa : pending) {
    int to = pa.to;
    if (to == -1) {
      to = cdg.digraph.n++;
      cdg.sink_anchor.push_back(pa.anchor);
    }
    cdg.digraph.arcs.emplace_back(pa.from, to);
    cdg.arc_anchor.push_back(pa.anchor);
  }

  auto outdeg = cdg.digraph.outdegrees();
  auto indeg = cdg.digraph.indegrees();
  for (int t : cdg.s_vertices)
    if (outdeg[t] <= indeg[t])
      throw internal_error("conflict digraph vertex " + std::to_string(t) +
                           " lacks outdegree surplus");
  return cdg;
}

namespace detail {

inline bool component_bad_now(const Graph& g, const std::vector<int>& restricted,
                              const PartialColoring& phi, const ListAssignment& lists,
                              const ComponentView& view) {
  ListAssignment resid = residual_lists(g, restricted, phi, lists);
  return is_bad_component(view.graph, restrict_lists(view, resid));
}

}  // namespace detail

// Walks the acyclic selection in topological order; every still-bad component
// gets the anchor of its chosen arc recolored to the next list color, which
// clears it for the rest of the sweep.
inline PartialColoring recolor_sweep(const Graph& g, const std::vector<int>& restricted,
                                     const PartialColoring& phi0, const ListAssignment& lists,
                                     const OffRestrictedPartition& part, const ConflictDigraph& cdg,
                                     const AcyclicSelection& sel) {
  PartialColoring phi = phi0;
  std::vector<int> arc_of_component(cdg.component_count, -1);
  for (size_t i = 0; i < cdg.s_vertices.size(); ++i)
    arc_of_component[cdg.s_vertices[i]] = sel.arc_of[i];

  for (int t : sel.order) {
    if (!detail::component_bad_now(g, restricted, phi, lists, part.components[t])) continue;
    int arc = arc_of_component[t];
    if (arc < 0) throw internal_error("bad component without a chosen arc");
    int p = cdg.arc_anchor[arc];
    int current = phi.color(p);
    int replacement = 0;
    for (int c : lists.at(p))
      if (c != current) {
        replacement = c;
        break;
      }
    if (replacement == 0) throw internal_error("no alternate color for anchor");
    phi.set(p, replacement);
    solver_audit().sweep_recolorings++;
    if (detail::component_bad_now(g, restricted, phi, lists, part.components[t]))
      throw internal_error("component still uncolorable after its sweep step");
  }
  return phi;
}

// Completes a coloring of the restricted set to all of G. Vertices whose
// residual list exceeds their remaining degree are deferred and colored
// greedily afterwards in reverse order; any fully tight core that remains is
// handed to the exact backtracker, which must succeed when no component is
// uncolorable from its residual lists.
inline PartialColoring extend_to_rest(const Graph& g, const std::vector<int>& restricted,
                                      const PartialColoring& phi, const ListAssignment& lists) {
  for (int p : restricted)
    if (!phi.colored(p)) throw std::invalid_argument("extend_to_rest: restricted vertex uncolored");
  PartialColoring out = phi;
  ListAssignment resid = residual_lists(g, restricted, phi, lists);
  OffRestrictedPartition part = partition_off_restricted(g, restricted);

  for (const auto& view : part.components) {
    const int k = view.graph.vertex_count();
    ListAssignment local = restrict_lists(view, resid);
    std::vector<char> alive(k, 1);
    std::vector<int> deg(k);
    for (int v = 0; v < k; ++v) deg[v] = view.graph.degree(v);
    std::vector<int> deferred;
    while (true) {
      int pick = -1;
      for (int v = 0; v < k; ++v)
        if (alive[v] && static_cast<int>(local.at(v).size()) > deg[v]) {
          pick = v;
          break;
        }
      if (pick == -1) break;
      alive[pick] = 0;
      deferred.push_back(pick);
      for (int w : view.graph.neighbors(pick))
        if (alive[w]) --deg[w];
    }

    std::vector<int> core;
    for (int v = 0; v < k; ++v)
      if (alive[v]) core.push_back(v);
    std::vector<int> local_color(k, 0);
    if (!core.empty()) {
      ComponentView core_view = induced_component(view.graph, core);
      ListAssignment core_lists(core_view.graph.vertex_count());
      for (int v = 0; v < core_view.graph.vertex_count(); ++v)
        core_lists.set(v, local.at(core_view.to_global[v]));
      auto colored = exact_list_color(core_view.graph, core_lists);
      if (!colored)
        throw internal_error("tight core admitted no list coloring during extension");
      for (int v = 0; v < core_view.graph.vertex_count(); ++v)
        local_color[core_view.to_global[v]] = colored->color(v);
    }
    for (auto it = deferred.rbegin(); it != deferred.rend(); ++it) {
      int v = *it;
      int chosen = 0;
      for (int c : local.at(v)) {
        bool clash = false;
        for (int w : view.graph.neighbors(v))
          if (local_color[w] == c) {
            clash = true;
            break;
          }
        if (!clash) {
          chosen = c;
          break;
        }
      }
      if (chosen == 0) throw internal_error("deferred vertex ran out of colors");
      local_color[v] = chosen;
    }
    for (int v = 0; v < k; ++v) out.set(view.to_global[v], local_color[v]);
  }
  return out;
}

namespace detail {

inline void assert_solution(const Graph& g, const ListAssignment& lists,
                            const PartialColoring& total) {
  if (auto why = verify_coloring(g, lists, total))
    throw internal_error("solver produced an invalid coloring: " + *why);
}

// With no restricted vertices the recoloring machinery has nothing to do;
// colorability reduces to no component being uncolorable from its own lists.
inline PartialColoring solve_without_restricted(const Graph& g, const ListAssignment& lists) {
  std::vector<int> none;
  OffRestrictedPartition part = partition_off_restricted(g, none);
  PartialColoring empty(g.vertex_count());
  for (const auto& view : part.components) {
    ListAssignment local = restrict_lists(view, lists);
    bool tight = true;
    for (int v = 0; v < view.graph.vertex_count() && tight; ++v)
      if (static_cast<int>(local.at(v).size()) != view.graph.degree(v)) tight = false;
    if (tight && find_certificate(view.graph, local))
      throw hypothesis_error("a component admits no coloring from its lists");
  }
  PartialColoring total = extend_to_rest(g, none, empty, lists);
  assert_solution(g, lists, total);
  return total;
}

}  // namespace detail

// Distance-4 pipeline: greedy coloring of the restricted set, conflict
// digraph, acyclic one-out selection, topological recoloring sweep, then
// extension to the remaining vertices.
inline PartialColoring solve_distance4(const Graph& g, const std::vector<int>& restricted,
                                       const ListAssignment& lists) {
  auto rep = validate_hypotheses(g, restricted, lists, SolveMode::kDistance4);
  if (!rep.ok()) throw hypothesis_error(rep.violations);
  if (restricted.empty()) return detail::solve_without_restricted(g, lists);

  PartialColoring phi = color_restricted_greedy(g, restricted, lists);
  OffRestrictedPartition part = partition_off_restricted(g, restricted);
  ConflictDigraph cdg = build_conflict_digraph(g, restricted, lists, part);
  AcyclicSelection sel = acyclic_one_out(cdg.digraph, cdg.s_vertices);
  phi = recolor_sweep(g, restricted, phi, lists, part, cdg, sel);
  if (!bad_components(g, restricted, phi, lists, part).empty())
    throw internal_error("sweep left an uncolorable component");

  PartialColoring total = extend_to_rest(g, restricted, phi, lists);
  detail::assert_solution(g, lists, total);
  return total;
}

// Bipartite multigraph between the restricted set and the leaf blocks of the
// eligible components of H, one edge per graph edge into the block.
struct LeafBlockMultigraph {
  Multigraph graph;                  // nodes: anchors first, then block nodes
  std::vector<int> anchor_vertices;  // global ids
  struct BlockRef {
    int component;
    int block;
  };
  std::vector<BlockRef> block_nodes;

  int anchor_count() const { return static_cast<int>(anchor_vertices.size()); }
  int block_node(int idx) const { return anchor_count() + idx; }
};

inline LeafBlockMultigraph build_leaf_block_multigraph(const Graph& g,
                                                       const std::vector<int>& restricted,
                                                       const ListAssignment& lists,
                                                       const OffRestrictedPartition& part) {
  const int delta = g.max_degree();
  std::vector<char> in_p(g.vertex_count(), 0);
  for (int p : restricted) in_p[p] = 1;

  LeafBlockMultigraph leaf;
  leaf.anchor_vertices = restricted;
  std::sort(leaf.anchor_vertices.begin(), leaf.anchor_vertices.end());
  std::vector<int> anchor_index(g.vertex_count(), -1);
  for (int i = 0; i < leaf.anchor_count(); ++i) anchor_index[leaf.anchor_vertices[i]] = i;

  struct Pending {
    int anchor_node;
    int block_idx;
  };
  std::vector<Pending> pending;
  for (int t = 0; t < static_cast<int>(part.components.size()); ++t) {
    if (!detail::component_eligible(g, in_p, part.components[t], part.decs[t], lists)) continue;
    const auto& view = part.components[t];
    for (int b : leaf_blocks(part.decs[t])) {
      int idx = static_cast<int>(leaf.block_nodes.size());
      leaf.block_nodes.push_back({t, b});
      for (int local : part.decs[t].blocks[b]) {
        int global = view.to_global[local];
        for (int w : g.neighbors(global))
          if (in_p[w]) pending.push_back({anchor_index[w], idx});
      }
    }
  }

  leaf.graph.n = leaf.anchor_count() + static_cast<int>(leaf.block_nodes.size());
  for (const auto& pe : pending) leaf.graph.add_edge(pe.anchor_node, leaf.block_node(pe.block_idx));

  auto deg = leaf.graph.degrees();
  for (int i = 0; i < leaf.anchor_count(); ++i)
    if (deg[i] > delta)
      throw hypothesis_error("restricted vertex " + std::to_string(leaf.anchor_vertices[i]) +
                             " has more than " + std::to_string(delta) + " leaf-block edges");
  for (int j = 0; j < static_cast<int>(leaf.block_nodes.size()); ++j) {
    int d = deg[leaf.block_node(j)];
    if (d < delta - 1 || d > delta)
      throw hypothesis_error("leaf block node has degree " + std::to_string(d) +
                             ", expected " + std::to_string(delta - 1) + " or " +
                             std::to_string(delta));
  }
  return leaf;
}

// Stages from the edge coloring down to the degree-at-most-2 selection.
struct PairingStructure {
  std::vector<int> edge_colors;     // proper edge coloring of the leaf multigraph
  std::vector<char> low_color;      // edges colored 1..4
  std::vector<int> endpoint_block;  // per edge: block node after rebalancing
  std::vector<int> moved_edges;     // edges rerouted during rebalancing
  Multigraph augmented;             // low edges (rebalanced) plus parity edges
  std::vector<int> augmented_src;   // per augmented edge: leaf edge id, -1 for parity
  std::vector<char> selected;       // per leaf edge: kept in the selection
};

// From the proper edge coloring: take the edges colored 1..4; inside each
// component whose leaf-block nodes all have exactly three of them, reroute
// one edge from the second-lowest node to the lowest so one node reaches an
// even degree; close remaining odd degrees with parity edges; halve along
// Euler circuits. The selection, read with original endpoints, has degree at
// most 2 everywhere and gives every eligible component a leaf block of
// selection-degree exactly 2.
inline PairingStructure build_block_pairing(const OffRestrictedPartition& part,
                                            const LeafBlockMultigraph& leaf,
                                            const std::vector<int>& edge_colors) {
  PairingStructure ps;
  ps.edge_colors = edge_colors;
  const int m = leaf.graph.edge_count();
  ps.low_color.assign(m, 0);
  ps.endpoint_block.assign(m, -1);
  for (int e = 0; e < m; ++e) {
    ps.low_color[e] = edge_colors[e] >= 1 && edge_colors[e] <= 4;
    auto [u, v] = leaf.graph.edges[e];
    ps.endpoint_block[e] = std::max(u, v);  // block nodes come after anchors
  }

  std::vector<int> low_degree(leaf.graph.n, 0);
  for (int e = 0; e < m; ++e)
    if (ps.low_color[e]) {
      ++low_degree[leaf.graph.edges[e].first];
      ++low_degree[leaf.graph.edges[e].second];
    }

  // Group block nodes per component; rebalance where needed.
  std::vector<std::vector<int>> nodes_of_component(part.components.size());
  for (int j = 0; j < static_cast<int>(leaf.block_nodes.size()); ++j)
    nodes_of_component[leaf.block_nodes[j].component].push_back(leaf.block_node(j));
  for (const auto& nodes : nodes_of_component) {
    if (nodes.empty()) continue;
    bool all_three = true;
    for (int node : nodes)
      if (low_degree[node] != 3) all_three = false;
    if (!all_three) continue;
    if (nodes.size() < 2)
      throw internal_error("component with a single degree-3 leaf block node");
    int b1 = nodes[0], b2 = nodes[1];
    int moved = -1;
    for (int e = 0; e < m && moved == -1; ++e)
      if (ps.low_color[e] && ps.endpoint_block[e] == b2) moved = e;
    if (moved == -1) throw internal_error("rebalancing found no edge to move");
    ps.endpoint_block[moved] = b1;
    ps.moved_edges.push_back(moved);
  }

  // Parity closure: pair odd-degree nodes in increasing id order.
  ps.augmented.n = leaf.graph.n;
  for (int e = 0; e < m; ++e) {
    if (!ps.low_color[e]) continue;
    auto [u, v] = leaf.graph.edges[e];
    int anchor_end = std::min(u, v);
    ps.augmented.add_edge(anchor_end, ps.endpoint_block[e]);
    ps.augmented_src.push_back(e);
  }
  std::vector<int> parity_nodes;
  {
    auto deg = ps.augmented.degrees();
    for (int v = 0; v < ps.augmented.n; ++v)
      if (deg[v] % 2 == 1) parity_nodes.push_back(v);
  }
  for (size_t i = 0; i + 1 < parity_nodes.size(); i += 2) {
    ps.augmented.add_edge(parity_nodes[i], parity_nodes[i + 1]);
    ps.augmented_src.push_back(-1);
  }
  if (parity_nodes.size() % 2 != 0) throw internal_error("odd number of odd-degree nodes");

  std::vector<char> gap_ok(ps.augmented.n, 0);
  for (int i = 0; i < leaf.anchor_count(); ++i) gap_ok[i] = 1;
  std::vector<char> keep = euler_alternate_selection(ps.augmented, gap_ok);

  ps.selected.assign(m, 0);
  for (int ke = 0; ke < ps.augmented.edge_count(); ++ke)
    if (keep[ke] && ps.augmented_src[ke] != -1) ps.selected[ps.augmented_src[ke]] = 1;

  // Structural checks (original endpoints put rerouted edges back).
  std::vector<int> sel_degree(leaf.graph.n, 0);
  for (int e = 0; e < m; ++e)
    if (ps.selected[e]) {
      ++sel_degree[leaf.graph.edges[e].first];
      ++sel_degree[leaf.graph.edges[e].second];
    }
  for (int v = 0; v < leaf.graph.n; ++v)
    if (sel_degree[v] > 2) throw internal_error("selection degree above 2");
  for (int t = 0; t < static_cast<int>(part.components.size()); ++t) {
    if (nodes_of_component[t].empty()) continue;
    bool covered = false;
    for (int node : nodes_of_component[t])
      if (sel_degree[node] == 2) covered = true;
    if (!covered)
      throw internal_error("component " + std::to_string(t) +
                           " has no leaf block of selection degree 2");
  }
  solver_audit().pairings_checked++;
  return ps;
}

// Auxiliary graph on the restricted set whose proper list colorings seed the
// distance-3 pipeline. Derived sets are kept for tests.
struct LinkGraph {
  std::vector<int> anchors;                // global ids, ascending
  std::vector<std::pair<int, int>> edges;  // anchor index pairs, multigraph
  std::vector<int> degree2_blocks;         // block node ids with selection degree 2
  std::vector<int> two_anchor_blocks;      //   ... whose two edges reach distinct anchors
  std::vector<int> lone_anchor_blocks;     //   ... whose two edges reach one anchor
  std::vector<int> relinkable_blocks;      // lone-anchor blocks with >= 2 distinct
                                           // restricted neighbors in G
  std::vector<int> relink_anchors;         // anchors adjacent to relinkable blocks
};

inline LinkGraph build_anchor_link_graph(const Graph& g, const OffRestrictedPartition& part,
                                         const LeafBlockMultigraph& leaf,
                                         const PairingStructure& ps) {
  LinkGraph link;
  link.anchors = leaf.anchor_vertices;
  const int a = leaf.anchor_count();

  std::vector<std::vector<int>> sel_edges(leaf.graph.n);
  for (int e = 0; e < leaf.graph.edge_count(); ++e)
    if (ps.selected[e]) {
      sel_edges[leaf.graph.edges[e].first].push_back(e);
      sel_edges[leaf.graph.edges[e].second].push_back(e);
    }

  auto block_restricted_neighbors = [&](int j) {
    const auto& ref = leaf.block_nodes[j];
    const auto& view = part.components[ref.component];
    std::vector<int> out;
    for (int local : part.decs[ref.component].blocks[ref.block]) {
      int global = view.to_global[local];
      for (int w : g.neighbors(global))
        if (std::binary_search(link.anchors.begin(), link.anchors.end(), w)) out.push_back(w);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };

  auto anchor_pos = [&](int global) {
    return static_cast<int>(
        std::lower_bound(link.anchors.begin(), link.anchors.end(), global) - link.anchors.begin());
  };

  for (int j = 0; j < static_cast<int>(leaf.block_nodes.size()); ++j) {
    int node = leaf.block_node(j);
    if (sel_edges[node].size() != 2) continue;
    link.degree2_blocks.push_back(node);
    int p1 = std::min(leaf.graph.edges[sel_edges[node][0]].first,
                      leaf.graph.edges[sel_edges[node][0]].second);
    int p2 = std::min(leaf.graph.edges[sel_edges[node][1]].first,
                      leaf.graph.edges[sel_edges[node][1]].second);
    if (p1 != p2) {
      link.two_anchor_blocks.push_back(node);
      link.edges.emplace_back(p1, p2);
    } else {
      link.lone_anchor_blocks.push_back(node);
      auto nbrs = block_restricted_neighbors(j);
      if (nbrs.size() >= 2) {
        link.relinkable_blocks.push_back(node);
        int holder = link.anchors[p1];
        link.relink_anchors.push_back(holder);
        int partner = -1;
        for (int w : nbrs)
          if (w != holder) {
            partner = w;
            break;
          }
        link.edges.emplace_back(p1, anchor_pos(partner));
      }
    }
  }

  // Unicyclic check: in every component, at most as many edges as vertices.
  {
    Multigraph mg;
    mg.n = a;
    for (auto [x, y] : link.edges) mg.add_edge(x, y);
    std::vector<std::vector<int>> adj(a);
    for (auto [x, y] : link.edges) {
      adj[x].push_back(y);
      adj[y].push_back(x);
    }
    std::vector<int> comp(a, -1);
    int comps = 0;
    for (int s = 0; s < a; ++s) {
      if (comp[s] != -1) continue;
      comp[s] = comps++;
      std::vector<int> stack{s};
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
          if (comp[w] == -1) {
            comp[w] = comp[s];
            stack.push_back(w);
          }
      }
    }
    std::vector<int> vcount(comps, 0), ecount(comps, 0);
    for (int v = 0; v < a; ++v) ++vcount[comp[v]];
    for (auto [x, y] : link.edges) ++ecount[comp[x]];
    for (int c = 0; c < comps; ++c)
      if (ecount[c] > vcount[c]) throw internal_error("link graph component is not unicyclic");
  }

  // Coverage: a complete single-block eligible component of full size, and
  // any selection-degree-2 block with two distinct restricted neighbors, must
  // induce a link edge between two restricted vertices adjacent to it.
  auto edge_between = [&](const std::vector<int>& candidates) {
    for (auto [x, y] : link.edges) {
      int gx = link.anchors[x], gy = link.anchors[y];
      bool has_x = std::binary_search(candidates.begin(), candidates.end(), gx);
      bool has_y = std::binary_search(candidates.begin(), candidates.end(), gy);
      if (has_x && has_y) return true;
    }
    return false;
  };
  std::vector<char> has_block_nodes(part.components.size(), 0);
  for (const auto& ref : leaf.block_nodes) has_block_nodes[ref.component] = 1;
  for (int j = 0; j < static_cast<int>(leaf.block_nodes.size()); ++j) {
    const auto& ref = leaf.block_nodes[j];
    const auto& view = part.components[ref.component];
    bool single_full_block =
        part.decs[ref.component].block_count() == 1 &&
        view.graph.vertex_count() == g.max_degree() && view.graph.is_complete();
    auto nbrs = block_restricted_neighbors(j);
    bool deg2 = std::binary_search(link.degree2_blocks.begin(), link.degree2_blocks.end(),
                                   leaf.block_node(j));
    if (single_full_block && !edge_between(nbrs))
      throw internal_error("complete component lacks a link edge");
    if (deg2 && nbrs.size() >= 2 && !edge_between(nbrs))
      throw internal_error("multi-neighbor leaf block lacks a link edge");
  }
  solver_audit().link_graphs_checked++;
  return link;
}

// Colors the link graph from the anchors' lists: peel degree-at-most-1
// vertices, color each remaining cycle greedily (list size 3 beats two
// colored neighbors), then restore the peeled vertices in reverse order.
inline PartialColoring color_anchor_link_graph(const LinkGraph& link, const Graph& g,
                                               const ListAssignment& lists) {
  const int a = static_cast<int>(link.anchors.size());
  std::vector<int> multideg(a, 0);
  for (auto [x, y] : link.edges) {
    ++multideg[x];
    ++multideg[y];
  }
  std::vector<std::vector<int>> adj(a);
  for (auto [x, y] : link.edges) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  for (auto& nb : adj) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }

  std::vector<char> alive(a, 1);
  std::vector<int> deg = multideg;
  std::vector<int> peeled;
  while (true) {
    int pick = -1;
    for (int v = 0; v < a; ++v)
      if (alive[v] && deg[v] <= 1) {
        pick = v;
        break;
      }
    if (pick == -1) break;
    alive[pick] = 0;
    peeled.push_back(pick);
    for (auto [x, y] : link.edges) {
      if (x == pick && alive[y]) --deg[y];
      if (y == pick && alive[x]) --deg[x];
    }
  }

  std::vector<int> color(a, 0);
  auto greedy = [&](int v) {
    for (int c : lists.at(link.anchors[v])) {
      bool clash = false;
      for (int w : adj[v])
        if (color[w] == c) {
          clash = true;
          break;
        }
      if (!clash) return c;
    }
    throw internal_error("link graph coloring ran out of colors");
  };

  // Remaining vertices form the cycles; walk each one in order.
  std::vector<char> done(a, 0);
  for (int s = 0; s < a; ++s) {
    if (!alive[s] || done[s]) continue;
    std::vector<int> cycle{s};
    done[s] = 1;
    int prev = -1, cur = s;
    while (true) {
      int next = -1;
      for (int w : adj[cur])
        if (alive[w] && w != prev && !done[w]) {
          next = w;
          break;
        }
      if (next == -1) break;
      done[next] = 1;
      cycle.push_back(next);
      prev = cur;
      cur = next;
    }
    for (int v : cycle) color[v] = greedy(v);
  }
  for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) color[*it] = greedy(*it);

  PartialColoring phi(g.vertex_count());
  for (int v = 0; v < a; ++v) phi.set(link.anchors[v], color[v]);
  return phi;
}

// Strictly-decreasing local search on the number of uncolorable components:
// each one owns a leaf block anchored by a single restricted vertex, and one
// of that vertex's two alternate colors always lowers the count.
inline PartialColoring minimize_bad_local_search(const Graph& g,
                                                 const std::vector<int>& restricted,
                                                 const ListAssignment& lists, PartialColoring phi,
                                                 const OffRestrictedPartition& part) {
  auto bad_now = [&]() {
    std::vector<int> bad;
    ListAssignment resid = residual_lists(g, restricted, phi, lists);
    for (int t = 0; t < static_cast<int>(part.components.size()); ++t) {
      const auto& view = part.components[t];
      ListAssignment local = restrict_lists(view, resid);
      bool tight = true;
      for (int v = 0; v < view.graph.vertex_count() && tight; ++v)
        if (static_cast<int>(local.at(v).size()) != view.graph.degree(v)) tight = false;
      if (tight && find_certificate(view.graph, local)) bad.push_back(t);
    }
    return bad;
  };

  std::vector<int> bad = bad_now();
  while (!bad.empty()) {
    int count = static_cast<int>(bad.size());
    int t = bad.front();
    auto pivot = leaf_block_with_sole_anchor(g, part.components[t], restricted, part.decs[t]);
    if (!pivot) throw internal_error("uncolorable component has no singly anchored leaf block");
    int p = pivot->second;
    int c1 = phi.color(p);
    std::vector<int> alternates;
    for (int c : lists.at(p))
      if (c != c1 && static_cast<int>(alternates.size()) < 2) alternates.push_back(c);
    if (alternates.size() < 2) throw internal_error("anchor list too small for local search");

    bool accepted = false;
    for (int c : alternates) {
      phi.set(p, c);
      auto next_bad = bad_now();
      if (static_cast<int>(next_bad.size()) < count) {
        bad = std::move(next_bad);
        accepted = true;
        solver_audit().local_search_moves++;
        break;
      }
    }
    if (!accepted) {
      phi.set(p, c1);
      throw internal_error("neither alternate color reduced the uncolorable component count");
    }
  }
  return phi;
}

// Distance-3 pipeline: leaf-block multigraph, proper edge coloring, pairing
// selection, link graph, seed coloring, bad-component minimization, then
// extension.
inline PartialColoring solve_distance3(const Graph& g, const std::vector<int>& restricted,
                                       const ListAssignment& lists) {
  auto rep = validate_hypotheses(g, restricted, lists, SolveMode::kDistance3);
  if (!rep.ok()) throw hypothesis_error(rep.violations);
  if (restricted.empty()) return detail::solve_without_restricted(g, lists);

  OffRestrictedPartition part = partition_off_restricted(g, restricted);
  LeafBlockMultigraph leaf = build_leaf_block_multigraph(g, restricted, lists, part);
  std::vector<int> colors = konig_edge_coloring(leaf.graph, g.max_degree());
  {
    std::vector<std::vector<char>> seen(leaf.graph.n,
                                        std::vector<char>(g.max_degree() + 1, 0));
    for (int e = 0; e < leaf.graph.edge_count(); ++e) {
      auto [u, v] = leaf.graph.edges[e];
      int c = colors[e];
      if (c < 1 || c > g.max_degree() || seen[u][c] || seen[v][c])
        throw internal_error("edge coloring is not proper");
      seen[u][c] = seen[v][c] = 1;
    }
    solver_audit().edge_colorings_checked++;
  }
  PairingStructure ps = build_block_pairing(part, leaf, colors);
  LinkGraph link = build_anchor_link_graph(g, part, leaf, ps);
  PartialColoring phi = color_anchor_link_graph(link, g, lists);
  phi = minimize_bad_local_search(g, restricted, lists, std::move(phi), part);

  PartialColoring total = extend_to_rest(g, restricted, phi, lists);
  detail::assert_solution(g, lists, total);
  return total;
}

}  // namespace gallai
