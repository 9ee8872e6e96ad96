#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "gallai/errors.hpp"

namespace gallai {

// Directed multigraph on vertices 0..n-1.
struct Digraph {
  int n = 0;
  std::vector<std::pair<int, int>> arcs;

  int add_arc(int from, int to) {
    if (from < 0 || from >= n || to < 0 || to >= n)
      throw std::invalid_argument("arc endpoint out of range");
    arcs.emplace_back(from, to);
    return static_cast<int>(arcs.size()) - 1;
  }

  std::vector<int> outdegrees() const {
    std::vector<int> d(n, 0);
    for (const auto& a : arcs) ++d[a.first];
    return d;
  }
  std::vector<int> indegrees() const {
    std::vector<int> d(n, 0);
    for (const auto& a : arcs) ++d[a.second];
    return d;
  }
};

// One arc per selected vertex forming an acyclic subgraph, plus a compatible
// linear order (if (t,t') is chosen then t precedes t').
struct AcyclicSelection {
  std::vector<int> arc_of;  // aligned with the input vertex list
  std::vector<int> order;   // the selected vertices, sources first
};

// Given vertices whose outdegree strictly exceeds their indegree, keeps one
// outgoing arc per such vertex so that the kept arcs are acyclic. Works by
// growing a resolved region: every unresolved selected vertex set retains an
// arc leaving it (outdegree surplus), so some vertex can always hook into the
// resolved region. Ties break toward the lowest vertex id, then lowest arc
// target, then lowest arc id.
inline AcyclicSelection acyclic_one_out(const Digraph& d, const std::vector<int>& selected) {
  auto outdeg = d.outdegrees();
  auto indeg = d.indegrees();
  for (int s : selected) {
    if (s < 0 || s >= d.n) throw std::invalid_argument("selected vertex out of range");
    if (outdeg[s] <= indeg[s])
      throw std::invalid_argument("vertex " + std::to_string(s) +
                                  " has outdegree <= indegree");
  }

  std::vector<int> position(d.n, -1);
  for (size_t i = 0; i < selected.size(); ++i) position[selected[i]] = static_cast<int>(i);

  std::vector<std::vector<int>> out_arcs(d.n);
  for (int a = 0; a < static_cast<int>(d.arcs.size()); ++a)
    out_arcs[d.arcs[a].first].push_back(a);
  for (auto& arcs : out_arcs)
    std::sort(arcs.begin(), arcs.end(),
              [&](int x, int y) { return std::make_pair(d.arcs[x].second, x) <
                                         std::make_pair(d.arcs[y].second, y); });

  std::vector<char> resolved(d.n, 1);
  for (int s : selected) resolved[s] = 0;
  std::vector<int> by_id = selected;
  std::sort(by_id.begin(), by_id.end());

  AcyclicSelection sel;
  sel.arc_of.assign(selected.size(), -1);
  std::vector<int> resolution;  // order vertices became resolved
  for (size_t step = 0; step < selected.size(); ++step) {
    int pick = -1, pick_arc = -1;
    for (int s : by_id) {
      if (resolved[s]) continue;
      for (int a : out_arcs[s]) {
        if (resolved[d.arcs[a].second]) {
          pick = s;
          pick_arc = a;
          break;
        }
      }
      if (pick != -1) break;
    }
    if (pick == -1) throw internal_error("acyclic_one_out found no arc into the resolved region");
    sel.arc_of[position[pick]] = pick_arc;
    resolved[pick] = 1;
    resolution.push_back(pick);
  }
  // Chosen arcs point into earlier-resolved territory, so reversing the
  // resolution order puts every arc source before its target.
  sel.order.assign(resolution.rbegin(), resolution.rend());
  return sel;
}

}  // namespace gallai
