#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gallai/coloring.hpp"
#include "gallai/errors.hpp"
#include "gallai/graph.hpp"
#include "gallai/oracle.hpp"

namespace gallai {

enum class Verdict { kColorable, kUncolorable, kUnknown };

// A test fixture: graph, restricted set, lists, and optionally a coloring to
// avoid, with the expected verdict and a human-readable note.
struct InstanceBundle {
  Graph graph;
  std::vector<int> restricted;
  ListAssignment lists;
  std::optional<PartialColoring> precoloring;  // avoidance instances only
  int palette = 0;                             // avoidance palette size
  std::optional<SolveMode> mode_hint;
  Verdict verdict = Verdict::kUnknown;
  std::string note;
};

// Deterministic helper around the standard engine.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  // inclusive bounds
  int uniform(int lo, int hi) { return lo + static_cast<int>(eng_() % (hi - lo + 1)); }
  bool chance(double p) { return (eng_() >> 11) * 0x1.0p-53 < p; }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
      std::swap(v[i], v[uniform(0, i)]);
  }
  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

// Two full-size cliques whose leftover vertices are bridged, each ringed by a
// singleton-list vertex. Both ringed cliques are forced onto the palette
// minus the singleton color, so the clique leftovers collide across the
// bridge: not list colorable, even though the two short-list vertices sit at
// distance 5.
inline InstanceBundle gen_clique_pair(int delta) {
  if (delta < 4) throw std::invalid_argument("delta must be at least 4");
  const int u = 2 * delta, v = 2 * delta + 1;
  std::vector<std::pair<int, int>> edges;
  for (int copy = 0; copy < 2; ++copy) {
    int base = copy * delta;
    for (int i = 0; i < delta; ++i)
      for (int j = i + 1; j < delta; ++j) edges.emplace_back(base + i, base + j);
  }
  edges.emplace_back(delta - 1, 2 * delta - 1);  // bridge between the leftovers
  for (int i = 0; i < delta - 1; ++i) {
    edges.emplace_back(u, i);
    edges.emplace_back(v, delta + i);
  }
  InstanceBundle b;
  b.graph = Graph(2 * delta + 2, edges);
  b.restricted = {u, v};
  b.lists = palette_lists(b.graph);
  b.lists.set(u, {1});
  b.lists.set(v, {1});
  b.verdict = Verdict::kUncolorable;
  b.note = "two ringed cliques with a bridged leftover pair; singleton lists";
  return b;
}

// Three full-size cliques arranged in a ring: outside vertex i is adjacent to
// the delta-1 lowest vertices of clique i and the highest vertex of clique
// i+1. All outside lists are {1,2}; two of the three must share a color, and
// the clique between them then needs delta distinct colors from delta-1.
// The graph is delta-regular and the outside vertices are pairwise at
// distance 3.
inline InstanceBundle gen_clique_cycle(int delta) {
  if (delta < 4) throw std::invalid_argument("delta must be at least 4");
  std::vector<std::pair<int, int>> edges;
  for (int copy = 0; copy < 3; ++copy) {
    int base = copy * delta;
    for (int i = 0; i < delta; ++i)
      for (int j = i + 1; j < delta; ++j) edges.emplace_back(base + i, base + j);
  }
  const int out0 = 3 * delta;
  for (int i = 0; i < 3; ++i) {
    int own = i * delta, next = ((i + 1) % 3) * delta;
    for (int j = 0; j < delta - 1; ++j) edges.emplace_back(out0 + i, own + j);
    edges.emplace_back(out0 + i, next + delta - 1);
  }
  InstanceBundle b;
  b.graph = Graph(3 * delta + 3, edges);
  b.restricted = {out0, out0 + 1, out0 + 2};
  b.lists = palette_lists(b.graph);
  for (int i = 0; i < 3; ++i) b.lists.set(out0 + i, {1, 2});
  b.verdict = Verdict::kUncolorable;
  b.note = "three ringed cliques in a ring; pair lists at pairwise distance 3";
  return b;
}

// A clique of size delta-1 joined completely to two extra vertices with
// disjoint lists {1,2,3} and {4,5,6}. The clique then has only delta-2
// palette colors left for delta-1 mutually adjacent vertices. The two
// short-list vertices sit at distance 2.
inline InstanceBundle gen_clique_join(int delta) {
  if (delta < 4) throw std::invalid_argument("delta must be at least 4");
  const int u = delta - 1, v = delta;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < delta - 1; ++i)
    for (int j = i + 1; j < delta - 1; ++j) edges.emplace_back(i, j);
  for (int i = 0; i < delta - 1; ++i) {
    edges.emplace_back(u, i);
    edges.emplace_back(v, i);
  }
  InstanceBundle b;
  b.graph = Graph(delta + 1, edges);
  b.restricted = {u, v};
  b.lists = palette_lists(b.graph);
  b.lists.set(u, {1, 2, 3});
  b.lists.set(v, {4, 5, 6});
  b.verdict = Verdict::kUncolorable;
  b.note = "clique joined to two vertices with disjoint triple lists at distance 2";
  return b;
}

// The fixed 4-regular graph with a proper partial coloring no total proper
// 4-coloring can avoid. Three identical gadgets; in each, the avoider is
// forced to give both degree-4 hubs the colors {3,4}, so the three apexes
// fall back on {1,2} and form a triangle.
inline InstanceBundle gen_unavoidable_precoloring() {
  std::vector<std::pair<int, int>> edges;
  PartialColoring phi(33);
  for (int j = 0; j < 3; ++j) {
    int base = j * 11;
    int u1 = base + 0, u2 = base + 1;
    int x1 = base + 2, x2 = base + 3, x3 = base + 4;
    int y1 = base + 5, y2 = base + 6, y3 = base + 7;
    int z1 = base + 8, z2 = base + 9, w = base + 10;
    edges.emplace_back(u1, u2);
    edges.emplace_back(u1, x1);
    edges.emplace_back(u1, x2);
    edges.emplace_back(u1, x3);
    edges.emplace_back(x1, x2);
    edges.emplace_back(x2, x3);
    edges.emplace_back(x1, x3);
    edges.emplace_back(u2, y1);
    edges.emplace_back(u2, y2);
    edges.emplace_back(u2, y3);
    edges.emplace_back(y1, y2);
    edges.emplace_back(y2, y3);
    edges.emplace_back(y1, y3);
    edges.emplace_back(z1, x1);
    edges.emplace_back(z1, x2);
    edges.emplace_back(z1, x3);
    edges.emplace_back(z2, y1);
    edges.emplace_back(z2, y2);
    edges.emplace_back(z2, y3);
    edges.emplace_back(z1, w);
    edges.emplace_back(z2, w);
    phi.set(u1, 1);
    phi.set(u2, 2);
    phi.set(z1, 2);
    phi.set(z2, 1);
  }
  edges.emplace_back(10, 21);
  edges.emplace_back(21, 32);
  edges.emplace_back(10, 32);

  InstanceBundle b;
  b.graph = Graph(33, edges);
  b.lists = palette_lists(b.graph);
  b.precoloring = phi;
  b.palette = 4;
  b.verdict = Verdict::kUncolorable;
  b.note = "4-regular triple-gadget instance with an unavoidable proper precoloring";
  return b;
}

namespace detail {

// Planted structures keep the random instances interesting: ringed cliques
// whose components sit tight against their lists, so the recoloring
// machinery actually fires.
struct PlantedBuilder {
  int delta;
  int next_vertex = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> anchors;
  std::vector<std::pair<int, int>> anchor_links;  // anchor -> backbone slot

  int clique(int size) {
    int base = next_vertex;
    next_vertex += size;
    for (int i = 0; i < size; ++i)
      for (int j = i + 1; j < size; ++j) edges.emplace_back(base + i, base + j);
    return base;
  }
};

}  // namespace detail

// Seeded generator of valid instances: connected, not complete, max degree
// exactly delta, restricted vertices pairwise far enough apart, list sizes at
// the mode's minimum on the restricted set and the full palette elsewhere.
// Plants ringed-clique structures so that nontrivial recoloring arises.
inline InstanceBundle random_instance(int delta, int n, SolveMode mode, std::uint64_t seed) {
  if (delta < 4) throw std::invalid_argument("delta must be at least 4");
  if (n < delta + 2) throw std::invalid_argument("n must be at least delta + 2");

  for (int attempt = 0; attempt < 64; ++attempt) {
    Rng rng(seed * 0x9e3779b97f4a7c15ULL + attempt + 1);
    detail::PlantedBuilder pb{delta};
    const int dmin = min_distance(mode);
    const int list_size = min_list_size(mode);

    // Reserve a backbone; spend the rest on planted units.
    int budget = n;
    int backbone_len = std::max(3, n / 4 + rng.uniform(0, 2));
    budget -= backbone_len;

    struct Unit {
      int kind;  // 0: ringed clique, 1: bridged clique pair, 2: double-anchored clique
    };
    std::vector<Unit> units;
    while (true) {
      std::vector<int> feasible;
      if (budget >= delta + 1) feasible.push_back(0);
      if (budget >= 2 * delta + 2) feasible.push_back(1);
      if (mode == SolveMode::kDistance3 && budget >= delta + 2) feasible.push_back(2);
      if (feasible.empty() || units.size() >= 4) break;
      int kind = feasible[rng.uniform(0, static_cast<int>(feasible.size()) - 1)];
      units.push_back({kind});
      budget -= (kind == 0 ? delta + 1 : kind == 1 ? 2 * delta + 2 : delta + 2);
      if (rng.chance(0.3)) break;
    }
    backbone_len += budget;  // absorb leftovers

    // Lay out units; backbone occupies the final block of ids.
    int slot_gap = std::max(2, dmin - 2);
    int next_slot = 0;
    auto take_slot = [&]() {
      int s = next_slot;
      next_slot += slot_gap + (rng.uniform(0, 1));
      return s;
    };
    for (const auto& unit : units) {
      if (unit.kind == 0) {
        int base = pb.clique(delta);
        int anchor = pb.next_vertex++;
        for (int i = 0; i < delta - 1; ++i) pb.edges.emplace_back(anchor, base + i);
        pb.anchors.push_back(anchor);
        pb.anchor_links.emplace_back(anchor, take_slot());
        // leftover clique vertex joins the backbone to keep G connected
        pb.anchor_links.emplace_back(base + delta - 1, take_slot());
      } else if (unit.kind == 1) {
        int c1 = pb.clique(delta);
        int c2 = pb.clique(delta);
        pb.edges.emplace_back(c1 + delta - 1, c2 + delta - 1);
        int a1 = pb.next_vertex++, a2 = pb.next_vertex++;
        for (int i = 0; i < delta - 1; ++i) {
          pb.edges.emplace_back(a1, c1 + i);
          pb.edges.emplace_back(a2, c2 + i);
        }
        pb.anchors.push_back(a1);
        pb.anchors.push_back(a2);
        pb.anchor_links.emplace_back(a1, take_slot());
        pb.anchor_links.emplace_back(a2, take_slot());
      } else {
        int base = pb.clique(delta);
        int a1 = pb.next_vertex++, a2 = pb.next_vertex++;
        for (int i = 0; i < delta - 1; ++i) pb.edges.emplace_back(a1, base + i);
        pb.edges.emplace_back(a2, base + delta - 1);
        pb.anchors.push_back(a1);
        pb.anchors.push_back(a2);
        pb.anchor_links.emplace_back(a1, take_slot());
        pb.anchor_links.emplace_back(a2, take_slot());
      }
    }

    int backbone0 = pb.next_vertex;
    pb.next_vertex += backbone_len;
    if (pb.next_vertex != n) {
      // Adjust the backbone to land exactly on n.
      backbone_len += n - pb.next_vertex;
      pb.next_vertex = n;
      if (backbone_len < 1) continue;
    }
    for (int i = 0; i + 1 < backbone_len; ++i)
      pb.edges.emplace_back(backbone0 + i, backbone0 + i + 1);
    int needed_slots = next_slot + 1;
    if (needed_slots > backbone_len) continue;  // not enough room this attempt
    for (auto [v, slot] : pb.anchor_links) pb.edges.emplace_back(v, backbone0 + slot);

    // A few extra backbone edges for texture, respecting the degree cap.
    Graph draft(n, pb.edges);
    std::vector<std::pair<int, int>> extra;
    int tries = rng.uniform(0, backbone_len);
    for (int i = 0; i < tries; ++i) {
      int x = backbone0 + rng.uniform(0, backbone_len - 1);
      int y = backbone0 + rng.uniform(0, backbone_len - 1);
      if (x == y) continue;
      extra.emplace_back(std::min(x, y), std::max(x, y));
    }
    std::sort(extra.begin(), extra.end());
    extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
    std::vector<std::pair<int, int>> accepted = pb.edges;
    for (auto [x, y] : extra) {
      if (draft.adjacent(x, y)) continue;
      std::vector<std::pair<int, int>> candidate = accepted;
      candidate.emplace_back(x, y);
      Graph cg(n, candidate);
      if (cg.max_degree() > delta) continue;
      bool far = true;
      for (size_t i = 0; i < pb.anchors.size() && far; ++i) {
        auto dist = bfs_distances(cg, pb.anchors[i]);
        for (size_t j = i + 1; j < pb.anchors.size(); ++j)
          if (dist[pb.anchors[j]] != -1 && dist[pb.anchors[j]] < dmin) far = false;
      }
      if (!far) continue;
      accepted = std::move(candidate);
      draft = std::move(cg);
    }

    Graph g(n, accepted);
    if (!is_connected(g) || g.is_complete() || g.max_degree() != delta) continue;

    InstanceBundle b;
    b.graph = std::move(g);
    b.restricted = pb.anchors;
    std::sort(b.restricted.begin(), b.restricted.end());
    b.lists = palette_lists(b.graph);
    for (int p : b.restricted) {
      std::vector<int> colors;
      if (rng.chance(0.8)) colors.push_back(1);  // encourage collisions
      std::vector<int> pool;
      for (int c = 1; c <= delta; ++c)
        if (colors.empty() || c != colors[0]) pool.push_back(c);
      rng.shuffle(pool);
      for (int c : pool)
        if (static_cast<int>(colors.size()) < list_size) colors.push_back(c);
      b.lists.set(p, colors);
    }
    b.mode_hint = mode;
    b.verdict = Verdict::kUnknown;
    b.note = "seeded random instance, delta " + std::to_string(delta);

    if (!validate_hypotheses(b.graph, b.restricted, b.lists, mode).ok()) continue;
    return b;
  }
  throw std::invalid_argument("random_instance: no valid instance within the retry budget");
}

// One record per examined instance.
struct SearchRecord {
  int id = 0;
  std::string verdict;
  std::string detail;
};

struct SearchReport {
  std::vector<SearchRecord> records;
  int examined = 0;
  int counterexamples = 0;
};

enum class SearchProblem { kShortLists, kProperPrecolorings };

namespace detail {

inline std::string encode_edges(const Graph& g) {
  std::string out;
  for (auto [u, v] : g.edges()) {
    if (!out.empty()) out += ",";
    out += std::to_string(u) + "-" + std::to_string(v);
  }
  return out;
}

inline Graph random_connected_graph(Rng& rng, int n, int max_deg) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(v, rng.uniform(0, v - 1));
  Graph g(n, edges);
  int additions = rng.uniform(0, n);
  for (int i = 0; i < additions; ++i) {
    int x = rng.uniform(0, n - 1), y = rng.uniform(0, n - 1);
    if (x == y || g.adjacent(x, y)) continue;
    if (g.degree(x) >= max_deg || g.degree(y) >= max_deg) continue;
    edges.emplace_back(x, y);
    g = Graph(n, edges);
  }
  return g;
}

}  // namespace detail

// Experimental search for counterexamples. kShortLists samples independent
// restricted sets with lists of the given size inside the full palette and
// asks the exact oracle for colorability; kProperPrecolorings samples proper
// partial colorings and asks for avoidability. Known hard instances matching
// the requested degree are queued first so the search space always contains
// them. Reports every counterexample found plus exhaustion statistics.
inline SearchReport search_counterexample(int delta, int max_n, int list_size,
                                          SearchProblem problem, int budget,
                                          std::uint64_t seed = 1) {
  if (delta < 4) throw std::invalid_argument("delta must be at least 4");
  SearchReport report;
  Rng rng(seed);

  auto emit = [&](const std::string& verdict, const std::string& detail) {
    SearchRecord rec;
    rec.id = report.examined++;
    rec.verdict = verdict;
    rec.detail = detail;
    if (verdict == "uncolorable" || verdict == "unavoidable") ++report.counterexamples;
    report.records.push_back(std::move(rec));
  };

  // Known corpus first.
  if (problem == SearchProblem::kProperPrecolorings && delta == 4) {
    auto fixture = gen_unavoidable_precoloring();
    bool avoidable = exact_avoid(fixture.graph, *fixture.precoloring, delta).has_value();
    emit(avoidable ? "avoidable" : "unavoidable",
         "corpus triple-gadget instance, " + detail::encode_edges(fixture.graph));
  }

  while (report.examined < budget) {
    int n = rng.uniform(std::min(delta + 2, max_n), std::max(delta + 2, max_n));
    Graph g = detail::random_connected_graph(rng, n, delta);
    if (g.is_complete()) continue;
    if (problem == SearchProblem::kShortLists) {
      // Independent restricted set, greedy from a random order.
      std::vector<int> order(n);
      for (int v = 0; v < n; ++v) order[v] = v;
      rng.shuffle(order);
      std::vector<int> restricted;
      std::vector<char> blocked(n, 0);
      for (int v : order) {
        if (blocked[v]) continue;
        restricted.push_back(v);
        blocked[v] = 1;
        for (int w : g.neighbors(v)) blocked[w] = 1;
        if (static_cast<int>(restricted.size()) >= std::max(1, n / 4)) break;
      }
      ListAssignment lists = palette_lists(g);
      const int delta_g = g.max_degree();
      if (delta_g < 1) continue;
      for (int p : restricted) {
        std::vector<int> pool;
        for (int c = 1; c <= delta_g; ++c) pool.push_back(c);
        rng.shuffle(pool);
        pool.resize(std::min<size_t>(pool.size(), std::max(1, list_size)));
        lists.set(p, pool);
      }
      bool colorable = exact_list_color(g, lists).has_value();
      emit(colorable ? "colorable" : "uncolorable",
           colorable ? "n=" + std::to_string(n)
                     : "n=" + std::to_string(n) + " " + detail::encode_edges(g));
    } else {
      PartialColoring phi(n);
      std::vector<int> order(n);
      for (int v = 0; v < n; ++v) order[v] = v;
      rng.shuffle(order);
      int targets = rng.uniform(1, std::max(1, n / 2));
      const int delta_g = std::max(1, g.max_degree());
      for (int v : order) {
        if (phi.domain_size() >= targets) break;
        std::vector<int> pool;
        for (int c = 1; c <= delta_g; ++c) {
          bool clash = false;
          for (int w : g.neighbors(v))
            if (phi.colored(w) && phi.color(w) == c) clash = true;
          if (!clash) pool.push_back(c);
        }
        if (pool.empty()) continue;
        phi.set(v, pool[rng.uniform(0, static_cast<int>(pool.size()) - 1)]);
      }
      bool avoidable = exact_avoid(g, phi, delta_g).has_value();
      emit(avoidable ? "avoidable" : "unavoidable",
           avoidable ? "n=" + std::to_string(n)
                     : "n=" + std::to_string(n) + " " + detail::encode_edges(g));
    }
  }
  return report;
}

}  // namespace gallai
