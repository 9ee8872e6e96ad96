#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gallai/errors.hpp"
#include "gallai/graph.hpp"

namespace gallai {

// Per-vertex finite sets of colors (positive integers), defined on a stated
// subset of the vertices. Lists are kept sorted and deduplicated. A defined
// list may be empty (residual lists can run dry; callers detect that).
class ListAssignment {
 public:
  ListAssignment() = default;
  explicit ListAssignment(int n) : lists_(n), defined_(n, 0) {}

  int size() const { return static_cast<int>(lists_.size()); }

  void set(int v, std::vector<int> colors) {
    for (int c : colors)
      if (c < 1) throw std::invalid_argument("colors must be positive");
    std::sort(colors.begin(), colors.end());
    colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
    lists_[v] = std::move(colors);
    defined_[v] = 1;
  }

  void unset(int v) {
    lists_[v].clear();
    defined_[v] = 0;
  }

  bool defined(int v) const { return defined_[v] != 0; }

  const std::vector<int>& at(int v) const {
    if (!defined_[v])
      throw std::invalid_argument("list undefined at vertex " + std::to_string(v));
    return lists_[v];
  }

  bool contains(int v, int c) const {
    const auto& l = at(v);
    return std::binary_search(l.begin(), l.end(), c);
  }

 private:
  std::vector<std::vector<int>> lists_;
  std::vector<char> defined_;
};

// Partial map vertex -> color; 0 means uncolored, colors are >= 1.
class PartialColoring {
 public:
  PartialColoring() = default;
  explicit PartialColoring(int n) : colors_(n, 0) {}

  int size() const { return static_cast<int>(colors_.size()); }
  bool colored(int v) const { return colors_[v] != 0; }
  int color(int v) const { return colors_[v]; }

  void set(int v, int c) {
    if (c < 1) throw std::invalid_argument("colors must be positive");
    colors_[v] = c;
  }
  void clear(int v) { colors_[v] = 0; }

  bool total() const {
    return std::all_of(colors_.begin(), colors_.end(), [](int c) { return c != 0; });
  }

  std::vector<int> domain() const {
    std::vector<int> d;
    for (int v = 0; v < size(); ++v)
      if (colors_[v] != 0) d.push_back(v);
    return d;
  }

  int domain_size() const { return static_cast<int>(domain().size()); }

  std::vector<int> colors_used() const {
    std::set<int> s;
    for (int c : colors_)
      if (c != 0) s.insert(c);
    return {s.begin(), s.end()};
  }

 private:
  std::vector<int> colors_;
};

// Per-vertex forbidden color sets, bound to the palette {1..max_degree}.
// Vertices with an empty set are unconstrained.
class ForbiddenAssignment {
 public:
  ForbiddenAssignment() = default;
  explicit ForbiddenAssignment(int n) : forbidden_(n) {}

  int size() const { return static_cast<int>(forbidden_.size()); }

  void set(int v, std::vector<int> colors) {
    for (int c : colors)
      if (c < 1) throw std::invalid_argument("colors must be positive");
    std::sort(colors.begin(), colors.end());
    colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
    forbidden_[v] = std::move(colors);
  }

  const std::vector<int>& at(int v) const { return forbidden_[v]; }

  std::vector<int> constrained_vertices() const {
    std::vector<int> out;
    for (int v = 0; v < size(); ++v)
      if (!forbidden_[v].empty()) out.push_back(v);
    return out;
  }

 private:
  std::vector<std::vector<int>> forbidden_;
};

// The full palette {1..max_degree(g)} on every vertex.
inline ListAssignment palette_lists(const Graph& g) {
  ListAssignment out(g.vertex_count());
  std::vector<int> palette(g.max_degree());
  for (int c = 1; c <= g.max_degree(); ++c) palette[c - 1] = c;
  for (int v = 0; v < g.vertex_count(); ++v) out.set(v, palette);
  return out;
}

// L(v) = {1..max_degree} minus the forbidden set. Errors out when some vertex
// would be left with an empty list.
inline ListAssignment lists_from_forbidden(const Graph& g, const ForbiddenAssignment& fb) {
  const int delta = g.max_degree();
  ListAssignment out(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto& f = fb.at(v);
    for (int c : f)
      if (c > delta)
        throw std::invalid_argument("forbidden color " + std::to_string(c) +
                                    " outside palette 1.." + std::to_string(delta));
    std::vector<int> list;
    for (int c = 1; c <= delta; ++c)
      if (!std::binary_search(f.begin(), f.end(), c)) list.push_back(c);
    if (list.empty())
      throw std::invalid_argument("vertex " + std::to_string(v) +
                                  " has every palette color forbidden");
    out.set(v, std::move(list));
  }
  return out;
}

// Lists on G - P after deleting the colors used on P-neighbors:
// L'(v) = L(v) \ {phi(u) : u in P adjacent to v}. Undefined on P.
inline ListAssignment residual_lists(const Graph& g, const std::vector<int>& p_set,
                                     const PartialColoring& phi, const ListAssignment& lists) {
  std::vector<char> in_p(g.vertex_count(), 0);
  for (int p : p_set) {
    in_p[p] = 1;
    if (!phi.colored(p))
      throw std::invalid_argument("residual_lists: vertex " + std::to_string(p) + " uncolored");
  }
  ListAssignment out(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (in_p[v]) continue;
    std::vector<int> list;
    for (int c : lists.at(v)) {
      bool removed = false;
      for (int u : g.neighbors(v))
        if (in_p[u] && phi.color(u) == c) {
          removed = true;
          break;
        }
      if (!removed) list.push_back(c);
    }
    out.set(v, std::move(list));
  }
  return out;
}

// No edge with equal-colored endpoints; uncolored endpoints never conflict.
inline bool is_proper(const Graph& g, const PartialColoring& c) {
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v : g.neighbors(u))
      if (u < v && c.colored(u) && c.colored(v) && c.color(u) == c.color(v)) return false;
  return true;
}

// Every colored vertex with a defined list uses a color from it.
inline bool respects_lists(const PartialColoring& c, const ListAssignment& lists) {
  for (int v = 0; v < c.size(); ++v)
    if (c.colored(v) && lists.defined(v) && !lists.contains(v, c.color(v))) return false;
  return true;
}

enum class SolveMode { kDistance4, kDistance3 };

inline int min_list_size(SolveMode mode) { return mode == SolveMode::kDistance4 ? 2 : 3; }
inline int min_distance(SolveMode mode) { return mode == SolveMode::kDistance4 ? 4 : 3; }

struct HypothesisReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks the solver preconditions and reports every violated condition:
// connectivity, max degree >= 4, non-completeness, list sizes off and on the
// restricted set, and the pairwise distance bound on the restricted set.
// With an empty restricted set the degree and distance conditions are vacuous
// and only connectivity, non-completeness and list sizes are enforced.
inline HypothesisReport validate_hypotheses(const Graph& g, const std::vector<int>& restricted,
                                            const ListAssignment& lists, SolveMode mode) {
  HypothesisReport rep;
  std::vector<char> in_p(g.vertex_count(), 0);
  for (int p : restricted) {
    if (p < 0 || p >= g.vertex_count())
      throw std::invalid_argument("restricted vertex out of range");
    in_p[p] = 1;
  }
  if (!is_connected(g)) rep.violations.push_back("graph is not connected");
  if (!restricted.empty() && g.max_degree() < 4)
    rep.violations.push_back("max degree " + std::to_string(g.max_degree()) + " is below 4");
  if (g.is_complete()) rep.violations.push_back("graph is complete");
  const int delta = g.max_degree();
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (in_p[v]) continue;
    if (!lists.defined(v) || static_cast<int>(lists.at(v).size()) < delta) {
      rep.violations.push_back("vertex " + std::to_string(v) + " outside the restricted set has " +
                               (lists.defined(v) ? std::to_string(lists.at(v).size()) : "no") +
                               " list colors; needs at least " + std::to_string(delta));
    }
  }
  const int need = min_list_size(mode);
  for (int p : restricted) {
    if (!lists.defined(p) || static_cast<int>(lists.at(p).size()) < need)
      rep.violations.push_back("restricted vertex " + std::to_string(p) + " has " +
                               (lists.defined(p) ? std::to_string(lists.at(p).size()) : "no") +
                               " list colors; needs at least " + std::to_string(need));
  }
  const int dmin = min_distance(mode);
  for (size_t i = 0; i < restricted.size(); ++i) {
    auto dist = bfs_distances(g, restricted[i]);
    for (size_t j = i + 1; j < restricted.size(); ++j) {
      int d = dist[restricted[j]];
      if (d != -1 && d < dmin)
        rep.violations.push_back("restricted vertices " + std::to_string(restricted[i]) + " and " +
                                 std::to_string(restricted[j]) + " are at distance " +
                                 std::to_string(d) + "; need at least " + std::to_string(dmin));
    }
  }
  return rep;
}

// First violation keeping `c` from being a total proper list coloring, or
// nullopt when it is one.
inline std::optional<std::string> verify_coloring(const Graph& g, const ListAssignment& lists,
                                                  const PartialColoring& c) {
  if (c.size() != g.vertex_count()) return "coloring has wrong vertex count";
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!c.colored(v)) return "vertex " + std::to_string(v) + " is uncolored";
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v : g.neighbors(u))
      if (u < v && c.color(u) == c.color(v))
        return "edge " + std::to_string(u) + "-" + std::to_string(v) +
               " has both endpoints colored " + std::to_string(c.color(u));
  for (int v = 0; v < g.vertex_count(); ++v)
    if (lists.defined(v) && !lists.contains(v, c.color(v)))
      return "vertex " + std::to_string(v) + " uses color " + std::to_string(c.color(v)) +
             " outside its list";
  return std::nullopt;
}

}  // namespace gallai
