#include "gallai/avoidance.hpp"

#include <gtest/gtest.h>

#include "gallai/instances.hpp"
#include "gallai/oracle.hpp"
#include "test_util.hppp"

using namespace gallai;

namespace {

void expect_avoider(const Graph& g, const PartialColoring& phi, const PartialColoring& out) {
  EXPECT_TRUE(out.total());
  EXPECT_TRUE(is_proper(g, out));
  for (int v = 0; v < g.vertex_count(); ++v)
    if (phi.colored(v)) EXPECT_NE(out.color(v), phi.color(v));
}

// Component template for the conflict-graph proposition: a clique whose
// vertices are picked up by distinct restricted vertices.
struct ConflictFixture {
  Graph graph;
  std::vector<int> restricted;
  PartialColoring phi;
};

// Two K_{delta-1} components, each with three clique vertices adjacent to a
// shared trio of restricted vertices (d0 = 1 per outside vertex, d1 = 2).
ConflictFixture conflict_fixture(int delta) {
  const int m = delta - 1;
  std::vector<std::pair<int, int>> edges;
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) edges.emplace_back(c * m + i, c * m + j);
  int p0 = 2 * m, p1 = 2 * m + 1, p2 = 2 * m + 2;
  for (int c = 0; c < 2; ++c) {
    edges.emplace_back(p0, c * m + 0);
    edges.emplace_back(p1, c * m + 1);
    edges.emplace_back(p2, c * m + 2);
  }
  ConflictFixture f;
  f.graph = Graph(2 * m + 3, edges);
  f.restricted = {p0, p1, p2};
  f.phi = PartialColoring(f.graph.vertex_count());
  f.phi.set(p0, 1);
  f.phi.set(p1, 2);
  f.phi.set(p2, 1);
  return f;
}

}  // namespace

TEST(AvoidConflictGraph, PairGadgetAvoids) {
  auto f = conflict_fixture(5);
  AvoidanceParams params;
  params.d0 = 1;
  params.d1 = 2;
  auto out = avoid_conflict_graph(f.graph, f.restricted, f.phi, params);
  expect_avoider(f.graph, f.phi, out);
}

TEST(AvoidConflictGraph, CliqueNeighborsGetDistinctColors) {
  auto f = conflict_fixture(6);
  AvoidanceParams params;
  params.d0 = 1;
  params.d1 = 2;
  auto out = avoid_conflict_graph(f.graph, f.restricted, f.phi, params);
  expect_avoider(f.graph, f.phi, out);
  // d0+1 = 2 of the restricted vertices around each component's chosen leaf
  // block carry distinct colors; with d0 = 1 any two of the trio differ.
  EXPECT_FALSE(out.color(f.restricted[0]) == out.color(f.restricted[1]) &&
               out.color(f.restricted[1]) == out.color(f.restricted[2]));
}

TEST(AvoidConflictGraph, RejectsWhenNoQualifyingLeafBlock) {
  // A component seen by a single restricted vertex cannot offer d0+1 = 2
  // distinct neighbors.
  const int delta = 4;
  std::vector<std::pair<int, int>> edges = {{0, 1}, {1, 2}, {0, 2}};
  edges.emplace_back(3, 0);
  edges.emplace_back(3, 4);
  edges.emplace_back(4, 1);  // keep connected; 4 is outside P with 0 P-neighbors
  Graph g(5, edges);
  (void)delta;
  PartialColoring phi(5);
  phi.set(3, 1);
  AvoidanceParams params;
  params.d0 = 1;
  params.d1 = 1;
  EXPECT_THROW(avoid_conflict_graph(g, {3}, phi, params), hypothesis_error);
}

TEST(AvoidSparse, IndependentDenseSpecialCase) {
  // d = 3 with an independent restricted set: every outside vertex touching
  // the set has at least three neighbors in it.
  std::vector<std::pair<int, int>> edges;
  // Restricted set {0,1,2}; inner vertices 3,4 each adjacent to all of it.
  edges = {{0, 3}, {1, 3}, {2, 3}, {0, 4}, {1, 4}, {2, 4}, {3, 4}, {3, 5}, {4, 5}};
  Graph g(6, edges);
  ASSERT_EQ(g.max_degree(), 4);
  PartialColoring phi(6);
  phi.set(0, 1);
  phi.set(1, 1);
  phi.set(2, 2);
  auto out = avoid_sparse_precolored_subgraph(g, {0, 1, 2}, phi, 3);
  expect_avoider(g, phi, out);
}

TEST(AvoidSparse, MatchingInducedSubgraph) {
  // Restricted set inducing a matching needs d = 5: max induced degree 1 < 3.
  std::vector<std::pair<int, int>> edges;
  // P = {0,1,2,3} with edges 0-1 and 2-3; hub vertices 4,5 see all of P plus
  // one another; vertex 6 pads the degree.
  edges = {{0, 1}, {2, 3}};
  for (int hub : {4, 5})
    for (int p = 0; p < 4; ++p) edges.emplace_back(hub, p);
  edges.emplace_back(4, 6);
  edges.emplace_back(5, 6);
  Graph g(7, edges);
  ASSERT_GE(g.max_degree(), 5);
  PartialColoring phi(7);
  for (int p = 0; p < 4; ++p) phi.set(p, 1 + p % 2);
  auto out = avoid_sparse_precolored_subgraph(g, {0, 1, 2, 3}, phi, 5);
  expect_avoider(g, phi, out);
}

TEST(AvoidSparse, RejectsUnderDenseInducedSubgraph) {
  Graph g = testutil::cycle(6);
  PartialColoring phi(6);
  phi.set(0, 1);
  phi.set(1, 1);
  // 0-1 adjacent: induced max degree 1, and d = 3 demands below 1.
  EXPECT_THROW(avoid_sparse_precolored_subgraph(g, {0, 1}, phi, 3), hypothesis_error);
}

TEST(AvoidSmallClasses, SingleColoredVertex) {
  // One colored vertex is avoidable whenever the graph is not complete.
  Graph g(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {3, 5}});
  ASSERT_EQ(g.max_degree(), 4);
  PartialColoring phi(6);
  phi.set(0, 1);
  auto out = avoid_small_color_classes(g, phi, 1);
  ASSERT_TRUE(out.has_value());
  expect_avoider(g, phi, *out);
}

TEST(AvoidSmallClasses, JoinExampleRejectedOnClassSize) {
  // K_d joined with two vertices, the clique and one extra all colored 1:
  // delta - k + 1 vertices of one color break the hypothesis.
  const int d = 4;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) edges.emplace_back(i, j);
  for (int i = 0; i < d; ++i) {
    edges.emplace_back(d, i);
    edges.emplace_back(d + 1, i);
  }
  Graph g(d + 2, edges);
  PartialColoring phi(d + 2);
  for (int i = 0; i < d; ++i) phi.set(i, 1);
  phi.set(d, 1);
  EXPECT_THROW(avoid_small_color_classes(g, phi, 1), hypothesis_error);
}

TEST(AvoidSmallClasses, RandomInstancesMeetingHypotheses) {
  testutil::Rng rng(71);
  for (int round = 0; round < 40; ++round) {
    int n = rng.uniform(8, 14);
    Graph g = testutil::random_connected_graph(rng, n, 5);
    if (g.is_complete() || g.max_degree() < 3) continue;
    int k = rng.uniform(1, 2);
    int cap = g.max_degree() - k;
    if (cap < 1) continue;
    PartialColoring phi(n);
    std::vector<int> remaining(k, cap);
    for (int v = 0; v < n; ++v) {
      if (!rng.chance(0.3)) continue;
      int c = rng.uniform(1, k);
      bool clash = false;
      for (int w : g.neighbors(v))
        if (phi.colored(w) && phi.color(w) == c) clash = true;
      if (clash || remaining[c - 1] == 0) continue;
      phi.set(v, c);
      --remaining[c - 1];
    }
    auto out = avoid_small_color_classes(g, phi, k);
    ASSERT_TRUE(out.has_value());
    expect_avoider(g, phi, *out);
  }
}

TEST(AvoidKPlusOne, NoClashIsIdentity) {
  Graph g = testutil::cycle(4);
  PartialColoring f(4);
  for (int v = 0; v < 4; ++v) f.set(v, 1 + v % 2);
  PartialColoring phi(4);
  phi.set(0, 2);
  auto out = avoid_kplus1(g, phi, 2, f);
  for (int v = 0; v < 4; ++v) EXPECT_EQ(out.color(v), f.color(v));
}

TEST(AvoidKPlusOne, SingleClashMovesToFreshColor) {
  Graph g = testutil::cycle(4);
  PartialColoring f(4);
  for (int v = 0; v < 4; ++v) f.set(v, 1 + v % 2);
  PartialColoring phi(4);
  phi.set(0, 1);
  auto out = avoid_kplus1(g, phi, 2, f);
  EXPECT_EQ(out.color(0), 3);
  expect_avoider(g, phi, out);
}

TEST(AvoidKPlusOne, WholeIndependentSetMoves) {
  Graph g = testutil::cycle(6);
  PartialColoring f(6);
  for (int v = 0; v < 6; ++v) f.set(v, 1 + v % 2);
  PartialColoring phi(6);
  phi.set(0, 1);
  phi.set(2, 1);
  phi.set(4, 1);
  auto out = avoid_kplus1(g, phi, 2, f);
  EXPECT_EQ(out.color(0), 3);
  EXPECT_EQ(out.color(2), 3);
  EXPECT_EQ(out.color(4), 3);
  expect_avoider(g, phi, out);
  for (int v = 0; v < 6; ++v) EXPECT_LE(out.color(v), 3);
}

TEST(AvoidKPlusOne, RejectsDependentDomain) {
  Graph g = testutil::cycle(4);
  PartialColoring f(4);
  for (int v = 0; v < 4; ++v) f.set(v, 1 + v % 2);
  PartialColoring phi(4);
  phi.set(0, 1);
  phi.set(1, 1);
  EXPECT_THROW(avoid_kplus1(g, phi, 2, f), std::invalid_argument);
}
