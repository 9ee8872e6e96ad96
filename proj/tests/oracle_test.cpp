#include "gallai/oracle.hpp"

#include <gtest/gtest.h>

#include <vector>

#include "gallai/coloring.hpp"
#include "test_util.hpp"

using namespace gallai;

namespace {

// Exhaustive enumeration of all color tuples from the lists.
bool enumerate_colorable(const Graph& g, const ListAssignment& lists) {
  const int n = g.vertex_count();
  std::vector<int> pick(n, 0);
  while (true) {
    PartialColoring c(n);
    for (int v = 0; v < n; ++v) {
      if (lists.at(v).empty()) return false;
      c.set(v, lists.at(v)[pick[v]]);
    }
    if (is_proper(g, c)) return true;
    int v = 0;
    while (v < n) {
      if (++pick[v] < static_cast<int>(lists.at(v).size())) break;
      pick[v] = 0;
      ++v;
    }
    if (v == n) return false;
  }
}

}  // namespace

TEST(ExactListColor, TriangleWithStaggeredLists) {
  Graph k3 = testutil::complete(3);
  ListAssignment lists(3);
  lists.set(0, {1, 2});
  lists.set(1, {2, 3});
  lists.set(2, {1, 3});
  auto c = exact_list_color(k3, lists);
  ASSERT_TRUE(c.has_value());
  EXPECT_TRUE(is_proper(k3, *c));
  EXPECT_TRUE(respects_lists(*c, lists));
}

TEST(ExactListColor, TriangleTwoColorsFails) {
  Graph k3 = testutil::complete(3);
  ListAssignment lists(3);
  for (int v = 0; v < 3; ++v) lists.set(v, {1, 2});
  EXPECT_FALSE(exact_list_color(k3, lists).has_value());
}

TEST(ExactListColor, OddCycleTwoColorsFails) {
  Graph c5 = testutil::cycle(5);
  ListAssignment lists(5);
  for (int v = 0; v < 5; ++v) lists.set(v, {1, 2});
  EXPECT_FALSE(exact_list_color(c5, lists).has_value());
}

TEST(ExactListColor, AgreesWithEnumerationOnSmallInstances) {
  // Exhaustive graphs on up to 4 vertices with a fixed list family, then
  // seeded samples on 5 and 6 vertices with palette at most 4.
  std::vector<std::vector<int>> family = {{1}, {1, 2}, {2, 3}, {1, 2, 3}, {1, 2, 3, 4}};
  for (int n = 2; n <= 4; ++n) {
    int pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (1ULL << pairs); ++mask) {
      Graph g = testutil::graph_from_mask(n, mask);
      // Cycle through list-family assignments via mixed radix counting.
      int combos = 1;
      for (int v = 0; v < n; ++v) combos *= static_cast<int>(family.size());
      for (int code = 0; code < combos; ++code) {
        ListAssignment lists(n);
        int rest = code;
        for (int v = 0; v < n; ++v) {
          lists.set(v, family[rest % family.size()]);
          rest /= static_cast<int>(family.size());
        }
        ASSERT_EQ(exact_list_color(g, lists).has_value(), enumerate_colorable(g, lists));
      }
    }
  }
  testutil::Rng rng(31);
  for (int round = 0; round < 400; ++round) {
    int n = rng.uniform(5, 6);
    Graph g = testutil::random_connected_graph(rng, n, n - 1);
    ListAssignment lists(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> list;
      for (int c = 1; c <= 4; ++c)
        if (rng.chance(0.55)) list.push_back(c);
      if (list.empty()) list.push_back(rng.uniform(1, 4));
      lists.set(v, list);
    }
    ASSERT_EQ(exact_list_color(g, lists).has_value(), enumerate_colorable(g, lists));
  }
}

TEST(ExactListColor, ReturnedColoringAlwaysValid) {
  testutil::Rng rng(37);
  for (int round = 0; round < 200; ++round) {
    int n = rng.uniform(3, 8);
    Graph g = testutil::random_connected_graph(rng, n, 5);
    ListAssignment lists(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> list;
      for (int c = 1; c <= 5; ++c)
        if (rng.chance(0.6)) list.push_back(c);
      if (list.empty()) list.push_back(1);
      lists.set(v, list);
    }
    auto c = exact_list_color(g, lists);
    if (c) {
      EXPECT_TRUE(c->total());
      EXPECT_TRUE(is_proper(g, *c));
      EXPECT_TRUE(respects_lists(*c, lists));
    }
  }
}

TEST(ExactAvoid, PathFlipsForcedColor) {
  Graph path = testutil::path(2);
  PartialColoring phi(2);
  phi.set(0, 1);
  auto f = exact_avoid(path, phi, 2);
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(f->color(0), 2);
  EXPECT_EQ(f->color(1), 1);
}

TEST(ExactAvoid, TriangleAllOnesWithThreeColorsFails) {
  Graph k3 = testutil::complete(3);
  PartialColoring phi(3);
  for (int v = 0; v < 3; ++v) phi.set(v, 1);
  EXPECT_FALSE(exact_avoid(k3, phi, 3).has_value());
}

TEST(ExactAvoid, EvenCycleAlternatingTwoColorsFails) {
  // Both proper 2-colorings of an even cycle are the two alternations, and
  // each clashes with the avoided coloring somewhere.
  Graph c4 = testutil::cycle(4);
  PartialColoring phi(4);
  phi.set(0, 1);
  phi.set(1, 2);
  phi.set(2, 1);
  phi.set(3, 2);
  int proper = 0, avoiding = 0;
  for (int first = 1; first <= 2; ++first) {
    PartialColoring c(4);
    for (int v = 0; v < 4; ++v) c.set(v, v % 2 == 0 ? first : 3 - first);
    if (is_proper(c4, c)) {
      ++proper;
      bool avoids = true;
      for (int v = 0; v < 4; ++v)
        if (c.color(v) == phi.color(v)) avoids = false;
      if (avoids) ++avoiding;
    }
  }
  ASSERT_EQ(proper, 2);
  ASSERT_EQ(avoiding, 0);
  EXPECT_FALSE(exact_avoid(c4, phi, 2).has_value());
}
