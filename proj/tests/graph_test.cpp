#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "dgc/graph.hpp"

using namespace dgc;

namespace {

Graph path(Vertex n) {
  Graph g(n);
  for (Vertex i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph cycle(Vertex n) {
  Graph g = path(n);
  g.add_edge(n - 1, 0);
  return g;
}

Graph complete(Vertex n) {
  Graph g(n);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

// Reference BFS distances by repeated relaxation over the edge list.
std::vector<int> distances(const Graph& g, const std::vector<Vertex>& seeds) {
  std::vector<int> d(g.num_vertices(), 1 << 20);
  for (Vertex s : seeds) d[s] = 0;
  const auto edges = g.edges();
  for (bool changed = true; changed;) {
    changed = false;
    for (const Edge& e : edges) {
      if (d[e.u] + 1 < d[e.v]) d[e.v] = d[e.u] + 1, changed = true;
      if (d[e.v] + 1 < d[e.u]) d[e.u] = d[e.v] + 1, changed = true;
    }
  }
  return d;
}

Graph random_graph(Vertex n, double q, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(q);
  Graph g(n);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (coin(rng)) g.add_edge(a, b);
  return g;
}

}  // namespace

TEST(Graph, AddEdge) {
  Graph g;
  EXPECT_TRUE(g.add_edge(0, 1));
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(1, 0));
  EXPECT_EQ(g.num_vertices(), 2u);
}

TEST(Graph, AddEdgeTwiceIsNoOp) {
  Graph g;
  g.add_edge(0, 1);
  EXPECT_FALSE(g.add_edge(1, 0));
  EXPECT_EQ(g.num_edges(), 1u);
}

TEST(Graph, SelfLoopRejected) {
  Graph g(3);
  EXPECT_THROW(g.add_edge(0, 0), GraphError);
  EXPECT_THROW(g.remove_edge(2, 2), GraphError);
  EXPECT_THROW(Edge::make(4, 4), GraphError);
}

TEST(Graph, RemoveEdge) {
  Graph g;
  g.add_edge(0, 1);
  EXPECT_TRUE(g.remove_edge(1, 0));
  EXPECT_EQ(g.num_edges(), 0u);
  EXPECT_FALSE(g.has_edge(0, 1));
}

TEST(Graph, RemoveMissingEdge) {
  Graph g = path(5);
  const Graph before = g;
  EXPECT_FALSE(g.remove_edge(1, 3));
  EXPECT_EQ(g, before);
}

TEST(Graph, AddThenRemoveRestoresAdjacency) {
  Graph g = cycle(6);
  std::vector<std::vector<Vertex>> before;
  for (Vertex v = 0; v < 6; ++v) before.emplace_back(g.neighbors(v).begin(), g.neighbors(v).end());
  g.add_edge(2, 5);
  g.remove_edge(2, 5);
  for (Vertex v = 0; v < 6; ++v) {
    EXPECT_TRUE(std::equal(before[v].begin(), before[v].end(), g.neighbors(v).begin(),
                           g.neighbors(v).end()));
  }
}

TEST(Graph, RandomOpsKeepSymmetryAndEdgeCount) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Vertex> pick(0, 29);
  Graph g(30);
  std::set<Edge> model;
  for (int step = 0; step < 5000; ++step) {
    const Vertex a = pick(rng), b = pick(rng);
    if (a == b) continue;
    const Edge e = Edge::make(a, b);
    if (rng() & 1) {
      EXPECT_EQ(g.add_edge(a, b), model.insert(e).second);
    } else {
      EXPECT_EQ(g.remove_edge(a, b), model.erase(e) == 1);
    }
  }
  std::size_t degree_sum = 0;
  for (Vertex u = 0; u < 30; ++u) {
    degree_sum += g.degree(u);
    for (Vertex v : g.neighbors(u)) {
      const auto nv = g.neighbors(v);
      EXPECT_NE(std::find(nv.begin(), nv.end(), u), nv.end());
      EXPECT_TRUE(g.has_edge(u, v));
    }
  }
  EXPECT_EQ(degree_sum, 2 * g.num_edges());
  const auto edges = g.edges();
  EXPECT_EQ(std::vector<Edge>(model.begin(), model.end()), edges);
}

TEST(KHop, PathDepthThree) {
  const Graph g = path(5);
  const std::vector<Vertex> seeds{0};
  EXPECT_EQ(k_hop(g, seeds, 3), (std::vector<Vertex>{0, 1, 2, 3}));
}

TEST(KHop, DepthZeroIsSeeds) {
  const Graph g = complete(5);
  const std::vector<Vertex> seeds{3, 1, 3};
  EXPECT_EQ(k_hop(g, seeds, 0), (std::vector<Vertex>{1, 3}));
}

TEST(KHop, StarFromLeaf) {
  Graph g(6);
  for (Vertex leaf = 1; leaf < 6; ++leaf) g.add_edge(0, leaf);
  const std::vector<Vertex> seeds{4};
  EXPECT_EQ(k_hop(g, seeds, 2).size(), 6u);
}

TEST(KHop, UnknownVertex) {
  const Graph g = path(3);
  const std::vector<Vertex> seeds{9};
  EXPECT_THROW(k_hop(g, seeds, 1), GraphError);
  const std::vector<Vertex> ok{0};
  EXPECT_THROW(k_hop(g, ok, -1), GraphError);
}

TEST(KHop, MatchesDistancesAndIsMonotone) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = random_graph(40, 0.06, rng);
    const std::vector<Vertex> seeds{static_cast<Vertex>(trial), static_cast<Vertex>(39 - trial)};
    const auto d = distances(g, seeds);
    std::vector<Vertex> prev;
    for (int k = 0; k <= 40; ++k) {
      const auto ball = k_hop(g, seeds, k);
      std::vector<Vertex> expect;
      for (Vertex v = 0; v < 40; ++v)
        if (d[v] <= k) expect.push_back(v);
      ASSERT_EQ(ball, expect) << "k=" << k;
      EXPECT_TRUE(std::includes(ball.begin(), ball.end(), prev.begin(), prev.end()));
      prev = ball;
    }
  }
}

TEST(Induced, TriangleFromK4) {
  const std::vector<Vertex> w{0, 1, 2};
  const LocalSubgraph h = induced(complete(4), w);
  EXPECT_EQ(h.graph.num_vertices(), 3u);
  EXPECT_EQ(h.graph.num_edges(), 3u);
}

TEST(Induced, Empty) {
  const LocalSubgraph h = induced(complete(4), {});
  EXPECT_EQ(h.graph.num_vertices(), 0u);
  EXPECT_EQ(h.graph.num_edges(), 0u);
}

TEST(Induced, C5SubsetIsPath) {
  // C5 edges with both ends in {0,1,2,3}: 01, 12, 23 (34 and 40 leave the set).
  const std::vector<Vertex> w{0, 1, 2, 3};
  const LocalSubgraph h = induced(cycle(5), w);
  EXPECT_EQ(h.graph.edges(), (std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}}));
}

TEST(Induced, WholeVertexSetIsIdentity) {
  std::mt19937_64 rng(3);
  const Graph g = random_graph(25, 0.2, rng);
  std::vector<Vertex> all(25);
  for (Vertex v = 0; v < 25; ++v) all[v] = v;
  const LocalSubgraph h = induced(g, all);
  EXPECT_EQ(h.graph, g);
  EXPECT_EQ(h.origin, all);
}

TEST(Induced, FourSubsetsAgreeWithParent) {
  std::mt19937_64 rng(5);
  const Graph g = random_graph(60, 0.1, rng);
  std::vector<Vertex> w;
  for (Vertex v = 0; v < 60; v += 2) w.push_back(v);
  std::shuffle(w.begin(), w.end(), rng);
  const LocalSubgraph h = induced(g, w);
  ASSERT_EQ(h.origin.size(), w.size());
  EXPECT_EQ(h.local_of(1), -1);
  std::uniform_int_distribution<std::size_t> pick(0, h.origin.size() - 1);
  for (int trial = 0; trial < 500; ++trial) {
    std::array<std::size_t, 4> s{pick(rng), pick(rng), pick(rng), pick(rng)};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) {
        if (s[i] == s[j]) continue;
        const auto a = static_cast<Vertex>(s[i]), b = static_cast<Vertex>(s[j]);
        EXPECT_EQ(h.graph.has_edge(a, b), g.has_edge(h.origin[a], h.origin[b]));
        EXPECT_EQ(h.local_of(h.origin[a]), static_cast<std::int64_t>(a));
      }
  }
}
