#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace dgc {

/// Dense internal vertex id in [0, n).
using Vertex = std::uint32_t;

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Undirected edge stored canonically with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  /// Canonicalizes the endpoint order; throws GraphError on a self-loop.
  static Edge make(Vertex a, Vertex b);

  std::uint64_t key() const { return (std::uint64_t{u} << 32) | v; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Mutable simple undirected graph.
///
/// Each vertex keeps an unordered neighbor vector for linear iteration; a
/// single hash table maps every edge to the positions of its two adjacency
/// slots, giving expected O(1) membership, insertion and removal.
/// Vertices are created on first sight and never deleted.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}

  std::size_t num_vertices() const { return adj_.size(); }
  std::size_t num_edges() const { return slots_.size(); }

  /// Grows the vertex set so that id v exists.
  void ensure_vertex(Vertex v);

  bool has_vertex(Vertex v) const { return v < adj_.size(); }
  bool has_edge(Vertex a, Vertex b) const;

  /// Returns false if the edge was already present.
  bool add_edge(Vertex a, Vertex b);
  /// Returns false if the edge was absent.
  bool remove_edge(Vertex a, Vertex b);

  std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(v); }
  std::size_t degree(Vertex v) const { return adj_.at(v).size(); }

  /// All edges in canonical orientation, sorted.
  std::vector<Edge> edges() const;

  /// Same vertex count and same edge set.
  friend bool operator==(const Graph& a, const Graph& b);

 private:
  struct Slots {
    std::uint32_t in_u;  // index of v inside adj_[u]
    std::uint32_t in_v;  // index of u inside adj_[v]
  };

  void detach(Vertex owner, std::uint32_t slot);

  std::vector<std::vector<Vertex>> adj_;
  std::unordered_map<std::uint64_t, Slots> slots_;
};

/// Graph induced on a vertex subset, relabeled to dense local ids.
struct LocalSubgraph {
  /// origin[local] = parent vertex; strictly increasing.
  std::vector<Vertex> origin;
  Graph graph;

  /// Local id of a parent vertex, or -1 when it is outside the subset.
  std::int64_t local_of(Vertex parent) const;
};

/// Vertices at distance <= depth from any seed, sorted ascending.
/// Throws GraphError on an unknown seed.
std::vector<Vertex> k_hop(const Graph& g, std::span<const Vertex> seeds, int depth);

/// Subgraph induced by `vertices` (duplicates allowed, order irrelevant).
LocalSubgraph induced(const Graph& g, std::span<const Vertex> vertices);

}  // namespace dgc
