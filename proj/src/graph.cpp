#include "dgc/graph.hpp"

#include <algorithm>
#include <string>

namespace dgc {

Edge Edge::make(Vertex a, Vertex b) {
  if (a == b) {
    throw GraphError("self-loop on vertex " + std::to_string(a));
  }
  return a < b ? Edge{a, b} : Edge{b, a};
}

void Graph::ensure_vertex(Vertex v) {
  if (v >= adj_.size()) adj_.resize(std::size_t{v} + 1);
}

bool Graph::has_edge(Vertex a, Vertex b) const {
  if (a == b) return false;
  return slots_.contains(Edge::make(a, b).key());
}

bool Graph::add_edge(Vertex a, Vertex b) {
  const Edge e = Edge::make(a, b);
  ensure_vertex(e.v);
  auto [it, inserted] = slots_.try_emplace(e.key());
  if (!inserted) return false;
  it->second.in_u = static_cast<std::uint32_t>(adj_[e.u].size());
  it->second.in_v = static_cast<std::uint32_t>(adj_[e.v].size());
  adj_[e.u].push_back(e.v);
  adj_[e.v].push_back(e.u);
  return true;
}

// Swap-removes adj_[owner][slot] and repairs the slot record of the moved entry.
void Graph::detach(Vertex owner, std::uint32_t slot) {
  auto& list = adj_[owner];
  const auto last = static_cast<std::uint32_t>(list.size() - 1);
  if (slot != last) {
    const Vertex moved = list[last];
    list[slot] = moved;
    Slots& s = slots_.at(Edge::make(owner, moved).key());
    (owner < moved ? s.in_u : s.in_v) = slot;
  }
  list.pop_back();
}

bool Graph::remove_edge(Vertex a, Vertex b) {
  const Edge e = Edge::make(a, b);
  auto it = slots_.find(e.key());
  if (it == slots_.end()) return false;
  const Slots s = it->second;
  slots_.erase(it);
  detach(e.u, s.in_u);
  detach(e.v, s.in_v);
  return true;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(slots_.size());
  for (Vertex u = 0; u < adj_.size(); ++u) {
    for (Vertex v : adj_[u]) {
      if (u < v) out.push_back({u, v});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
  for (const auto& [key, unused] : a.slots_) {
    if (!b.slots_.contains(key)) return false;
  }
  return true;
}

std::int64_t LocalSubgraph::local_of(Vertex parent) const {
  auto it = std::lower_bound(origin.begin(), origin.end(), parent);
  if (it == origin.end() || *it != parent) return -1;
  return it - origin.begin();
}

std::vector<Vertex> k_hop(const Graph& g, std::span<const Vertex> seeds, int depth) {
  if (depth < 0) throw GraphError("k_hop depth must be non-negative");
  std::vector<std::uint8_t> seen(g.num_vertices(), 0);
  std::vector<Vertex> ball;
  for (Vertex s : seeds) {
    if (!g.has_vertex(s)) throw GraphError("k_hop: unknown vertex " + std::to_string(s));
    if (!seen[s]) {
      seen[s] = 1;
      ball.push_back(s);
    }
  }
  // Level-synchronous BFS; ball[begin, end) is the current frontier.
  std::size_t begin = 0;
  for (int level = 0; level < depth; ++level) {
    const std::size_t end = ball.size();
    if (begin == end) break;
    for (std::size_t i = begin; i < end; ++i) {
      for (Vertex w : g.neighbors(ball[i])) {
        if (!seen[w]) {
          seen[w] = 1;
          ball.push_back(w);
        }
      }
    }
    begin = end;
  }
  std::sort(ball.begin(), ball.end());
  return ball;
}

LocalSubgraph induced(const Graph& g, std::span<const Vertex> vertices) {
  LocalSubgraph out;
  out.origin.assign(vertices.begin(), vertices.end());
  std::sort(out.origin.begin(), out.origin.end());
  out.origin.erase(std::unique(out.origin.begin(), out.origin.end()), out.origin.end());

  constexpr Vertex kOutside = ~Vertex{0};
  std::vector<Vertex> local(g.num_vertices(), kOutside);
  for (std::size_t i = 0; i < out.origin.size(); ++i) {
    const Vertex p = out.origin[i];
    if (!g.has_vertex(p)) throw GraphError("induced: unknown vertex " + std::to_string(p));
    local[p] = static_cast<Vertex>(i);
  }

  out.graph = Graph(out.origin.size());
  for (std::size_t i = 0; i < out.origin.size(); ++i) {
    for (Vertex w : g.neighbors(out.origin[i])) {
      const Vertex j = local[w];
      if (j != kOutside && i < j) out.graph.add_edge(static_cast<Vertex>(i), j);
    }
  }
  return out;
}

}  // namespace dgc
