#include "dgc/engine.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "dgc/local_views.hpp"

namespace dgc {

EngineState EngineState::from_graph(Graph g, int locality_depth, CountOptions count) {
  if (locality_depth != 2 && locality_depth != 3) {
    throw std::invalid_argument("locality depth must be 2 or 3");
  }
  EngineState s;
  s.f4 = count_exact(g, count);
  s.graph = std::move(g);
  s.locality_depth = locality_depth;
  s.count = count;
  return s;
}

Batch normalize(std::span<const Update> raw, const Graph& g) {
  constexpr std::uint8_t kSeenAdd = 1;
  constexpr std::uint8_t kSeenDel = 2;
  std::unordered_map<std::uint64_t, std::uint8_t> seen;
  std::vector<Edge> order;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const Update& up = raw[i];
    if (up.edge.u == up.edge.v) {
      throw GraphError("self-loop in batch event " + std::to_string(i) + " on vertex " +
                       std::to_string(up.edge.u));
    }
    const Edge e = Edge::make(up.edge.u, up.edge.v);
    auto [it, fresh] = seen.try_emplace(e.key(), 0);
    if (fresh) order.push_back(e);
    it->second |= up.op == Op::add ? kSeenAdd : kSeenDel;
  }

  auto present = [&g](const Edge& e) { return g.has_vertex(e.v) && g.has_edge(e.u, e.v); };
  Batch b;
  for (const Edge& e : order) {
    const std::uint8_t flags = seen.at(e.key());
    if (flags == kSeenAdd && !present(e)) b.add.push_back(e);
    if (flags == kSeenDel && present(e)) b.del.push_back(e);
  }
  std::sort(b.add.begin(), b.add.end());
  std::sort(b.del.begin(), b.del.end());
  return b;
}

namespace {

void require_absent(const Graph& g, std::span<const Edge> edges, const char* who) {
  for (const Edge& e : edges) {
    if (g.has_vertex(e.v) && g.has_edge(e.u, e.v)) {
      throw std::invalid_argument(std::string(who) + ": added edge (" + std::to_string(e.u) +
                                  "," + std::to_string(e.v) + ") is already present");
    }
  }
}

void require_present(const Graph& g, std::span<const Edge> edges, const char* who) {
  for (const Edge& e : edges) {
    if (!g.has_vertex(e.v) || !g.has_edge(e.u, e.v)) {
      throw std::invalid_argument(std::string(who) + ": deleted edge (" + std::to_string(e.u) +
                                  "," + std::to_string(e.v) + ") is not present");
    }
  }
}

void require_unique(std::span<const Edge> edges, const char* who) {
  std::vector<Edge> sorted(edges.begin(), edges.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument(std::string(who) + ": batch contains a repeated edge");
  }
}

BatchDelta count_views(const LocalViews& views, const CountOptions& opts) {
  BatchDelta d;
  d.with_batch = count_exact(views.with_batch, opts);
  d.without_batch = count_exact(views.without_batch, opts);
  d.ball_size = views.ball.origin.size();
  d.local_edges = views.ball.graph.num_edges();
  return d;
}

void fold(EngineState& state, const BatchDelta& d) {
  state.f4 += d.delta();
  if (!state.f4.non_negative()) {
    throw std::logic_error("graphlet census became negative after a batch update");
  }
}

}  // namespace

LocalViews build_local_views(const Graph& union_graph, const Batch& batch, int depth) {
  std::vector<Vertex> seeds;
  seeds.reserve(2 * (batch.add.size() + batch.del.size()));
  for (const auto* set : {&batch.add, &batch.del}) {
    for (const Edge& e : *set) {
      seeds.push_back(e.u);
      seeds.push_back(e.v);
    }
  }
  const std::vector<Vertex> ball = k_hop(union_graph, seeds, depth);

  LocalViews views;
  views.ball = induced(union_graph, ball);
  views.with_batch = views.ball.graph;
  views.without_batch = views.ball.graph;
  auto local = [&views](Vertex p) { return static_cast<Vertex>(views.ball.local_of(p)); };
  for (const Edge& e : batch.del) views.with_batch.remove_edge(local(e.u), local(e.v));
  for (const Edge& e : batch.add) views.without_batch.remove_edge(local(e.u), local(e.v));
  return views;
}

BatchDelta igc_apply(EngineState& state, std::span<const Edge> add) {
  require_unique(add, "igc");
  require_absent(state.graph, add, "igc");

  for (const Edge& e : add) state.graph.add_edge(e.u, e.v);
  const Batch batch{{add.begin(), add.end()}, {}};
  const BatchDelta d =
      count_views(build_local_views(state.graph, batch, state.locality_depth), state.count);
  fold(state, d);
  return d;
}

BatchDelta fdgc_apply(EngineState& state, const Batch& batch) {
  require_unique(batch.add, "fdgc");
  require_unique(batch.del, "fdgc");
  require_absent(state.graph, batch.add, "fdgc");
  require_present(state.graph, batch.del, "fdgc");

  // D stays in place while A goes in: every graphlet of the old or the new
  // graph lives in this union graph.
  for (const Edge& e : batch.add) state.graph.add_edge(e.u, e.v);
  const BatchDelta d =
      count_views(build_local_views(state.graph, batch, state.locality_depth), state.count);
  for (const Edge& e : batch.del) state.graph.remove_edge(e.u, e.v);
  fold(state, d);
  return d;
}

void pgdn_apply(EngineState& state, const Batch& batch) {
  require_absent(state.graph, batch.add, "pgdn");
  require_present(state.graph, batch.del, "pgdn");
  for (const Edge& e : batch.del) state.graph.remove_edge(e.u, e.v);
  for (const Edge& e : batch.add) state.graph.add_edge(e.u, e.v);
  state.f4 = count_exact(state.graph, state.count);
}

void apply(Mode mode, EngineState& state, const Batch& batch) {
  switch (mode) {
    case Mode::igc:
      if (!batch.del.empty()) {
        throw std::invalid_argument("igc mode cannot apply a batch containing deletions");
      }
      igc_apply(state, batch.add);
      return;
    case Mode::fdgc:
      fdgc_apply(state, batch);
      return;
    case Mode::pgdn:
      pgdn_apply(state, batch);
      return;
  }
}

}  // namespace dgc
