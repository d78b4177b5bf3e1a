#pragma once

#include <span>
#include <vector>

#include "dgc/counter.hpp"
#include "dgc/graph.hpp"

namespace dgc {

enum class Op : char { add = '+', del = '-' };

/// A signed edge event on internal vertex ids.
struct Update {
  Op op = Op::add;
  Edge edge;

  friend bool operator==(const Update&, const Update&) = default;
};

/// Normalized batch: A and D disjoint, sorted, free of no-ops.
struct Batch {
  std::vector<Edge> add;
  std::vector<Edge> del;

  bool empty() const { return add.empty() && del.empty(); }
};

enum class Mode { igc, fdgc, pgdn };

struct EngineState {
  Graph graph;
  GraphletCounts f4;
  /// BFS radius of the locality ball; 2 or 3.
  int locality_depth = 3;
  CountOptions count;

  /// Starts from `g` with f4 = count_exact(g).
  static EngineState from_graph(Graph g, int locality_depth = 3, CountOptions count = {});
};

/// Local censuses of one batch; delta() is what gets folded into f4.
struct BatchDelta {
  GraphletCounts with_batch;     // census of G_a
  GraphletCounts without_batch;  // census of G_b
  std::size_t ball_size = 0;     // |W|
  std::size_t local_edges = 0;   // edges of the induced local subgraph

  GraphletCounts delta() const { return with_batch - without_batch; }
};

/// Turns a raw event sequence into a batch against the current graph.
/// Edges that appear both added and deleted are dropped entirely; repeated
/// events collapse; additions of present edges and deletions of absent
/// edges are dropped. Vertices beyond g are treated as edge-free.
/// Throws GraphError naming the offending event on a self-loop.
Batch normalize(std::span<const Update> raw, const Graph& g);

/// Insert-only update. `add` must be absent from the graph and duplicate-free.
BatchDelta igc_apply(EngineState& state, std::span<const Edge> add);

/// Mixed update on a normalized batch.
BatchDelta fdgc_apply(EngineState& state, const Batch& batch);

/// Baseline: applies the batch and recounts the whole graph.
void pgdn_apply(EngineState& state, const Batch& batch);

/// Dispatches on mode. IGC rejects batches with deletions.
void apply(Mode mode, EngineState& state, const Batch& batch);

}  // namespace dgc
