#pragma once

#include "dgc/engine.hpp"
#include "dgc/graph.hpp"

namespace dgc {

/// The two local graphs whose census difference is the global delta.
struct LocalViews {
  /// H: union graph induced on the locality ball around all batch endpoints.
  LocalSubgraph ball;
  /// G_a = H without the deleted edges (local ids).
  Graph with_batch;
  /// G_b = H without the added edges (local ids).
  Graph without_batch;
};

/// `union_graph` must already contain every edge of batch.add and batch.del.
LocalViews build_local_views(const Graph& union_graph, const Batch& batch, int depth);

}  // namespace dgc
