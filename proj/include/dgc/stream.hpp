#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "dgc/engine.hpp"
#include "dgc/graph.hpp"

namespace dgc {

/// Vertex id as it appears in input files.
using ExternalId = std::uint64_t;

/// Undirected edge on external ids, canonical u < v.
struct ExternalEdge {
  ExternalId u = 0;
  ExternalId v = 0;

  static ExternalEdge make(ExternalId a, ExternalId b);
  friend auto operator<=>(const ExternalEdge&, const ExternalEdge&) = default;
};

/// One event of an update stream.
struct EdgeUpdate {
  Op op = Op::add;
  ExternalEdge edge;

  friend bool operator==(const EdgeUpdate&, const EdgeUpdate&) = default;
};

class StreamError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DatasetMeta {
  std::string name;
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;

  friend bool operator==(const DatasetMeta&, const DatasetMeta&) = default;
};

/// Sizes of the SNAP graphs used for the original timing study, after
/// symmetrization and dedup.
std::span<const DatasetMeta> known_datasets();

struct EdgeList {
  std::vector<ExternalEdge> edges;  // first-occurrence order, deduplicated
  DatasetMeta meta;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

/// Whitespace-separated "u v" lines; '#' starts a comment line.
EdgeList parse_edge_list(const std::filesystem::path& path);
EdgeList parse_edge_list(std::istream& in, std::string name);

void write_edge_list(std::ostream& out, std::span<const ExternalEdge> edges);

/// Update-stream format: one "+ u v" or "- u v" per line, single spaces.
std::vector<EdgeUpdate> read_update_stream(const std::filesystem::path& path);
std::vector<EdgeUpdate> read_update_stream(std::istream& in);
void write_update_stream(const std::filesystem::path& path, std::span<const EdgeUpdate> events);
void write_update_stream(std::ostream& out, std::span<const EdgeUpdate> events);

/// Consecutive chunks of `batch_size` (the last may be shorter).
template <typename T>
std::vector<std::vector<T>> make_batches(std::span<const T> events, std::size_t batch_size) {
  if (batch_size == 0) throw std::invalid_argument("batch size must be at least 1");
  std::vector<std::vector<T>> out;
  out.reserve((events.size() + batch_size - 1) / batch_size);
  for (std::size_t i = 0; i < events.size(); i += batch_size) {
    const std::size_t end = std::min(events.size(), i + batch_size);
    out.emplace_back(events.begin() + static_cast<std::ptrdiff_t>(i),
                     events.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return out;
}

inline constexpr double kDefaultAddProbability = 0.7;

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Fully dynamic workload: each base edge is emitted as an addition with
/// probability p and queued; after each base edge, with probability 1 - p
/// the oldest queued edge is emitted as a deletion.
std::vector<EdgeUpdate> gen_dynamic_stream(std::span<const ExternalEdge> edges, double p,
                                           std::uint64_t seed);

/// Every base edge as an addition, in order.
std::vector<EdgeUpdate> insert_stream(std::span<const ExternalEdge> edges);

/// Persistent external -> dense internal id mapping.
class IdMap {
 public:
  Vertex intern(ExternalId id);
  ExternalId external(Vertex v) const { return to_external_.at(v); }
  std::size_t size() const { return to_external_.size(); }

  Update intern(const EdgeUpdate& e);

 private:
  std::unordered_map<ExternalId, Vertex> to_internal_;
  std::vector<ExternalId> to_external_;
};

}  // namespace dgc
