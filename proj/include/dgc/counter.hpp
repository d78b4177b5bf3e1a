#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>

#include "dgc/graph.hpp"

namespace dgc {

/// Frequencies of connected induced 3- and 4-vertex graphlets.
///
/// As a census every field is non-negative; as a difference of two censuses
/// fields may be negative. Arithmetic is overflow-checked.
struct GraphletCounts {
  std::int64_t triangle = 0;
  std::int64_t wedge = 0;
  std::int64_t path3 = 0;
  std::int64_t star3 = 0;
  std::int64_t cycle4 = 0;
  std::int64_t tailed_tri = 0;
  std::int64_t diamond = 0;
  std::int64_t clique4 = 0;

  static constexpr std::size_t kFields = 8;
  /// Field names in declaration order (also the CSV column order).
  static constexpr std::array<std::string_view, kFields> kNames = {
      "triangle", "wedge", "path3", "star3", "cycle4", "tailed_tri", "diamond", "clique4"};

  std::array<std::int64_t, kFields> values() const;
  static GraphletCounts from_values(const std::array<std::int64_t, kFields>& v);

  bool is_zero() const { return *this == GraphletCounts{}; }
  bool non_negative() const;

  GraphletCounts& operator+=(const GraphletCounts& o);
  GraphletCounts& operator-=(const GraphletCounts& o);
  friend GraphletCounts operator+(GraphletCounts a, const GraphletCounts& b) { return a += b; }
  friend GraphletCounts operator-(GraphletCounts a, const GraphletCounts& b) { return a -= b; }
  friend bool operator==(const GraphletCounts&, const GraphletCounts&) = default;
};

std::ostream& operator<<(std::ostream& os, const GraphletCounts& c);

class CountOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Per-edge quantities consumed by the combinatorial derivation.
struct EdgeLocalStats {
  std::int64_t tri_e = 0;         // |N(u) ∩ N(v)|
  std::int64_t star_u = 0;        // |N(u) \ N(v) \ {v}|
  std::int64_t star_v = 0;        // |N(v) \ N(u) \ {u}|
  std::int64_t clique_pairs = 0;  // adjacent pairs inside the common neighborhood
  std::int64_t cycle_pairs = 0;   // adjacent (w, x), w on the u-only side, x on the v-only side
};

/// Stats for the existing edge (u, v), computed from scratch.
EdgeLocalStats edge_local_stats(const Graph& g, Vertex u, Vertex v);

struct CountOptions {
  /// Worker threads for the per-edge loop; 0 uses the OpenMP default.
  int threads = 0;
};

/// Exact census via per-edge enumeration of triangles, 4-cliques and
/// 4-cycles plus closed-form derivation of the other types.
/// Throws CountOverflow if any accumulator leaves the int64 range.
GraphletCounts count_exact(const Graph& g, const CountOptions& opts = {});

class BruteForceGuard : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kDefaultBruteGuard = 64;

/// Reference census by enumerating every 3- and 4-vertex subset.
/// Throws BruteForceGuard when num_vertices() > guard.
GraphletCounts count_brute(const Graph& g, std::size_t guard = kDefaultBruteGuard);

enum class FourType { path3, star3, cycle4, tailed_tri, diamond, clique4, disconnected };
enum class ThreeType { wedge, triangle, disconnected };

std::string_view to_string(FourType t);

/// Classifies a graph on vertices {0,1,2,3} given by its edge list.
FourType classify_four(std::span<const std::pair<int, int>> edges);
/// Classifies a graph on vertices {0,1,2} given by its edge list.
ThreeType classify_three(std::span<const std::pair<int, int>> edges);

namespace testing {
/// Test-only: perturbs one derivation constant so harness failure paths can
/// be exercised. Never enable outside tests.
void set_derivation_fault(bool enabled);
bool derivation_fault();
}  // namespace testing

}  // namespace dgc
