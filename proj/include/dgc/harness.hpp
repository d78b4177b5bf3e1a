#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dgc/counter.hpp"
#include "dgc/engine.hpp"
#include "dgc/stream.hpp"

namespace dgc {

std::string_view to_string(Mode m);

enum class GraphModel { erdos_renyi, preferential };

/// G(n, q) edges in a seeded random order.
std::vector<ExternalEdge> erdos_renyi_edges(std::size_t n, double q, std::mt19937_64& rng);

/// Barabasi-Albert growth: each new vertex attaches `attach` distinct edges to
/// existing vertices chosen proportionally to degree. Edges come out in
/// growth order, starting from a clique on attach + 1 seed vertices.
std::vector<ExternalEdge> preferential_attachment_edges(std::size_t n, std::size_t attach,
                                                        std::mt19937_64& rng);

struct TrialSpec {
  std::size_t n = 20;
  GraphModel model = GraphModel::erdos_renyi;
  /// Edge probability of the Erdos-Renyi base graph.
  double density = 0.8;
  /// Edges per new vertex of the preferential-attachment base graph.
  std::size_t attach = 3;
  std::size_t batch_size = 5;
  std::size_t batch_count = 30;
  /// Add probability of the dynamic stream; 1 gives an insert-only stream.
  double p = kDefaultAddProbability;
  std::uint64_t seed = 1;
  std::vector<Mode> engines = {Mode::fdgc, Mode::pgdn};
  /// Also compare against count_brute when n is within the guard.
  bool brute = true;
  std::size_t brute_guard = kDefaultBruteGuard;
  int locality_depth = 3;
  int threads = 0;
  /// Replays these events instead of generating a stream from the model.
  std::optional<std::vector<EdgeUpdate>> events;
};

/// A spec whose base graph is large enough to feed batch_count full batches:
/// the Erdos-Renyi density or attachment degree is derived from n and the
/// number of events needed.
TrialSpec sized_trial(std::size_t n, GraphModel model, std::size_t batch_size,
                      std::size_t batch_count, double p, std::uint64_t seed);

/// The update stream a trial replays (truncated to batch_size * batch_count).
std::vector<EdgeUpdate> trial_stream(const TrialSpec& spec);

struct Divergence {
  std::size_t batch_index = 0;
  std::string left_name;
  std::string right_name;
  GraphletCounts left;
  GraphletCounts right;
  std::vector<EdgeUpdate> batch;
  /// Smallest sub-batch found that still diverges from the same pre-batch graph.
  std::vector<EdgeUpdate> shrunk_batch;
};

struct TrialReport {
  bool pass = true;
  bool brute_checked = false;
  std::size_t batches_run = 0;
  std::optional<Divergence> divergence;
  std::string error;
  /// Census of the first engine after every batch.
  std::vector<GraphletCounts> history;

  /// One line; contains no timing so it is reproducible byte-for-byte.
  std::string summary(const TrialSpec& spec) const;
  /// Multi-line divergence description; empty on pass.
  std::string details() const;
};

/// Replays one generated stream through every requested engine in lockstep
/// and compares the censuses after every batch.
TrialReport run_equivalence_trial(const TrialSpec& spec);

struct ClosedFormReport {
  bool pass = true;
  std::size_t checks = 0;
  std::vector<std::string> failures;
};

/// K_n, P_n, C_n and K_{1,n} families up to n = max_n against their formulas
/// and against count_brute.
ClosedFormReport run_closed_form_suite(std::size_t max_n = 12);

}  // namespace dgc
