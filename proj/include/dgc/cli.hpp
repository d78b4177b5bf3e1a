#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dgc/counter.hpp"
#include "dgc/engine.hpp"
#include "dgc/stream.hpp"

namespace dgc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Fixed CSV header of the per-batch report.
inline constexpr std::string_view kReportHeader =
    "batch,adds,dels,time_ms,cum_time_ms,triangle,wedge,path3,star3,cycle4,tailed_tri,diamond,"
    "clique4";

struct BatchRecord {
  std::size_t batch_index = 0;
  std::size_t adds = 0;
  std::size_t dels = 0;
  double time_ms = 0.0;
  double cum_time_ms = 0.0;
  GraphletCounts counts;
};

void write_report_row(std::ostream& out, const BatchRecord& r);

struct ReplayOptions {
  Mode mode = Mode::fdgc;
  std::size_t batch_size = 10;
  int locality_depth = 3;
  int threads = 0;
  /// Stop after this many batches; 0 replays everything.
  std::size_t max_batches = 0;
};

/// Replays an update stream from an empty graph, one record per batch.
/// The timed region covers normalization, extraction, counting and the
/// graph update. Throws std::invalid_argument for igc on a stream with deletions.
std::vector<BatchRecord> replay(std::span<const EdgeUpdate> events, const ReplayOptions& opts);

/// Entry point behind the `dgc` executable; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dgc::cli
