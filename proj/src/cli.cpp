#include "dgc/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dgc/harness.hpp"

namespace dgc::cli {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

void print_counts(std::ostream& out, const GraphletCounts& c) {
  const auto v = c.values();
  for (std::size_t i = 0; i < GraphletCounts::kFields; ++i) {
    out << GraphletCounts::kNames[i] << ' ' << v[i] << '\n';
  }
}

const std::map<std::string, Mode> kModes = {
    {"igc", Mode::igc}, {"fdgc", Mode::fdgc}, {"pgdn", Mode::pgdn}};

Mode parse_mode(const std::string& name) { return kModes.at(name); }

struct CountArgs {
  std::string input;
  int threads = 0;
};

struct RunArgs {
  std::string input;
  std::string stream;
  std::string mode = "fdgc";
  std::size_t batch_size = 10;
  bool dynamic = false;
  double p = kDefaultAddProbability;
  std::uint64_t seed = 1;
  std::string out;
  int depth = 3;
  int threads = 0;
  std::size_t max_batches = 0;
};

struct GenArgs {
  std::string input;
  double p = kDefaultAddProbability;
  std::uint64_t seed = 1;
  std::string out;
};

struct VerifyArgs {
  std::size_t n = 20;
  std::size_t batches = 30;
  std::size_t batch_size = 5;
  double p = kDefaultAddProbability;
  std::uint64_t seed = 1;
  std::size_t trials = 2;
  int depth = 3;
  int threads = 0;
  bool inject_fault = false;
};

int cmd_count(const CountArgs& a, std::ostream& out) {
  const EdgeList list = parse_edge_list(a.input);
  IdMap ids;
  Graph g;
  for (const ExternalEdge& e : list.edges) g.add_edge(ids.intern(e.u), ids.intern(e.v));

  const auto start = Clock::now();
  const GraphletCounts c = count_exact(g, {a.threads});
  const double ms = elapsed_ms(start);

  out << "vertices " << list.meta.vertex_count << '\n' << "edges " << list.meta.edge_count << '\n';
  print_counts(out, c);
  out << "time_ms " << std::fixed << std::setprecision(3) << ms << '\n';
  return kExitOk;
}

std::vector<EdgeUpdate> load_run_stream(const RunArgs& a) {
  if (!a.stream.empty()) return read_update_stream(a.stream);
  const EdgeList list = parse_edge_list(a.input);
  return a.dynamic ? gen_dynamic_stream(list.edges, a.p, a.seed) : insert_stream(list.edges);
}

void write_run_meta(const std::string& path, const RunArgs& a, std::size_t events) {
  nlohmann::json meta = {
      {"input", a.stream.empty() ? a.input : a.stream},
      {"mode", a.mode},
      {"batch_size", a.batch_size},
      {"dynamic", a.dynamic},
      {"p", a.p},
      {"seed", a.seed},
      {"locality_depth", a.depth},
      {"events", events},
  };
  std::ofstream f(path);
  if (!f) throw StreamError("cannot write " + path);
  f << meta.dump(2) << '\n';
}

int cmd_run(const RunArgs& a, std::ostream& out) {
  if (a.input.empty() == a.stream.empty()) {
    throw CLI::ValidationError("run", "give exactly one of an edge-list input or --stream");
  }
  const std::vector<EdgeUpdate> events = load_run_stream(a);
  const std::vector<BatchRecord> records =
      replay(events, {parse_mode(a.mode), a.batch_size, a.depth, a.threads, a.max_batches});

  if (!a.out.empty()) {
    std::ofstream csv(a.out);
    if (!csv) throw StreamError("cannot write " + a.out);
    csv << kReportHeader << '\n';
    for (const auto& r : records) write_report_row(csv, r);
    if (!csv) throw StreamError("write error on " + a.out);
    write_run_meta(a.out + ".meta.json", a, events.size());
  }

  const GraphletCounts final_counts = records.empty() ? GraphletCounts{} : records.back().counts;
  out << "mode " << a.mode << '\n' << "batches " << records.size() << '\n';
  print_counts(out, final_counts);
  out << "total_time_ms " << std::fixed << std::setprecision(3)
      << (records.empty() ? 0.0 : records.back().cum_time_ms) << '\n';
  return kExitOk;
}

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const EdgeList list = parse_edge_list(a.input);
  const std::vector<EdgeUpdate> events = gen_dynamic_stream(list.edges, a.p, a.seed);
  write_update_stream(std::filesystem::path(a.out), events);
  std::size_t adds = 0;
  for (const auto& e : events) adds += e.op == Op::add;
  out << "events " << events.size() << " adds " << adds << " dels " << events.size() - adds
      << " seed " << a.seed << '\n';
  return kExitOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  testing::set_derivation_fault(a.inject_fault);
  struct Reset {
    ~Reset() { testing::set_derivation_fault(false); }
  } reset;

  bool all_pass = true;
  const ClosedFormReport closed = run_closed_form_suite();
  out << (closed.pass ? "PASS" : "FAIL") << " closed_forms checks=" << closed.checks << '\n';
  for (const auto& f : closed.failures) out << "  " << f << '\n';
  all_pass &= closed.pass;

  if (a.n > kDefaultBruteGuard) {
    out << "notice: n=" << a.n << " exceeds the brute-force guard of " << kDefaultBruteGuard
        << "; comparing engines only\n";
  }
  for (std::size_t t = 0; t < a.trials; ++t) {
    for (GraphModel model : {GraphModel::erdos_renyi, GraphModel::preferential}) {
      for (double p : {a.p, 1.0}) {
        TrialSpec spec = sized_trial(a.n, model, a.batch_size, a.batches, p, a.seed + t);
        spec.locality_depth = a.depth;
        spec.threads = a.threads;
        const TrialReport r = run_equivalence_trial(spec);
        out << r.summary(spec) << '\n';
        if (!r.pass) out << r.details();
        all_pass &= r.pass;
      }
    }
  }
  return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

void write_report_row(std::ostream& out, const BatchRecord& r) {
  out << r.batch_index << ',' << r.adds << ',' << r.dels << ',' << std::fixed
      << std::setprecision(3) << r.time_ms << ',' << r.cum_time_ms;
  for (std::int64_t v : r.counts.values()) out << ',' << v;
  out << '\n';
}

std::vector<BatchRecord> replay(std::span<const EdgeUpdate> events, const ReplayOptions& opts) {
  if (opts.mode == Mode::igc) {
    for (std::size_t i = 0; i < events.size(); ++i) {
      if (events[i].op == Op::del) {
        throw std::invalid_argument("igc mode needs an insert-only stream; event " +
                                    std::to_string(i) + " is a deletion");
      }
    }
  }
  const auto batches = make_batches<EdgeUpdate>(events, opts.batch_size);
  IdMap ids;
  EngineState state = EngineState::from_graph(Graph{}, opts.locality_depth, {opts.threads});
  std::vector<BatchRecord> records;
  records.reserve(batches.size());
  double cumulative = 0.0;
  std::vector<Update> raw;
  for (std::size_t k = 0; k < batches.size(); ++k) {
    if (opts.max_batches != 0 && k == opts.max_batches) break;
    raw.clear();
    for (const EdgeUpdate& e : batches[k]) raw.push_back(ids.intern(e));

    const auto start = Clock::now();
    const Batch batch = normalize(raw, state.graph);
    apply(opts.mode, state, batch);
    const double ms = elapsed_ms(start);

    cumulative += ms;
    records.push_back({k, batch.add.size(), batch.del.size(), ms, cumulative, state.f4});
  }
  return records;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact fully dynamic 4-vertex graphlet counting"};
  app.require_subcommand(1);

  CountArgs count_args;
  auto* count = app.add_subcommand("count", "Census of a static edge list");
  count->add_option("input", count_args.input, "SNAP-style edge list")
      ->required()
      ->envname("DGC_INPUT");
  count->add_option("--threads", count_args.threads, "Counting threads (0 = all cores)")
      ->envname("DGC_THREADS");

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Replay a stream in batches and report per-batch timing");
  run_cmd->add_option("input", run_args.input, "SNAP-style edge list")->envname("DGC_INPUT");
  run_cmd->add_option("--stream", run_args.stream, "Update-stream file instead of an edge list")
      ->envname("DGC_STREAM");
  run_cmd->add_option("--mode", run_args.mode, "Engine")
      ->check(CLI::IsMember({"igc", "fdgc", "pgdn"}))
      ->envname("DGC_MODE");
  run_cmd->add_option("--batch-size", run_args.batch_size, "Events per batch")
      ->check(CLI::PositiveNumber)
      ->envname("DGC_BATCH_SIZE");
  run_cmd->add_flag("--dynamic", run_args.dynamic, "Generate a fully dynamic stream from the input")
      ->envname("DGC_DYNAMIC");
  run_cmd->add_option("--p", run_args.p, "Add probability of the dynamic stream")
      ->check(CLI::Range(0.0, 1.0))
      ->envname("DGC_P");
  run_cmd->add_option("--seed", run_args.seed, "Stream seed")->envname("DGC_SEED");
  run_cmd->add_option("--out", run_args.out, "Per-batch CSV report")->envname("DGC_OUT");
  run_cmd->add_option("--depth", run_args.depth, "Locality depth")
      ->check(CLI::IsMember({2, 3}))
      ->envname("DGC_DEPTH");
  run_cmd->add_option("--threads", run_args.threads, "Counting threads (0 = all cores)")
      ->envname("DGC_THREADS");
  run_cmd->add_option("--max-batches", run_args.max_batches, "Stop after this many batches")
      ->envname("DGC_MAX_BATCHES");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Write a fully dynamic update stream");
  gen->add_option("--input", gen_args.input, "SNAP-style edge list")
      ->required()
      ->envname("DGC_INPUT");
  gen->add_option("--p", gen_args.p, "Add probability")
      ->check(CLI::Range(0.0, 1.0))
      ->envname("DGC_P");
  gen->add_option("--seed", gen_args.seed, "Stream seed")->envname("DGC_SEED");
  gen->add_option("--out", gen_args.out, "Output stream file")->required()->envname("DGC_OUT");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Cross-check engines and the brute-force oracle");
  verify->add_option("--n", verify_args.n, "Vertices per trial")
      ->check(CLI::Range(std::size_t{4}, std::size_t{1} << 20))
      ->envname("DGC_N");
  verify->add_option("--batches", verify_args.batches, "Batches per trial")->envname("DGC_BATCHES");
  verify->add_option("--batch-size", verify_args.batch_size, "Events per batch")
      ->check(CLI::PositiveNumber)
      ->envname("DGC_BATCH_SIZE");
  verify->add_option("--p", verify_args.p, "Add probability of mixed trials")
      ->check(CLI::Range(0.0, 1.0))
      ->envname("DGC_P");
  verify->add_option("--seed", verify_args.seed, "Base seed")->envname("DGC_SEED");
  verify->add_option("--trials", verify_args.trials, "Seeds per trial family")
      ->envname("DGC_TRIALS");
  verify->add_option("--depth", verify_args.depth, "Locality depth")
      ->check(CLI::IsMember({2, 3}))
      ->envname("DGC_DEPTH");
  verify->add_option("--threads", verify_args.threads, "Counting threads (0 = all cores)")
      ->envname("DGC_THREADS");
  verify->add_flag("--inject-fault", verify_args.inject_fault)
      ->group("")  // test-only
      ->envname("DGC_INJECT_FAULT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*count) return cmd_count(count_args, out);
    if (*run_cmd) return cmd_run(run_args, out);
    if (*gen) return cmd_gen(gen_args, out);
    if (*verify) return cmd_verify(verify_args, out);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace dgc::cli
