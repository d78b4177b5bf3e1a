#include "dgc/harness.hpp"

#include <functional>
#include <sstream>

namespace dgc {

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::igc: return "igc";
    case Mode::fdgc: return "fdgc";
    case Mode::pgdn: return "pgdn";
  }
  return "?";
}

namespace {

// Uniform index in [0, bound) by multiply-shift; identical on every platform.
std::size_t uniform_index(std::mt19937_64& rng, std::size_t bound) {
  return static_cast<std::size_t>((static_cast<unsigned __int128>(rng()) * bound) >> 64);
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

}  // namespace

std::vector<ExternalEdge> erdos_renyi_edges(std::size_t n, double q, std::mt19937_64& rng) {
  std::vector<ExternalEdge> out;
  for (ExternalId a = 0; a < n; ++a) {
    for (ExternalId b = a + 1; b < n; ++b) {
      if (unit_draw(rng) < q) out.push_back({a, b});
    }
  }
  shuffle(out, rng);
  return out;
}

std::vector<ExternalEdge> preferential_attachment_edges(std::size_t n, std::size_t attach,
                                                        std::mt19937_64& rng) {
  if (attach == 0) throw std::invalid_argument("preferential attachment needs attach >= 1");
  std::vector<ExternalEdge> out;
  std::vector<ExternalId> endpoints;  // each vertex repeated once per incident edge
  const std::size_t seed_size = std::min(n, attach + 1);
  for (ExternalId a = 0; a < seed_size; ++a) {
    for (ExternalId b = a + 1; b < seed_size; ++b) {
      out.push_back({a, b});
      endpoints.push_back(a);
      endpoints.push_back(b);
    }
  }
  std::vector<ExternalId> targets;
  for (ExternalId t = seed_size; t < n; ++t) {
    targets.clear();
    while (targets.size() < attach) {
      const ExternalId c = endpoints[uniform_index(rng, endpoints.size())];
      if (std::find(targets.begin(), targets.end(), c) == targets.end()) targets.push_back(c);
    }
    for (ExternalId c : targets) {
      out.push_back(ExternalEdge::make(c, t));
      endpoints.push_back(c);
      endpoints.push_back(t);
    }
  }
  return out;
}

TrialSpec sized_trial(std::size_t n, GraphModel model, std::size_t batch_size,
                      std::size_t batch_count, double p, std::uint64_t seed) {
  TrialSpec spec;
  spec.n = n;
  spec.model = model;
  spec.batch_size = batch_size;
  spec.batch_count = batch_count;
  spec.p = p;
  spec.seed = seed;
  spec.engines = p >= 1.0 ? std::vector{Mode::igc, Mode::fdgc, Mode::pgdn}
                          : std::vector{Mode::fdgc, Mode::pgdn};
  // A dynamic stream emits about one event per base edge; leave 25% slack.
  const double wanted = 1.25 * static_cast<double>(batch_size * batch_count);
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  spec.density = std::clamp(wanted / pairs, 0.1, 1.0);
  spec.attach = std::clamp<std::size_t>(static_cast<std::size_t>(wanted / static_cast<double>(n)) + 1,
                                        1, std::max<std::size_t>(1, n / 2));
  return spec;
}

std::vector<EdgeUpdate> trial_stream(const TrialSpec& spec) {
  if (spec.events) return *spec.events;
  std::mt19937_64 rng(spec.seed);
  const std::vector<ExternalEdge> base = spec.model == GraphModel::erdos_renyi
                                             ? erdos_renyi_edges(spec.n, spec.density, rng)
                                             : preferential_attachment_edges(spec.n, spec.attach, rng);
  std::vector<EdgeUpdate> events =
      spec.p >= 1.0 ? insert_stream(base) : gen_dynamic_stream(base, spec.p, rng());
  const std::size_t limit = spec.batch_size * spec.batch_count;
  if (events.size() > limit) events.resize(limit);
  return events;
}

namespace {

struct Observation {
  std::string name;
  GraphletCounts counts;
};

// Censuses of every engine (and optionally the oracle) after one batch
// applied to the same starting state.
std::vector<Observation> observe_batch(const TrialSpec& spec, const Graph& pre_graph,
                                       const GraphletCounts& pre_f4,
                                       const std::vector<Update>& raw, bool brute) {
  std::vector<Observation> obs;
  Graph after;
  for (Mode m : spec.engines) {
    EngineState s{pre_graph, pre_f4, spec.locality_depth, {spec.threads}};
    apply(m, s, normalize(raw, s.graph));
    obs.push_back({std::string(to_string(m)), s.f4});
    after = std::move(s.graph);
  }
  if (brute) obs.push_back({"brute", count_brute(after, spec.brute_guard)});
  return obs;
}

const Observation* first_mismatch(const std::vector<Observation>& obs) {
  for (std::size_t i = 1; i < obs.size(); ++i) {
    if (obs[i].counts != obs[0].counts) return &obs[i];
  }
  return nullptr;
}

// Greedy chunk removal, bounded.
std::vector<Update> shrink_batch(const TrialSpec& spec, const Graph& pre_graph,
                                 const GraphletCounts& pre_f4, std::vector<Update> raw,
                                 bool brute) {
  auto fails = [&](const std::vector<Update>& cand) {
    try {
      return first_mismatch(observe_batch(spec, pre_graph, pre_f4, cand, brute)) != nullptr;
    } catch (const std::exception&) {
      return true;
    }
  };
  constexpr int kMaxProbes = 256;
  int probes = 0;
  std::size_t chunk = raw.size() / 2;
  while (chunk >= 1 && probes < kMaxProbes) {
    bool progress = false;
    for (std::size_t start = 0; start < raw.size() && probes < kMaxProbes; start += chunk) {
      std::vector<Update> cand(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(start));
      cand.insert(cand.end(), raw.begin() + static_cast<std::ptrdiff_t>(std::min(raw.size(), start + chunk)),
                  raw.end());
      ++probes;
      if (!cand.empty() && fails(cand)) {
        raw = std::move(cand);
        progress = true;
        break;
      }
    }
    if (!progress) chunk /= 2;
    chunk = std::min(chunk, raw.size() / 2);
  }
  return raw;
}

std::vector<EdgeUpdate> to_external(const std::vector<Update>& raw, const IdMap& ids) {
  std::vector<EdgeUpdate> out;
  out.reserve(raw.size());
  for (const Update& u : raw) {
    out.push_back({u.op, ExternalEdge::make(ids.external(u.edge.u), ids.external(u.edge.v))});
  }
  return out;
}

}  // namespace

TrialReport run_equivalence_trial(const TrialSpec& spec) {
  if (spec.engines.empty()) throw std::invalid_argument("trial needs at least one engine");
  const bool has_igc =
      std::find(spec.engines.begin(), spec.engines.end(), Mode::igc) != spec.engines.end();
  if (has_igc && spec.p < 1.0) {
    throw std::invalid_argument("igc trials need an insert-only stream (p = 1)");
  }

  TrialReport report;
  report.brute_checked = spec.brute && spec.n <= spec.brute_guard;

  const std::vector<EdgeUpdate> events = trial_stream(spec);
  const auto batches = make_batches<EdgeUpdate>(events, spec.batch_size);

  IdMap ids;
  std::vector<EngineState> states;
  for (std::size_t i = 0; i < spec.engines.size(); ++i) {
    states.push_back(EngineState::from_graph(Graph{}, spec.locality_depth, {spec.threads}));
  }

  for (std::size_t k = 0; k < batches.size(); ++k) {
    std::vector<Update> raw;
    raw.reserve(batches[k].size());
    for (const EdgeUpdate& e : batches[k]) raw.push_back(ids.intern(e));

    const Graph pre_graph = states[0].graph;
    const GraphletCounts pre_f4 = states[0].f4;
    std::vector<Observation> obs;
    try {
      for (std::size_t i = 0; i < states.size(); ++i) {
        apply(spec.engines[i], states[i], normalize(raw, states[i].graph));
        obs.push_back({std::string(to_string(spec.engines[i])), states[i].f4});
      }
      if (report.brute_checked) {
        obs.push_back({"brute", count_brute(states[0].graph, spec.brute_guard)});
      }
    } catch (const std::exception& ex) {
      report.pass = false;
      report.error = "batch " + std::to_string(k) + ": " + ex.what();
      report.batches_run = k;
      return report;
    }

    if (const Observation* bad = first_mismatch(obs)) {
      Divergence d;
      d.batch_index = k;
      d.left_name = obs[0].name;
      d.right_name = bad->name;
      d.left = obs[0].counts;
      d.right = bad->counts;
      d.batch = batches[k];
      d.shrunk_batch =
          to_external(shrink_batch(spec, pre_graph, pre_f4, raw, report.brute_checked), ids);
      report.pass = false;
      report.divergence = std::move(d);
      report.batches_run = k + 1;
      return report;
    }
    report.history.push_back(states[0].f4);
    report.batches_run = k + 1;
  }
  return report;
}

std::string TrialReport::summary(const TrialSpec& spec) const {
  std::ostringstream os;
  os << (pass ? "PASS" : "FAIL") << " seed=" << spec.seed << " n=" << spec.n
     << " model=" << (spec.model == GraphModel::erdos_renyi ? "er" : "pa")
     << " batch_size=" << spec.batch_size << " batches=" << batches_run << " p=" << spec.p
     << " depth=" << spec.locality_depth << " engines=";
  for (std::size_t i = 0; i < spec.engines.size(); ++i) {
    os << (i ? "," : "") << to_string(spec.engines[i]);
  }
  os << " brute=" << (brute_checked ? "yes" : "skipped");
  if (divergence) {
    os << " diverged_at=" << divergence->batch_index << " (" << divergence->left_name << " vs "
       << divergence->right_name << ")";
  }
  if (!error.empty()) os << " error=\"" << error << '"';
  return os.str();
}

std::string TrialReport::details() const {
  if (!divergence) return error;
  const Divergence& d = *divergence;
  std::ostringstream os;
  os << "divergence after batch " << d.batch_index << "\n  " << d.left_name << ": " << d.left
     << "\n  " << d.right_name << ": " << d.right << "\n  batch:\n";
  write_update_stream(os, d.batch);
  os << "  shrunk batch:\n";
  write_update_stream(os, d.shrunk_batch);
  return os.str();
}

namespace {

Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

Graph path_graph(std::size_t n) {
  Graph g(n);
  for (Vertex a = 0; a + 1 < n; ++a) g.add_edge(a, a + 1);
  return g;
}

Graph cycle_graph(std::size_t n) {
  Graph g = path_graph(n);
  g.add_edge(0, static_cast<Vertex>(n - 1));
  return g;
}

Graph star_graph(std::size_t leaves) {
  Graph g(leaves + 1);
  for (Vertex a = 1; a <= leaves; ++a) g.add_edge(0, a);
  return g;
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

ClosedFormReport run_closed_form_suite(std::size_t max_n) {
  ClosedFormReport report;
  auto check = [&report](const std::string& name, const Graph& g, const GraphletCounts& want) {
    ++report.checks;
    const GraphletCounts exact = count_exact(g);
    const GraphletCounts brute = count_brute(g);
    if (exact != want || brute != want) {
      std::ostringstream os;
      os << name << ": expected " << want << ", count_exact " << exact << ", count_brute "
         << brute;
      report.failures.push_back(os.str());
      report.pass = false;
    }
  };
  const auto top = static_cast<std::int64_t>(max_n);
  for (std::int64_t n = 4; n <= top; ++n) {
    GraphletCounts k;
    k.triangle = binomial(n, 3);
    k.clique4 = binomial(n, 4);
    check("K_" + std::to_string(n), complete_graph(n), k);

    GraphletCounts p;
    p.wedge = n - 2;
    p.path3 = n - 3;
    check("P_" + std::to_string(n), path_graph(n), p);
  }
  for (std::int64_t n = 5; n <= top; ++n) {
    GraphletCounts c;
    c.wedge = n;
    c.path3 = n;
    check("C_" + std::to_string(n), cycle_graph(n), c);
  }
  for (std::int64_t n = 3; n <= top; ++n) {
    GraphletCounts s;
    s.wedge = binomial(n, 2);
    s.star3 = binomial(n, 3);
    check("K_1," + std::to_string(n), star_graph(n), s);
  }
  return report;
}

}  // namespace dgc
