#include "dgc/counter.hpp"

#include <algorithm>
#include <atomic>
#include <ostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dgc {

namespace {

std::atomic<bool> g_derivation_fault{false};

std::int64_t add_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw CountOverflow("graphlet accumulator overflow");
  return r;
}

std::int64_t sub_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw CountOverflow("graphlet accumulator overflow");
  return r;
}

std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw CountOverflow("graphlet accumulator overflow");
  return r;
}

std::int64_t choose2(std::int64_t n) { return n < 2 ? 0 : mul_checked(n, n - 1) / 2; }

std::int64_t choose3(std::int64_t n) {
  if (n < 3) return 0;
  // n(n-1) is even, so the division by 2 is exact before the final /3.
  return mul_checked(mul_checked(n, n - 1) / 2, n - 2) / 3;
}

// Sums over edges and vertices that feed the closed-form derivation.
struct Accumulators {
  std::int64_t sum_tri = 0;
  std::int64_t sum_tri_pairs = 0;
  std::int64_t sum_tri_star = 0;
  std::int64_t sum_deg_prod = 0;
  std::int64_t clique_pairs = 0;
  std::int64_t cycle_pairs = 0;
  std::int64_t sum_wedge = 0;
  std::int64_t sum_claw = 0;

  void absorb(const Accumulators& o) {
    sum_tri = add_checked(sum_tri, o.sum_tri);
    sum_tri_pairs = add_checked(sum_tri_pairs, o.sum_tri_pairs);
    sum_tri_star = add_checked(sum_tri_star, o.sum_tri_star);
    sum_deg_prod = add_checked(sum_deg_prod, o.sum_deg_prod);
    clique_pairs = add_checked(clique_pairs, o.clique_pairs);
    cycle_pairs = add_checked(cycle_pairs, o.cycle_pairs);
    sum_wedge = add_checked(sum_wedge, o.sum_wedge);
    sum_claw = add_checked(sum_claw, o.sum_claw);
  }
};

// Neighborhood labels relative to the current edge (u, v).
constexpr std::uint8_t kUSide = 1;
constexpr std::uint8_t kVSide = 2;
constexpr std::uint8_t kCommon = kUSide | kVSide;

// Per-worker scratch. `mark` must be all-zero between edges.
struct EdgeScanner {
  const Graph& g;
  std::vector<std::uint8_t> mark;
  std::vector<Vertex> common, u_side, v_side;

  explicit EdgeScanner(const Graph& graph) : g(graph), mark(graph.num_vertices(), 0) {}

  EdgeLocalStats scan(Vertex u, Vertex v) {
    common.clear();
    u_side.clear();
    v_side.clear();
    for (Vertex w : g.neighbors(u)) {
      if (w != v) mark[w] = kUSide;
    }
    for (Vertex w : g.neighbors(v)) {
      if (w == u) continue;
      if (mark[w] == kUSide) {
        mark[w] = kCommon;
        common.push_back(w);
      } else {
        mark[w] = kVSide;
        v_side.push_back(w);
      }
    }
    for (Vertex w : g.neighbors(u)) {
      if (w != v && mark[w] == kUSide) u_side.push_back(w);
    }

    EdgeLocalStats s;
    s.tri_e = static_cast<std::int64_t>(common.size());
    s.star_u = static_cast<std::int64_t>(u_side.size());
    s.star_v = static_cast<std::int64_t>(v_side.size());

    for (Vertex w : common) {
      for (Vertex x : g.neighbors(w)) {
        if (x > w && mark[x] == kCommon) ++s.clique_pairs;
      }
    }

    // Probe from the smaller star side into the marks of the other one.
    const bool from_u = u_side.size() <= v_side.size();
    const auto& probe = from_u ? u_side : v_side;
    const std::uint8_t target = from_u ? kVSide : kUSide;
    for (Vertex w : probe) {
      for (Vertex x : g.neighbors(w)) {
        if (mark[x] == target) ++s.cycle_pairs;
      }
    }

    for (Vertex w : g.neighbors(u)) mark[w] = 0;
    for (Vertex w : g.neighbors(v)) mark[w] = 0;
    return s;
  }
};

void accumulate_vertex(const Graph& g, Vertex u, Accumulators& acc) {
  const auto d = static_cast<std::int64_t>(g.degree(u));
  acc.sum_wedge = add_checked(acc.sum_wedge, choose2(d));
  acc.sum_claw = add_checked(acc.sum_claw, choose3(d));
}

void accumulate_edge(const Graph& g, EdgeScanner& scanner, Vertex u, Vertex v,
                     Accumulators& acc) {
  const EdgeLocalStats s = scanner.scan(u, v);
  const auto du = static_cast<std::int64_t>(g.degree(u));
  const auto dv = static_cast<std::int64_t>(g.degree(v));
  acc.sum_tri = add_checked(acc.sum_tri, s.tri_e);
  acc.sum_tri_pairs = add_checked(acc.sum_tri_pairs, choose2(s.tri_e));
  acc.sum_tri_star =
      add_checked(acc.sum_tri_star, mul_checked(s.tri_e, add_checked(s.star_u, s.star_v)));
  acc.sum_deg_prod = add_checked(acc.sum_deg_prod, mul_checked(du - 1, dv - 1));
  acc.clique_pairs = add_checked(acc.clique_pairs, s.clique_pairs);
  acc.cycle_pairs = add_checked(acc.cycle_pairs, s.cycle_pairs);
}

void require_divisible(std::int64_t value, std::int64_t by, const char* what) {
  if (value % by != 0) {
    throw std::logic_error(std::string("graphlet derivation: ") + what + " not divisible by " +
                           std::to_string(by));
  }
}

GraphletCounts derive(const Accumulators& a) {
  require_divisible(a.sum_tri, 3, "triangle sum");
  require_divisible(a.clique_pairs, 6, "clique pair sum");
  require_divisible(a.cycle_pairs, 4, "cycle pair sum");

  GraphletCounts c;
  c.triangle = a.sum_tri / 3;
  c.wedge = sub_checked(a.sum_wedge, mul_checked(3, c.triangle));
  c.clique4 = a.clique_pairs / 6;
  c.cycle4 = a.cycle_pairs / 4;
  c.diamond = sub_checked(a.sum_tri_pairs, mul_checked(6, c.clique4));

  const std::int64_t tailed2 = sub_checked(a.sum_tri_star, mul_checked(4, c.diamond));
  require_divisible(tailed2, 2, "tailed-triangle sum");
  c.tailed_tri = tailed2 / 2;

  const std::int64_t diamond_claws = g_derivation_fault.load(std::memory_order_relaxed) ? 1 : 2;
  c.star3 = a.sum_claw;
  c.star3 = sub_checked(c.star3, c.tailed_tri);
  c.star3 = sub_checked(c.star3, mul_checked(diamond_claws, c.diamond));
  c.star3 = sub_checked(c.star3, mul_checked(4, c.clique4));

  c.path3 = a.sum_deg_prod;
  c.path3 = sub_checked(c.path3, mul_checked(3, c.triangle));
  c.path3 = sub_checked(c.path3, mul_checked(2, c.tailed_tri));
  c.path3 = sub_checked(c.path3, mul_checked(4, c.cycle4));
  c.path3 = sub_checked(c.path3, mul_checked(6, c.diamond));
  c.path3 = sub_checked(c.path3, mul_checked(12, c.clique4));
  return c;
}

Accumulators accumulate_range(const Graph& g, EdgeScanner& scanner, Vertex begin, Vertex end) {
  Accumulators acc;
  for (Vertex u = begin; u < end; ++u) {
    accumulate_vertex(g, u, acc);
    for (Vertex v : g.neighbors(u)) {
      if (u < v) accumulate_edge(g, scanner, u, v, acc);
    }
  }
  return acc;
}

constexpr std::size_t kParallelEdgeThreshold = 4096;

}  // namespace

std::array<std::int64_t, GraphletCounts::kFields> GraphletCounts::values() const {
  return {triangle, wedge, path3, star3, cycle4, tailed_tri, diamond, clique4};
}

GraphletCounts GraphletCounts::from_values(const std::array<std::int64_t, kFields>& v) {
  return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
}

bool GraphletCounts::non_negative() const {
  const auto v = values();
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x >= 0; });
}

GraphletCounts& GraphletCounts::operator+=(const GraphletCounts& o) {
  auto a = values();
  const auto b = o.values();
  for (std::size_t i = 0; i < kFields; ++i) a[i] = add_checked(a[i], b[i]);
  return *this = from_values(a);
}

GraphletCounts& GraphletCounts::operator-=(const GraphletCounts& o) {
  auto a = values();
  const auto b = o.values();
  for (std::size_t i = 0; i < kFields; ++i) a[i] = sub_checked(a[i], b[i]);
  return *this = from_values(a);
}

std::ostream& operator<<(std::ostream& os, const GraphletCounts& c) {
  const auto v = c.values();
  os << '{';
  for (std::size_t i = 0; i < GraphletCounts::kFields; ++i) {
    os << (i ? ", " : "") << GraphletCounts::kNames[i] << ": " << v[i];
  }
  return os << '}';
}

EdgeLocalStats edge_local_stats(const Graph& g, Vertex u, Vertex v) {
  if (!g.has_edge(u, v)) {
    throw GraphError("edge_local_stats: (" + std::to_string(u) + "," + std::to_string(v) +
                     ") is not an edge");
  }
  EdgeScanner scanner(g);
  return scanner.scan(u, v);
}

GraphletCounts count_exact(const Graph& g, const CountOptions& opts) {
  const auto n = static_cast<Vertex>(g.num_vertices());
  Accumulators total;

#ifdef _OPENMP
  const int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
  if (threads > 1 && g.num_edges() >= kParallelEdgeThreshold) {
    // Vertices are handed out in fixed chunks; partial sums are combined in
    // chunk order, so the result does not depend on scheduling.
    constexpr Vertex kChunk = 256;
    const Vertex chunks = (n + kChunk - 1) / kChunk;
    std::vector<Accumulators> partial(chunks);
    std::atomic<bool> overflow{false};
#pragma omp parallel num_threads(threads)
    {
      EdgeScanner scanner(g);
#pragma omp for schedule(dynamic, 1)
      for (Vertex c = 0; c < chunks; ++c) {
        if (overflow.load(std::memory_order_relaxed)) continue;
        try {
          partial[c] = accumulate_range(g, scanner, c * kChunk, std::min(n, (c + 1) * kChunk));
        } catch (const CountOverflow&) {
          overflow.store(true);
        }
      }
    }
    if (overflow) throw CountOverflow("graphlet accumulator overflow");
    for (const auto& p : partial) total.absorb(p);
    return derive(total);
  }
#else
  (void)opts;
#endif

  EdgeScanner scanner(g);
  total = accumulate_range(g, scanner, 0, n);
  return derive(total);
}

std::string_view to_string(FourType t) {
  switch (t) {
    case FourType::path3: return "path3";
    case FourType::star3: return "star3";
    case FourType::cycle4: return "cycle4";
    case FourType::tailed_tri: return "tailed_tri";
    case FourType::diamond: return "diamond";
    case FourType::clique4: return "clique4";
    case FourType::disconnected: return "disconnected";
  }
  return "?";
}

namespace {

template <int N>
std::array<int, N> degrees_of(std::span<const std::pair<int, int>> edges) {
  std::array<int, N> deg{};
  std::array<std::array<bool, N>, N> seen{};
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= N || b >= N || a == b || seen[a][b]) {
      throw std::invalid_argument("classify: invalid or repeated edge");
    }
    seen[a][b] = seen[b][a] = true;
    ++deg[a];
    ++deg[b];
  }
  std::sort(deg.begin(), deg.end());
  return deg;
}

}  // namespace

FourType classify_four(std::span<const std::pair<int, int>> edges) {
  const auto deg = degrees_of<4>(edges);
  switch (edges.size()) {
    case 3:
      if (deg == std::array{1, 1, 2, 2}) return FourType::path3;
      if (deg == std::array{1, 1, 1, 3}) return FourType::star3;
      return FourType::disconnected;  // triangle plus an isolated vertex
    case 4:
      return deg == std::array{2, 2, 2, 2} ? FourType::cycle4 : FourType::tailed_tri;
    case 5:
      return FourType::diamond;
    case 6:
      return FourType::clique4;
    default:
      return FourType::disconnected;
  }
}

ThreeType classify_three(std::span<const std::pair<int, int>> edges) {
  degrees_of<3>(edges);
  switch (edges.size()) {
    case 2: return ThreeType::wedge;
    case 3: return ThreeType::triangle;
    default: return ThreeType::disconnected;
  }
}

GraphletCounts count_brute(const Graph& g, std::size_t guard) {
  const std::size_t n = g.num_vertices();
  if (n > guard) {
    throw BruteForceGuard("count_brute: " + std::to_string(n) + " vertices exceeds the guard of " +
                          std::to_string(guard) + "; pass a larger guard explicitly to override");
  }
  std::vector<std::uint8_t> adj(n * n, 0);
  for (const Edge& e : g.edges()) adj[e.u * n + e.v] = adj[e.v * n + e.u] = 1;

  GraphletCounts c;
  std::vector<std::pair<int, int>> local;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t d = b + 1; d < n; ++d) {
        const std::array<std::size_t, 3> s{a, b, d};
        local.clear();
        for (int i = 0; i < 3; ++i)
          for (int j = i + 1; j < 3; ++j)
            if (adj[s[i] * n + s[j]]) local.emplace_back(i, j);
        switch (classify_three(local)) {
          case ThreeType::wedge: ++c.wedge; break;
          case ThreeType::triangle: ++c.triangle; break;
          case ThreeType::disconnected: break;
        }
        for (std::size_t e = d + 1; e < n; ++e) {
          const std::array<std::size_t, 4> q{a, b, d, e};
          local.clear();
          for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
              if (adj[q[i] * n + q[j]]) local.emplace_back(i, j);
          switch (classify_four(local)) {
            case FourType::path3: ++c.path3; break;
            case FourType::star3: ++c.star3; break;
            case FourType::cycle4: ++c.cycle4; break;
            case FourType::tailed_tri: ++c.tailed_tri; break;
            case FourType::diamond: ++c.diamond; break;
            case FourType::clique4: ++c.clique4; break;
            case FourType::disconnected: break;
          }
        }
      }
    }
  }
  return c;
}

namespace testing {
void set_derivation_fault(bool enabled) { g_derivation_fault.store(enabled); }
bool derivation_fault() { return g_derivation_fault.load(); }
}  // namespace testing

}  // namespace dgc
