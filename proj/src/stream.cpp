#include "dgc/stream.hpp"

#include <array>
#include <charconv>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_set>

namespace dgc {

ExternalEdge ExternalEdge::make(ExternalId a, ExternalId b) {
  if (a == b) throw StreamError("self-loop on vertex " + std::to_string(a));
  return a < b ? ExternalEdge{a, b} : ExternalEdge{b, a};
}

std::span<const DatasetMeta> known_datasets() {
  static const std::array<DatasetMeta, 4> kDatasets = {{
      {"WikiTalk", 2394385, 4659565},
      {"WikiVote", 7115, 100762},
      {"Soc-Pokec", 1632803, 22301964},
      {"soc-LiveJournal", 4033137, 27933062},
  }};
  return kDatasets;
}

namespace {

struct EdgeKeyHash {
  std::size_t operator()(const ExternalEdge& e) const {
    return std::hash<std::uint64_t>{}(e.u * 0x9E3779B97F4A7C15ULL ^ e.v);
  }
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view next_token(std::string_view& rest) {
  std::size_t i = 0;
  while (i < rest.size() && is_space(rest[i])) ++i;
  std::size_t j = i;
  while (j < rest.size() && !is_space(rest[j])) ++j;
  std::string_view tok = rest.substr(i, j - i);
  rest.remove_prefix(j);
  return tok;
}

bool parse_id(std::string_view tok, ExternalId& out) {
  if (tok.empty()) return false;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
  throw StreamError("line " + std::to_string(line) + ": " + what);
}

}  // namespace

EdgeList parse_edge_list(std::istream& in, std::string name) {
  EdgeList out;
  out.meta.name = std::move(name);
  std::unordered_set<ExternalEdge, EdgeKeyHash> seen;
  std::unordered_set<ExternalId> vertices;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view rest = line;
    const std::string_view a = next_token(rest);
    if (a.empty() || a.front() == '#') continue;
    const std::string_view b = next_token(rest);
    ExternalId u = 0, v = 0;
    if (!parse_id(a, u) || !parse_id(b, v) || !next_token(rest).empty()) {
      malformed(lineno, "expected two non-negative integer vertex ids");
    }
    if (u == v) {
      ++out.self_loops_dropped;
      continue;
    }
    const ExternalEdge e = ExternalEdge::make(u, v);
    if (!seen.insert(e).second) {
      ++out.duplicates_dropped;
      continue;
    }
    out.edges.push_back(e);
    vertices.insert(u);
    vertices.insert(v);
  }
  if (in.bad()) throw StreamError("read error in " + out.meta.name);
  out.meta.vertex_count = vertices.size();
  out.meta.edge_count = out.edges.size();
  return out;
}

EdgeList parse_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StreamError("cannot open " + path.string());
  return parse_edge_list(in, path.stem().string());
}

void write_edge_list(std::ostream& out, std::span<const ExternalEdge> edges) {
  for (const auto& e : edges) out << e.u << ' ' << e.v << '\n';
}

std::vector<EdgeUpdate> read_update_stream(std::istream& in) {
  std::vector<EdgeUpdate> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view s = line;
    if (s.size() < 5 || (s[0] != '+' && s[0] != '-') || s[1] != ' ') {
      malformed(lineno, "expected '+ u v' or '- u v'");
    }
    const std::size_t sep = s.find(' ', 2);
    ExternalId u = 0, v = 0;
    if (sep == std::string_view::npos || !parse_id(s.substr(2, sep - 2), u) ||
        !parse_id(s.substr(sep + 1), v)) {
      malformed(lineno, "expected '+ u v' or '- u v'");
    }
    if (u == v) malformed(lineno, "self-loop on vertex " + std::to_string(u));
    out.push_back({s[0] == '+' ? Op::add : Op::del, ExternalEdge::make(u, v)});
  }
  if (in.bad()) throw StreamError("read error in update stream");
  return out;
}

std::vector<EdgeUpdate> read_update_stream(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StreamError("cannot open " + path.string());
  return read_update_stream(in);
}

void write_update_stream(std::ostream& out, std::span<const EdgeUpdate> events) {
  for (const auto& e : events) {
    out << static_cast<char>(e.op) << ' ' << e.edge.u << ' ' << e.edge.v << '\n';
  }
}

void write_update_stream(const std::filesystem::path& path, std::span<const EdgeUpdate> events) {
  std::ofstream out(path);
  if (!out) throw StreamError("cannot write " + path.string());
  write_update_stream(out, events);
  if (!out) throw StreamError("write error on " + path.string());
}

std::vector<EdgeUpdate> gen_dynamic_stream(std::span<const ExternalEdge> edges, double p,
                                           std::uint64_t seed) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("add probability must be in (0, 1]");
  std::mt19937_64 rng(seed);
  std::deque<ExternalEdge> queued;
  std::vector<EdgeUpdate> out;
  out.reserve(edges.size() + edges.size() / 2);
  for (const ExternalEdge& e : edges) {
    if (unit_draw(rng) < p) {
      out.push_back({Op::add, e});
      queued.push_back(e);
    }
    if (unit_draw(rng) >= p && !queued.empty()) {
      out.push_back({Op::del, queued.front()});
      queued.pop_front();
    }
  }
  return out;
}

std::vector<EdgeUpdate> insert_stream(std::span<const ExternalEdge> edges) {
  std::vector<EdgeUpdate> out;
  out.reserve(edges.size());
  for (const auto& e : edges) out.push_back({Op::add, e});
  return out;
}

Vertex IdMap::intern(ExternalId id) {
  auto [it, fresh] = to_internal_.try_emplace(id, static_cast<Vertex>(to_external_.size()));
  if (fresh) to_external_.push_back(id);
  return it->second;
}

Update IdMap::intern(const EdgeUpdate& e) {
  const Vertex a = intern(e.edge.u);
  const Vertex b = intern(e.edge.v);
  return {e.op, Edge::make(a, b)};
}

}  // namespace dgc
