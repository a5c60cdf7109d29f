#include "motifsketch/pattern.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "motifsketch/error.hpp"
#include "text_util.hpp"

namespace motifsketch {
namespace {

using AdjacencyMatrix = std::array<std::array<bool, Pattern::kMaxVertices>, Pattern::kMaxVertices>;

AdjacencyMatrix undirected_adjacency(int t, std::span<const DirectedEdge> edges) {
  AdjacencyMatrix adj{};
  for (const auto& e : edges) {
    adj[e.tail - 1][e.head - 1] = true;
    adj[e.head - 1][e.tail - 1] = true;
  }
  (void)t;
  return adj;
}

std::uint64_t count_automorphisms(int t, std::span<const DirectedEdge> edges) {
  const AdjacencyMatrix adj = undirected_adjacency(t, edges);
  std::vector<int> perm(static_cast<std::size_t>(t));
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    bool preserves = true;
    for (const auto& e : edges) {
      if (!adj[perm[e.tail - 1]][perm[e.head - 1]]) {
        preserves = false;
        break;
      }
    }
    // A permutation that maps every edge onto an edge is a bijection on the
    // (finite) edge set, so non-edges are preserved too.
    if (preserves) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

bool is_connected(int t, std::span<const DirectedEdge> edges) {
  const AdjacencyMatrix adj = undirected_adjacency(t, edges);
  std::vector<bool> seen(static_cast<std::size_t>(t), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int w = 0; w < t; ++w) {
      if (adj[u][w] && !seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == t;
}

}  // namespace

Pattern Pattern::from_edges(int vertex_count, std::vector<DirectedEdge> edges,
                            PatternOptions options) {
  if (vertex_count < 1) throw InputError("pattern must have at least one vertex");
  if (vertex_count > kMaxVertices) {
    throw InputError("pattern has " + std::to_string(vertex_count) +
                     " vertices; at most " + std::to_string(kMaxVertices) + " are supported");
  }
  if (edges.empty()) throw InputError("pattern must have at least one edge");

  AdjacencyMatrix seen{};
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    const std::string where = "pattern edge " + std::to_string(i + 1);
    if (e.tail < 1 || e.tail > vertex_count || e.head < 1 || e.head > vertex_count) {
      throw InputError(where + ": endpoint out of range 1.." + std::to_string(vertex_count));
    }
    if (e.tail == e.head) throw InputError(where + ": self-loop");
    if (seen[e.tail - 1][e.head - 1]) throw InputError(where + ": duplicate edge");
    seen[e.tail - 1][e.head - 1] = true;
    seen[e.head - 1][e.tail - 1] = true;
  }

  Pattern p;
  p.vertex_count_ = vertex_count;
  p.allow_leaves_ = options.allow_leaves;
  p.edges_ = std::move(edges);
  p.incident_.resize(static_cast<std::size_t>(vertex_count));
  p.half_edge_vertex_.reserve(2 * p.edges_.size());
  for (std::size_t i = 0; i < p.edges_.size(); ++i) {
    const int tail_half = static_cast<int>(2 * i + 1);
    p.half_edge_vertex_.push_back(p.edges_[i].tail);
    p.half_edge_vertex_.push_back(p.edges_[i].head);
    p.incident_[p.edges_[i].tail - 1].push_back(tail_half);
    p.incident_[p.edges_[i].head - 1].push_back(tail_half + 1);
  }
  for (auto& gamma : p.incident_) std::sort(gamma.begin(), gamma.end());

  for (int b = 1; b <= vertex_count; ++b) {
    const int deg = p.degree(b);
    if (deg == 0) throw InputError("pattern vertex " + std::to_string(b) + " is isolated");
    if (deg == 1 && !options.allow_leaves) {
      throw InputError("pattern vertex " + std::to_string(b) +
                       " is a leaf; pass the allow-leaves override to accept it");
    }
  }
  if (!is_connected(vertex_count, p.edges_)) throw InputError("pattern is not connected");

  p.automorphisms_ = count_automorphisms(vertex_count, p.edges_);
  return p;
}

Pattern Pattern::parse(std::string_view text, PatternOptions options) {
  detail::LineReader lines(text);
  std::vector<std::string_view> fields;

  auto next_fields = [&]() -> bool {
    while (lines.next()) {
      fields = detail::split_fields(detail::strip_comment(lines.current()));
      if (!fields.empty()) return true;
    }
    return false;
  };

  if (!next_fields()) throw FormatError("empty pattern file", 0);
  if (fields.size() != 2) throw FormatError("expected header `t k`", lines.line_number());
  const int t = detail::parse_int<int>(fields[0], lines.line_number(), "vertex count");
  const int k = detail::parse_int<int>(fields[1], lines.line_number(), "edge count");
  if (t < 1) throw FormatError("vertex count must be positive", lines.line_number());
  if (k < 1) throw FormatError("edge count must be positive", lines.line_number());

  std::vector<DirectedEdge> edges;
  edges.reserve(static_cast<std::size_t>(k));
  while (next_fields()) {
    if (fields.size() != 2) throw FormatError("expected edge `a b`", lines.line_number());
    if (static_cast<int>(edges.size()) == k) {
      throw FormatError("more than " + std::to_string(k) + " edges", lines.line_number());
    }
    edges.push_back({detail::parse_int<int>(fields[0], lines.line_number(), "vertex"),
                     detail::parse_int<int>(fields[1], lines.line_number(), "vertex")});
  }
  if (static_cast<int>(edges.size()) != k) {
    throw FormatError("header declares " + std::to_string(k) + " edges but " +
                          std::to_string(edges.size()) + " were given",
                      0);
  }
  return from_edges(t, std::move(edges), options);
}

bool Pattern::is_canonical_cycle4() const noexcept {
  static constexpr std::array<DirectedEdge, 4> kCycle{{{1, 2}, {2, 3}, {3, 4}, {4, 1}}};
  return vertex_count_ == 4 && std::equal(edges_.begin(), edges_.end(), kCycle.begin(), kCycle.end());
}

std::string Pattern::to_text() const {
  std::ostringstream out;
  out << vertex_count_ << ' ' << edges_.size() << '\n';
  for (const auto& e : edges_) out << e.tail << ' ' << e.head << '\n';
  return out.str();
}

std::uint64_t automorphism_count(const Pattern& pattern) {
  return count_automorphisms(pattern.vertex_count(), pattern.edges());
}

namespace {

constexpr std::array<std::string_view, 4> kBuiltinNames{"triangle", "cycle4", "cycle5", "k4"};

}  // namespace

std::span<const std::string_view> builtin_pattern_names() { return kBuiltinNames; }

Pattern builtin_pattern(std::string_view name, PatternOptions options) {
  if (name == "triangle") return Pattern::from_edges(3, {{1, 2}, {2, 3}, {3, 1}}, options);
  if (name == "cycle4") return Pattern::from_edges(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}}, options);
  if (name == "cycle5") {
    return Pattern::from_edges(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}}, options);
  }
  if (name == "k4") {
    return Pattern::from_edges(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 3}, {2, 4}}, options);
  }
  throw InputError("unknown builtin pattern '" + std::string(name) + "'");
}

Pattern load_pattern(std::string_view spec, PatternOptions options) {
  if (std::find(kBuiltinNames.begin(), kBuiltinNames.end(), spec) != kBuiltinNames.end()) {
    return builtin_pattern(spec, options);
  }
  std::ifstream in{std::string(spec)};
  if (!in) {
    throw InputError("'" + std::string(spec) + "' is neither a builtin pattern nor a readable file");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return Pattern::parse(buffer.str(), options);
}

}  // namespace motifsketch
