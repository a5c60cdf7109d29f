#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace motifsketch {

/// A directed edge of the pattern graph, endpoints labeled 1..t.
struct DirectedEdge {
  int tail = 0;
  int head = 0;

  friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

struct PatternOptions {
  /// Accept degree-1 vertices. The estimate stays unbiased, but the variance
  /// bounds used by the planner assume a leafless pattern and no longer apply.
  bool allow_leaves = false;
};

/// The small pattern graph H, with arbitrary but fixed edge directions.
///
/// Edge i (1-based) owns half-edges 2i-1 (at its tail) and 2i (at its head).
/// For every vertex b, incident(b) lists the half-edges touching b in
/// increasing order, and the distinguished half-edge at b is the smallest of
/// them. Patterns are immutable once built.
class Pattern {
 public:
  static constexpr int kMaxVertices = 10;

  /// Empty placeholder with no vertices; assign a real pattern before use.
  Pattern() = default;

  static Pattern from_edges(int vertex_count, std::vector<DirectedEdge> edges,
                            PatternOptions options = {});

  /// Parses the text format: a `t k` header followed by k `a b` lines.
  /// Lines starting with `#` and blank lines are ignored.
  static Pattern parse(std::string_view text, PatternOptions options = {});

  int vertex_count() const noexcept { return vertex_count_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  int half_edge_count() const noexcept { return 2 * edge_count(); }

  std::span<const DirectedEdge> edges() const noexcept { return edges_; }
  const DirectedEdge& edge(int i) const { return edges_.at(static_cast<std::size_t>(i - 1)); }

  /// Pattern vertex a_j that half-edge j is incident to.
  int half_edge_vertex(int half_edge) const {
    return half_edge_vertex_.at(static_cast<std::size_t>(half_edge - 1));
  }

  /// Gamma(b): half-edges incident to vertex b, ascending.
  std::span<const int> incident(int vertex) const {
    return incident_.at(static_cast<std::size_t>(vertex - 1));
  }

  int degree(int vertex) const { return static_cast<int>(incident(vertex).size()); }
  int distinguished(int vertex) const { return incident(vertex).front(); }
  bool is_distinguished(int half_edge) const {
    return distinguished(half_edge_vertex(half_edge)) == half_edge;
  }

  /// Automorphisms of the undirected pattern (directions ignored).
  std::uint64_t automorphisms() const noexcept { return automorphisms_; }

  bool allows_leaves() const noexcept { return allow_leaves_; }

  /// True for exactly the edge list (1,2),(2,3),(3,4),(4,1).
  bool is_canonical_cycle4() const noexcept;

  /// Serializes back to the text format accepted by parse().
  std::string to_text() const;

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  int vertex_count_ = 0;
  std::vector<DirectedEdge> edges_;
  std::vector<int> half_edge_vertex_;
  std::vector<std::vector<int>> incident_;
  std::uint64_t automorphisms_ = 0;
  bool allow_leaves_ = false;
};

/// Counts permutations of 1..t preserving the undirected edge set.
std::uint64_t automorphism_count(const Pattern& pattern);

/// Names accepted by builtin_pattern().
std::span<const std::string_view> builtin_pattern_names();

/// `triangle`, `cycle4`, `cycle5` or `k4`. Throws InputError for other names.
Pattern builtin_pattern(std::string_view name, PatternOptions options = {});

/// Resolves a builtin name first, otherwise reads the pattern file at `spec`.
Pattern load_pattern(std::string_view spec, PatternOptions options = {});

}  // namespace motifsketch
