#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "motifsketch/hashing.hpp"
#include "motifsketch/pattern.hpp"
#include "motifsketch/streamio.hpp"

namespace motifsketch {

/// Undirected simple host graph, materialized for exact counting.
class MaterializedGraph {
 public:
  /// Throws InputError on self-loops and on inserting an existing edge.
  void insert(VertexId u, VertexId v);
  /// Throws InputError when the edge is absent.
  void erase(VertexId u, VertexId v);

  bool has_edge(VertexId u, VertexId v) const;
  std::uint32_t degree(VertexId v) const;
  std::uint32_t max_degree() const;

  /// Vertices with at least one incident edge, ascending.
  std::vector<VertexId> vertices() const;
  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_; }

  std::span<const VertexId> neighbors(VertexId v) const;

 private:
  std::unordered_map<VertexId, std::vector<VertexId>> adjacency_;
  std::size_t edges_ = 0;
};

/// Applies a turnstile stream; throws InputError (with the event index) on a
/// double insert or a delete of an absent edge.
MaterializedGraph replay(std::span<const EdgeEvent> events);

/// Largest host graph the brute-force counters accept.
inline constexpr std::size_t kOracleMaxVertices = 10'000;

/// Injective homomorphisms from the undirected pattern into `graph`.
std::uint64_t injective_homomorphisms(const MaterializedGraph& graph, const Pattern& pattern);

/// Copies of the pattern in `graph`: injective homomorphisms / auto(H).
std::uint64_t exact_count(const MaterializedGraph& graph, const Pattern& pattern);

using Coloring = std::function<std::uint32_t(VertexId)>;

/// Injective homomorphisms phi of the directed pattern into the doubled host
/// graph with coloring(phi(b)) == tuple[b-1] for every pattern vertex b.
/// Tuple colors must be pairwise distinct.
std::uint64_t exact_compatible_count(const MaterializedGraph& graph, const Pattern& pattern,
                                     const Coloring& coloring, std::span<const std::uint32_t> tuple);

}  // namespace motifsketch
