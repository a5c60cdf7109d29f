#pragma once

// Test-only reference computations. These deliberately avoid the library's
// optimized paths: plain enumeration over permutations, vertex maps and edge
// tuples.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "motifsketch/hashing.hpp"
#include "motifsketch/oracle.hpp"
#include "motifsketch/pattern.hpp"

namespace motifsketch::testing {

using UndirectedEdgeSet = std::set<std::pair<int, int>>;

inline UndirectedEdgeSet undirected_edges(const Pattern& p, const std::vector<int>& relabel) {
  UndirectedEdgeSet out;
  for (const auto& e : p.edges()) {
    const int a = relabel[e.tail - 1];
    const int b = relabel[e.head - 1];
    out.emplace(std::min(a, b), std::max(a, b));
  }
  return out;
}

/// Permutations whose image of the undirected edge set equals the edge set.
inline std::uint64_t brute_force_automorphisms(const Pattern& p) {
  std::vector<int> identity(static_cast<std::size_t>(p.vertex_count()));
  std::iota(identity.begin(), identity.end(), 1);
  const auto base = undirected_edges(p, identity);
  std::vector<int> perm = identity;
  std::uint64_t count = 0;
  do {
    count += undirected_edges(p, perm) == base;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

/// Injective vertex maps from the pattern into `g` preserving every edge,
/// enumerated over all ordered t-subsets of the host vertices.
inline std::uint64_t brute_force_injective_homs(const MaterializedGraph& g, const Pattern& p,
                                                const Coloring* coloring = nullptr,
                                                const std::vector<std::uint32_t>* tuple = nullptr) {
  const auto hosts = g.vertices();
  const std::size_t t = static_cast<std::size_t>(p.vertex_count());
  std::vector<VertexId> image(t);
  std::vector<bool> used(hosts.size(), false);
  std::uint64_t count = 0;
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (depth == t) {
      for (const auto& e : p.edges()) {
        if (!g.has_edge(image[e.tail - 1], image[e.head - 1])) return;
      }
      if (coloring) {
        for (std::size_t b = 0; b < t; ++b) {
          if ((*coloring)(image[b]) != (*tuple)[b]) return;
        }
      }
      ++count;
      return;
    }
    for (std::size_t n = 0; n < hosts.size(); ++n) {
      if (used[n]) continue;
      used[n] = true;
      image[depth] = hosts[n];
      self(self, depth + 1);
      used[n] = false;
    }
  };
  rec(rec, 0);
  return count;
}

struct DirectedHostEdge {
  VertexId from;
  VertexId to;
};

inline std::vector<DirectedHostEdge> doubled_edges(const MaterializedGraph& g) {
  std::vector<DirectedHostEdge> out;
  for (VertexId v : g.vertices()) {
    for (VertexId w : g.neighbors(v)) out.push_back({v, w});
  }
  return out;
}

/// tr(S) by summing tr(Q(T)) over every distinctly color-compatible k-tuple T
/// of directed host edges, Q(T) = prod_j X_j(v_j). Exponential in k.
inline std::complex<double> brute_force_trace_s(const MaterializedGraph& g, const Pattern& p,
                                                const HalfEdgeHashes& h) {
  const auto edges = doubled_edges(g);
  const int k = p.edge_count();
  const int t = p.vertex_count();
  const GroupSpec& group = h.group();
  std::vector<std::size_t> choice(static_cast<std::size_t>(k), 0);
  std::complex<double> total{};
  if (edges.empty()) return total;
  while (true) {
    // Endpoint v_j of half-edge j.
    std::vector<VertexId> endpoint(static_cast<std::size_t>(2 * k));
    for (int i = 0; i < k; ++i) {
      endpoint[2 * i] = edges[choice[i]].from;
      endpoint[2 * i + 1] = edges[choice[i]].to;
    }
    std::vector<std::int64_t> vertex_color(static_cast<std::size_t>(t), -1);
    bool compatible = true;
    for (int j = 1; j <= 2 * k && compatible; ++j) {
      const int b = p.half_edge_vertex(j);
      const std::int64_t c = h.color(endpoint[j - 1]);
      if (vertex_color[b - 1] < 0) {
        vertex_color[b - 1] = c;
      } else if (vertex_color[b - 1] != c) {
        compatible = false;
      }
    }
    if (compatible) {
      std::set<std::int64_t> distinct(vertex_color.begin(), vertex_color.end());
      compatible = distinct.size() == static_cast<std::size_t>(t);
    }
    if (compatible) {
      GroupElement q = identity_element();
      for (int j = 1; j <= 2 * k; ++j) q = multiply(q, h.x(j, endpoint[j - 1]), group);
      total += trace(embed(q, group));
    }
    int pos = 0;
    while (pos < k && ++choice[pos] == edges.size()) choice[pos++] = 0;
    if (pos == k) break;
  }
  return total;
}

/// sum_j c_j x^j mod p using repeated squaring for each power.
inline std::uint64_t naive_polynomial(const std::vector<std::uint64_t>& coefficients_high_first,
                                      std::uint64_t key) {
  const std::uint64_t p = kMersenne61;
  const uint128 x = key % p;
  uint128 sum = 0;
  const std::size_t n = coefficients_high_first.size();
  for (std::size_t idx = 0; idx < n; ++idx) {
    const std::size_t power = n - 1 - idx;
    uint128 term = 1;
    for (std::size_t e = 0; e < power; ++e) term = (term * x) % p;
    sum = (sum + term * (coefficients_high_first[idx] % p)) % p;
  }
  return static_cast<std::uint64_t>(sum);
}

inline Pattern chorded_cycle4_pattern() {
  return Pattern::from_edges(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {3, 1}});
}

inline MaterializedGraph complete_graph(VertexId n) {
  MaterializedGraph g;
  for (VertexId u = 1; u <= n; ++u) {
    for (VertexId v = u + 1; v <= n; ++v) g.insert(u, v);
  }
  return g;
}

}  // namespace motifsketch::testing
