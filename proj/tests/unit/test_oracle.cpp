#include <bit>
#include <random>
#include <set>

#include "brute_force.hpp"
#include "doctest.h"
#include "motifsketch/error.hpp"
#include "motifsketch/oracle.hpp"

using namespace motifsketch;

namespace {

MaterializedGraph random_graph(VertexId n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  MaterializedGraph g;
  for (VertexId u = 1; u <= n; ++u) {
    for (VertexId v = u + 1; v <= n; ++v) {
      if (coin(rng)) g.insert(u, v);
    }
  }
  return g;
}

// Ordered tuples of distinct colors in 1..colors of length t.
std::vector<std::vector<std::uint32_t>> distinct_tuples(std::uint32_t colors, int t) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == t) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t c = 1; c <= colors; ++c) {
      if (std::find(cur.begin(), cur.end(), c) != cur.end()) continue;
      cur.push_back(c);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

}  // namespace

TEST_CASE("small exact counts") {
  const auto triangle = builtin_pattern("triangle");
  CHECK(exact_count(testing::complete_graph(4), triangle) == 4);
  CHECK(exact_count(testing::complete_graph(3), triangle) == 1);
  const auto cycle4 = builtin_pattern("cycle4");
  const auto k4 = testing::complete_graph(4);
  CHECK(testing::brute_force_injective_homs(k4, cycle4) / cycle4.automorphisms() == 3);
  CHECK(exact_count(k4, cycle4) == 3);
  CHECK(exact_count(MaterializedGraph{}, triangle) == 0);
}

TEST_CASE("exact counts agree with full enumeration on random graphs") {
  std::vector<Pattern> patterns{builtin_pattern("triangle"), builtin_pattern("cycle4"),
                                builtin_pattern("cycle5"), builtin_pattern("k4"),
                                testing::chorded_cycle4_pattern()};
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto g = random_graph(9, 0.45, seed);
    for (const auto& p : patterns) {
      const auto homs = testing::brute_force_injective_homs(g, p);
      CHECK(injective_homomorphisms(g, p) == homs);
      CHECK(homs % p.automorphisms() == 0);
      CHECK(exact_count(g, p) == homs / p.automorphisms());
    }
  }
}

TEST_CASE("complete graphs contain t!/auto copies") {
  const std::uint64_t fact[] = {1, 1, 2, 6, 24, 120};
  std::vector<Pattern> patterns{builtin_pattern("triangle"), builtin_pattern("cycle4"),
                                builtin_pattern("cycle5"), builtin_pattern("k4"),
                                testing::chorded_cycle4_pattern()};
  for (const auto& p : patterns) {
    const int t = p.vertex_count();
    CHECK(exact_count(testing::complete_graph(static_cast<VertexId>(t)), p) ==
          fact[t] / p.automorphisms());
  }
}

TEST_CASE("orientation does not change the count") {
  const auto g = random_graph(10, 0.5, 42);
  const auto base = exact_count(g, builtin_pattern("cycle4"));
  const char* orientations[] = {"4 4\n2 1\n2 3\n3 4\n4 1\n", "4 4\n2 1\n3 2\n4 3\n1 4\n",
                                "4 4\n1 2\n3 2\n3 4\n1 4\n"};
  for (const char* text : orientations) CHECK(exact_count(g, Pattern::parse(text)) == base);
}

TEST_CASE("compatible counts on a single triangle") {
  const auto g = testing::complete_graph(3);
  const Coloring coloring = [](VertexId v) { return static_cast<std::uint32_t>(v); };
  const auto p = builtin_pattern("triangle");
  const std::vector<std::uint32_t> tuple{1, 2, 3};
  // The colors force the vertex map, and it preserves every doubled edge.
  CHECK(exact_compatible_count(g, p, coloring, tuple) == 1);
  CHECK(testing::brute_force_injective_homs(g, p, &coloring, &tuple) == 1);
  const std::vector<std::uint32_t> unused{1, 2, 7};
  CHECK(exact_compatible_count(g, p, coloring, unused) == 0);
  const std::vector<std::uint32_t> repeated{1, 1, 2};
  CHECK_THROWS_AS(exact_compatible_count(g, p, coloring, repeated), ConfigError);
}

TEST_CASE("compatible counts sum to auto times rainbow copies") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto g = random_graph(8, 0.5, 100 + seed);
    std::mt19937_64 rng(seed);
    std::vector<std::uint32_t> colors(9);
    for (auto& c : colors) c = static_cast<std::uint32_t>(rng() % 5 + 1);
    const Coloring coloring = [&](VertexId v) { return colors[v]; };
    for (const auto& p : {builtin_pattern("triangle"), builtin_pattern("cycle4")}) {
      std::uint64_t total = 0;
      for (const auto& tuple : distinct_tuples(5, p.vertex_count())) {
        const auto count = exact_compatible_count(g, p, coloring, tuple);
        CHECK(count == testing::brute_force_injective_homs(g, p, &coloring, &tuple));
        total += count;
      }
      // Rainbow copies, counted per vertex subset with pairwise distinct colors.
      std::uint64_t rainbow_copies = 0;
      const int t = p.vertex_count();
      for (std::uint32_t mask = 0; mask < (1u << 9); ++mask) {
        if (std::popcount(mask) != t) continue;
        std::set<std::uint32_t> seen;
        MaterializedGraph induced;
        for (VertexId u = 0; u < 9; ++u) {
          if (!(mask >> u & 1)) continue;
          seen.insert(colors[u]);
          for (VertexId v = u + 1; v < 9; ++v) {
            if ((mask >> v & 1) && g.has_edge(u, v)) induced.insert(u, v);
          }
        }
        if (seen.size() != static_cast<std::size_t>(t)) continue;
        rainbow_copies += testing::brute_force_injective_homs(induced, p) / p.automorphisms();
      }
      CHECK(total == p.automorphisms() * rainbow_copies);
    }
  }
}

TEST_CASE("replay applies inserts and deletes") {
  CHECK(replay(parse_stream("1 2\n- 1 2\n")).edge_count() == 0);
  CHECK_THROWS_AS(replay(parse_stream("- 1 2\n1 2\n")), InputError);
  CHECK_THROWS_AS(replay(parse_stream("1 2\n2 1\n")), InputError);
  try {
    replay(parse_stream("1 2\n2 3\n- 3 4\n"));
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("event 3") != std::string::npos);
  }

  std::mt19937_64 rng(8);
  std::vector<EdgeEvent> events;
  std::set<std::pair<VertexId, VertexId>> live;
  std::uint64_t inserts = 0, deletes = 0;
  while (events.size() < 100) {
    VertexId u = rng() % 12 + 1, v = rng() % 12 + 1;
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (live.erase({u, v})) {
      events.push_back(delete_edge(v, u));
      ++deletes;
    } else {
      live.insert({u, v});
      events.push_back(insert_edge(u, v));
      ++inserts;
    }
  }
  const auto g = replay(events);
  CHECK(g.edge_count() == inserts - deletes);
  for (const auto& [u, v] : live) CHECK(g.has_edge(v, u));
}

TEST_CASE("materialized graph queries") {
  MaterializedGraph g;
  g.insert(5, 9);
  g.insert(9, 2);
  CHECK(g.degree(9) == 2);
  CHECK(g.degree(100) == 0);
  CHECK(g.max_degree() == 2);
  CHECK(g.vertices() == std::vector<VertexId>{2, 5, 9});
  CHECK_THROWS_AS(g.insert(3, 3), InputError);
  CHECK_THROWS_AS(g.erase(2, 5), InputError);
  g.erase(2, 9);
  CHECK(g.vertices() == std::vector<VertexId>{5, 9});
}

TEST_CASE("size guard") {
  MaterializedGraph g;
  for (VertexId v = 0; v <= kOracleMaxVertices; ++v) g.insert(2 * v, 2 * v + 1);
  CHECK_THROWS_AS(exact_count(g, builtin_pattern("triangle")), LimitError);
}
