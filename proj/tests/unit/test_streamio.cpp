#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "doctest.h"
#include "motifsketch/error.hpp"
#include "motifsketch/oracle.hpp"
#include "motifsketch/streamio.hpp"

using namespace motifsketch;

TEST_CASE("event line forms") {
  CHECK(parse_stream("+ 3 7\n") == std::vector<EdgeEvent>{insert_edge(3, 7)});
  CHECK(parse_stream("- 3 7\n") == std::vector<EdgeEvent>{delete_edge(3, 7)});
  CHECK(parse_stream("3 7\n") == std::vector<EdgeEvent>{insert_edge(3, 7)});
  CHECK(parse_stream("# only a comment\n\n   \n+ 1 18446744073709551615 # big id\n") ==
        std::vector<EdgeEvent>{insert_edge(1, 18446744073709551615ULL)});
}

TEST_CASE("malformed lines report their line number") {
  const char* bad[] = {"1 2\n* 3 4\n", "1 2\n3\n", "1 2\n3 4 5\n", "1 2\n5 5\n", "1 2\n-1 3\n",
                       "1 2\n+ 1 18446744073709551616\n", "1 2\n+ a b\n"};
  for (const char* text : bad) {
    try {
      parse_stream(text);
      FAIL("expected FormatError for: " << text);
    } catch (const FormatError& e) {
      CHECK(e.line() == 2);
    }
  }
}

TEST_CASE("streaming reader yields events lazily") {
  std::istringstream in("1 2\n# skip\n- 1 2\nbroken\n");
  StreamReader reader(in);
  CHECK(reader.next() == insert_edge(1, 2));
  CHECK(reader.next() == delete_edge(1, 2));
  CHECK(reader.line_number() == 3);
  CHECK_THROWS_AS(reader.next(), FormatError);
}

TEST_CASE("serialize and parse round-trip") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<EdgeEvent> events;
    for (int i = 0; i < 200; ++i) {
      const VertexId u = rng() % 1000 + (trial % 2 ? rng() : 0);
      const VertexId v = u + 1 + rng() % 50;
      events.push_back(rng() % 3 ? insert_edge(u, v) : delete_edge(u, v));
    }
    CHECK(parse_stream(serialize_stream(events)) == events);
  }
  CHECK(to_text(delete_edge(4, 9)) == "- 4 9");
}

TEST_CASE("stream statistics") {
  const auto s = stream_stats(parse_stream("1 2\n2 3\n- 1 2\n3 4\n"));
  CHECK(s.events == 4);
  CHECK(s.inserts == 3);
  CHECK(s.deletes == 1);
  CHECK(s.net_edges() == 2);
  CHECK(s.directed_edges() == 4);
}

TEST_CASE("planting one triangle on an empty graph") {
  GenerateOptions o;
  o.nodes = 10;
  o.edges = 0;
  o.max_degree = 2;
  o.plant = PlantSpec{builtin_pattern("triangle"), 1};
  o.seed = 1;
  const auto events = generate_stream(o);
  REQUIRE(events.size() == 3);
  for (const auto& e : events) CHECK(e.op == EdgeOp::Insert);
  const auto g = replay(events);
  CHECK(g.edge_count() == 3);
  CHECK(exact_count(g, builtin_pattern("triangle")) == 1);
}

TEST_CASE("generated streams respect the cap on every prefix") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    GenerateOptions o;
    o.nodes = 60;
    o.edges = 200;
    o.max_degree = 8;
    o.plant = PlantSpec{builtin_pattern("cycle4"), 3};
    o.churn_pairs = 40;
    o.seed = seed;
    const auto events = generate_stream(o);
    CHECK(events == generate_stream(o));
    std::map<VertexId, std::int64_t> degree;
    for (const auto& e : events) {
      const int delta = e.op == EdgeOp::Insert ? 1 : -1;
      degree[e.u] += delta;
      degree[e.v] += delta;
      CHECK(degree[e.u] <= 8);
      CHECK(degree[e.v] <= 8);
    }
    const auto g = replay(events);
    CHECK(g.edge_count() == 200 + 3 * 4);
    CHECK(g.max_degree() <= 8);
  }
}

TEST_CASE("churn does not change the net graph") {
  GenerateOptions o;
  o.nodes = 40;
  o.edges = 100;
  o.max_degree = 10;
  o.seed = 11;
  const auto plain = generate_stream(o);
  o.churn_pairs = 50;
  const auto churned = generate_stream(o);
  CHECK(churned.size() == plain.size() + 100);
  CHECK(stream_stats(churned).deletes == 50);
  const auto a = replay(plain);
  const auto b = replay(churned);
  CHECK(a.vertices() == b.vertices());
  for (VertexId v : a.vertices()) {
    auto na = std::vector<VertexId>(a.neighbors(v).begin(), a.neighbors(v).end());
    auto nb = std::vector<VertexId>(b.neighbors(v).begin(), b.neighbors(v).end());
    std::sort(na.begin(), na.end());
    std::sort(nb.begin(), nb.end());
    CHECK(na == nb);
  }
}

TEST_CASE("infeasible generation requests are rejected") {
  GenerateOptions o;
  o.nodes = 10;
  o.edges = 30;
  o.max_degree = 3;
  CHECK_THROWS_AS(generate_stream(o), ConfigError);
  o.edges = 50;
  o.max_degree = 20;
  CHECK_THROWS_AS(generate_stream(o), ConfigError);  // more than n choose 2
  o.edges = 5;
  o.max_degree = 2;
  o.plant = PlantSpec{builtin_pattern("k4"), 1};
  CHECK_THROWS_AS(generate_stream(o), ConfigError);  // planted degree above the cap
}
