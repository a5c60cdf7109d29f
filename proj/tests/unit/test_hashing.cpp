#include <cmath>
#include <map>
#include <random>

#include "brute_force.hpp"
#include "doctest.h"
#include "motifsketch/error.hpp"
#include "motifsketch/hashing.hpp"

using namespace motifsketch;

namespace {

std::size_t element_index(GroupElement g, const GroupSpec& spec) {
  return g.sign > 0 ? g.exponent : spec.modulus() + g.exponent;
}

// Each cell count within 5 binomial standard deviations of n/cells.
void check_uniform(const std::vector<std::uint64_t>& counts, std::uint64_t n) {
  const double p = 1.0 / static_cast<double>(counts.size());
  const double mean = static_cast<double>(n) * p;
  const double sd = std::sqrt(static_cast<double>(n) * p * (1 - p));
  for (auto c : counts) CHECK(std::abs(static_cast<double>(c) - mean) <= 5 * sd);
}

std::vector<Pattern> all_patterns() {
  std::vector<Pattern> out;
  for (auto name : builtin_pattern_names()) out.push_back(builtin_pattern(name));
  out.push_back(testing::chorded_cycle4_pattern());
  return out;
}

}  // namespace

TEST_CASE("hashes are deterministic per seed") {
  const auto p = builtin_pattern("cycle4");
  const auto spec = GroupSpec::signed_powers(8);
  const auto a = build_hashes(p, spec, 6, 1234);
  const auto b = build_hashes(p, spec, 6, 1234);
  const auto c = build_hashes(p, spec, 6, 1235);
  bool any_difference = false;
  for (int j = 1; j <= p.half_edge_count(); ++j) {
    if (a.element_hasher(j)) CHECK(*a.element_hasher(j) == *b.element_hasher(j));
  }
  CHECK(a.color_hasher() == b.color_hasher());
  for (VertexId v = 0; v < 500; ++v) {
    CHECK(eval_color(a, v) == eval_color(b, v));
    for (int j = 1; j <= p.half_edge_count(); ++j) {
      CHECK(eval_x(a, j, v) == eval_x(b, j, v));
      any_difference |= !(eval_x(a, j, v) == eval_x(c, j, v));
    }
  }
  CHECK(any_difference);
}

TEST_CASE("one hasher per non-distinguished half-edge") {
  const auto spec = GroupSpec::roots_of_unity(4);
  CHECK(build_hashes(builtin_pattern("triangle"), spec, 3, 1).element_hasher_count() == 3);
  CHECK(build_hashes(testing::chorded_cycle4_pattern(), spec, 4, 1).element_hasher_count() == 6);
  for (const auto& p : all_patterns()) {
    const auto h = build_hashes(p, spec, 10, 7);
    CHECK(h.element_hasher_count() ==
          static_cast<std::size_t>(2 * p.edge_count() - p.vertex_count()));
    for (int j = 1; j <= p.half_edge_count(); ++j) {
      CHECK((h.element_hasher(j) == nullptr) == p.is_distinguished(j));
      if (h.element_hasher(j)) {
        CHECK(h.element_hasher(j)->coefficients().size() ==
              static_cast<std::size_t>(4 * p.edge_count()));
      }
    }
  }
}

TEST_CASE("too few colors is a configuration error") {
  CHECK_THROWS_AS(build_hashes(builtin_pattern("cycle4"), GroupSpec::roots_of_unity(4), 3, 1),
                  ConfigError);
}

TEST_CASE("product over each incidence set is the identity") {
  std::mt19937_64 rng(99);
  for (const auto& p : all_patterns()) {
    for (auto spec : {GroupSpec::roots_of_unity(4), GroupSpec::signed_powers(7)}) {
      const auto h = build_hashes(p, spec, 12, rng());
      for (int s = 0; s < 2000; ++s) {
        const VertexId v = rng();
        for (int b = 1; b <= p.vertex_count(); ++b) {
          GroupElement prod = identity_element();
          for (int j : p.incident(b)) prod = multiply(prod, h.x(j, v), spec);
          REQUIRE(prod == identity_element());
        }
      }
    }
  }
}

TEST_CASE("distinguished value at a degree-2 vertex is the inverse of its partner") {
  const auto p = builtin_pattern("cycle5");
  const auto spec = GroupSpec::signed_powers(5);
  const auto h = build_hashes(p, spec, 5, 3);
  for (VertexId v = 1; v < 200; ++v) {
    for (int b = 1; b <= 5; ++b) {
      const auto gamma = p.incident(b);
      CHECK(h.x(gamma[0], v) == inverse(h.x(gamma[1], v), spec));
    }
  }
}

TEST_CASE("leaf half-edges evaluate to the identity") {
  const auto p = Pattern::parse("3 2\n1 2\n2 3\n", PatternOptions{.allow_leaves = true});
  const auto h = build_hashes(p, GroupSpec::roots_of_unity(4), 3, 5);
  for (VertexId v = 0; v < 100; ++v) {
    CHECK(h.x(1, v) == identity_element());
    CHECK(h.x(4, v) == identity_element());
  }
}

TEST_CASE("element and color values look uniform") {
  const auto p = builtin_pattern("cycle4");
  const std::uint64_t n = 100000;
  for (auto spec : {GroupSpec::roots_of_unity(4), GroupSpec::signed_powers(5)}) {
    const auto h = build_hashes(p, spec, 8, 2024);
    int j = 1;
    while (p.is_distinguished(j)) ++j;
    std::vector<std::uint64_t> elements(spec.size()), colors(8);
    for (VertexId v = 0; v < n; ++v) {
      ++elements[element_index(h.x(j, v), spec)];
      ++colors[h.color_index(v)];
    }
    check_uniform(elements, n);
    check_uniform(colors, n);
  }
}

TEST_CASE("pairs of half-edges look jointly uniform") {
  const auto p = builtin_pattern("cycle4");
  const auto spec = GroupSpec::roots_of_unity(4);
  const auto h = build_hashes(p, spec, 8, 77);
  std::vector<int> free;
  for (int j = 1; j <= p.half_edge_count(); ++j) {
    if (!p.is_distinguished(j)) free.push_back(j);
  }
  REQUIRE(free.size() >= 2);
  const std::uint64_t n = 100000;
  std::vector<std::uint64_t> joint(spec.size() * spec.size());
  std::mt19937_64 rng(5);
  for (std::uint64_t s = 0; s < n; ++s) {
    const VertexId v = rng();
    joint[element_index(h.x(free[0], v), spec) * spec.size() + element_index(h.x(free[1], v), spec)]++;
  }
  check_uniform(joint, n);
}

TEST_CASE("Horner evaluation matches the power-by-power reference") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto hash = PolynomialHash::from_seed(rng(), static_cast<std::uint64_t>(trial), 12, 1000);
    const std::vector<std::uint64_t> coeffs(hash.coefficients().begin(), hash.coefficients().end());
    for (auto c : coeffs) CHECK(c < kMersenne61);
    for (int s = 0; s < 100; ++s) {
      const std::uint64_t key = s < 5 ? kMersenne61 - 2 + static_cast<std::uint64_t>(s) : rng();
      CHECK(hash.field_value(key) == testing::naive_polynomial(coeffs, key));
      CHECK(hash(key) == testing::naive_polynomial(coeffs, key) % 1000);
    }
  }
}

TEST_CASE("mersenne arithmetic edge cases") {
  CHECK(mersenne_reduce(kMersenne61) == 0);
  CHECK(mersenne_reduce(~std::uint64_t{0}) == (~std::uint64_t{0}) % kMersenne61);
  CHECK(mersenne_mul(kMersenne61 - 1, kMersenne61 - 1) == 1);
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(derive_seed(1, 2) != derive_seed(2, 2));
}

TEST_CASE("overrides replace colors and elements") {
  const auto p = builtin_pattern("triangle");
  const auto spec = GroupSpec::signed_powers(4);
  HashOverrides o;
  o.color = [](VertexId) { return 1u; };
  o.element = [](int, VertexId v) { return GroupElement{static_cast<std::uint32_t>(v % 4), 1}; };
  const auto h = build_hashes(p, spec, 5, 9, o);
  CHECK(h.has_overrides());
  for (VertexId v = 0; v < 50; ++v) {
    CHECK(eval_color(h, v) == 1);
    CHECK(h.color_index(v) == 0);
    for (int b = 1; b <= 3; ++b) {
      GroupElement prod = identity_element();
      for (int j : p.incident(b)) {
        if (!p.is_distinguished(j)) CHECK(h.x(j, v) == GroupElement{static_cast<std::uint32_t>(v % 4), 1});
        prod = multiply(prod, h.x(j, v), spec);
      }
      CHECK(prod == identity_element());
    }
  }
}

TEST_CASE("signature agrees with per-half-edge evaluation") {
  const auto p = testing::chorded_cycle4_pattern();
  const auto spec = GroupSpec::signed_powers(6);
  const auto h = build_hashes(p, spec, 7, 31);
  std::vector<GroupElement> sig(static_cast<std::size_t>(p.half_edge_count()));
  for (VertexId v = 0; v < 300; ++v) {
    CHECK(h.signature(v, sig) == h.color_index(v));
    for (int j = 1; j <= p.half_edge_count(); ++j) CHECK(sig[j - 1] == h.x(j, v));
  }
}
