#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "motifsketch/algebra.hpp"
#include "motifsketch/pattern.hpp"

namespace motifsketch {

using VertexId = std::uint64_t;

/// The Mersenne prime 2^61 - 1.
inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

/// splitmix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for the index-th child of `seed`. For a fixed parent seed, distinct
/// indices give distinct children.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(seed ^ mix64(index + 0x9e3779b97f4a7c15ULL));
}

inline std::uint64_t mersenne_reduce(std::uint64_t x) noexcept {
  x = (x & kMersenne61) + (x >> 61);
  return x >= kMersenne61 ? x - kMersenne61 : x;
}

__extension__ using uint128 = unsigned __int128;

inline std::uint64_t mersenne_mul(std::uint64_t a, std::uint64_t b) noexcept {
  const uint128 prod = static_cast<uint128>(a) * b;
  const std::uint64_t lo = static_cast<std::uint64_t>(prod) & kMersenne61;
  const std::uint64_t hi = static_cast<std::uint64_t>(prod >> 61);
  const std::uint64_t sum = lo + hi;
  return sum >= kMersenne61 ? sum - kMersenne61 : sum;
}

/// Random polynomial over GF(2^61 - 1), reduced into [0, range).
///
/// With `independence` coefficients the family is `independence`-wise
/// independent over field elements. Keys are reduced mod 2^61 - 1 first, so
/// vertex ids that differ by a multiple of the prime collide; the final
/// reduction mod `range` has relative bias below range / 2^61.
class PolynomialHash {
 public:
  /// coefficients[0] multiplies the highest power.
  PolynomialHash(std::vector<std::uint64_t> coefficients, std::uint64_t range);

  /// Coefficient j is derive_seed(derive_seed(seed, index), j) mod p.
  static PolynomialHash from_seed(std::uint64_t seed, std::uint64_t index,
                                  std::size_t independence, std::uint64_t range);

  std::uint64_t field_value(std::uint64_t key) const noexcept {
    const std::uint64_t x = mersenne_reduce(key);
    std::uint64_t acc = coefficients_.front();
    for (std::size_t j = 1; j < coefficients_.size(); ++j) {
      acc = mersenne_mul(acc, x) + coefficients_[j];
      if (acc >= kMersenne61) acc -= kMersenne61;
    }
    return acc;
  }

  std::uint64_t operator()(std::uint64_t key) const noexcept { return field_value(key) % range_; }

  std::span<const std::uint64_t> coefficients() const noexcept { return coefficients_; }
  std::uint64_t range() const noexcept { return range_; }

  friend bool operator==(const PolynomialHash&, const PolynomialHash&) = default;

 private:
  std::vector<std::uint64_t> coefficients_;
  std::uint64_t range_;
};

/// Test hooks that replace hashed values with fixed ones.
struct HashOverrides {
  /// Color in 1..C for every vertex.
  std::function<std::uint32_t(VertexId)> color;
  /// Value of X_j(v) for non-distinguished half-edges j; distinguished
  /// half-edges are still derived from the product constraint.
  std::function<GroupElement(int half_edge, VertexId)> element;

  bool empty() const noexcept { return !color && !element; }
};

/// The per-half-edge functions X_1..X_2k and the vertex coloring of one
/// sketch instance.
///
/// Non-distinguished half-edges get independent 4k-wise independent hashes
/// into the group. The distinguished half-edge at b is the product of the
/// inverses of the others at b, so the product over incident(b) is always the
/// identity. Immutable once built; safe to evaluate concurrently.
class HalfEdgeHashes {
 public:
  HalfEdgeHashes(const Pattern& pattern, const GroupSpec& group, std::uint32_t colors,
                 std::uint64_t seed, HashOverrides overrides = {});

  const GroupSpec& group() const noexcept { return group_; }
  std::uint32_t colors() const noexcept { return colors_; }
  std::uint64_t seed() const noexcept { return seed_; }
  int half_edge_count() const noexcept { return static_cast<int>(owner_.size()); }
  bool has_overrides() const noexcept { return !overrides_.empty(); }

  /// Hasher for non-distinguished half-edge j; nullptr for distinguished ones.
  const PolynomialHash* element_hasher(int half_edge) const;
  const PolynomialHash& color_hasher() const noexcept { return color_hasher_; }
  std::size_t element_hasher_count() const noexcept;

  GroupElement x(int half_edge, VertexId v) const;

  /// Color in 1..C.
  std::uint32_t color(VertexId v) const { return color_index(v) + 1; }
  /// Color in 0..C-1.
  std::uint32_t color_index(VertexId v) const;

  /// Writes X_1(v)..X_2k(v) into `out` (size 2k) and returns color_index(v).
  std::uint32_t signature(VertexId v, std::span<GroupElement> out) const;

 private:
  GroupElement raw_x(int half_edge, VertexId v) const;

  GroupSpec group_;
  std::uint32_t colors_;
  std::uint64_t seed_;
  // Per half-edge (0-based): owning vertex's incident half-edges, or empty
  // for non-distinguished ones.
  std::vector<std::vector<int>> distinguished_others_;
  std::vector<int> owner_;
  std::vector<std::optional<PolynomialHash>> element_hashers_;
  PolynomialHash color_hasher_;
  HashOverrides overrides_;
};

inline HalfEdgeHashes build_hashes(const Pattern& pattern, const GroupSpec& group,
                                   std::uint32_t colors, std::uint64_t master_seed,
                                   HashOverrides overrides = {}) {
  return HalfEdgeHashes(pattern, group, colors, master_seed, std::move(overrides));
}

inline GroupElement eval_x(const HalfEdgeHashes& h, int half_edge, VertexId v) {
  return h.x(half_edge, v);
}

inline std::uint32_t eval_color(const HalfEdgeHashes& h, VertexId v) { return h.color(v); }

}  // namespace motifsketch
