#include "motifsketch/hashing.hpp"

#include <stdexcept>
#include <string>

#include "motifsketch/error.hpp"

namespace motifsketch {

PolynomialHash::PolynomialHash(std::vector<std::uint64_t> coefficients, std::uint64_t range)
    : coefficients_(std::move(coefficients)), range_(range) {
  if (coefficients_.empty()) throw std::invalid_argument("polynomial hash needs a coefficient");
  if (range_ == 0) throw std::invalid_argument("polynomial hash range must be positive");
  for (auto& c : coefficients_) c = mersenne_reduce(c);
}

PolynomialHash PolynomialHash::from_seed(std::uint64_t seed, std::uint64_t index,
                                         std::size_t independence, std::uint64_t range) {
  const std::uint64_t hasher_seed = derive_seed(seed, index);
  std::vector<std::uint64_t> coefficients(independence);
  for (std::size_t j = 0; j < independence; ++j) {
    coefficients[j] = derive_seed(hasher_seed, j) % kMersenne61;
  }
  return PolynomialHash(std::move(coefficients), range);
}

HalfEdgeHashes::HalfEdgeHashes(const Pattern& pattern, const GroupSpec& group,
                               std::uint32_t colors, std::uint64_t seed, HashOverrides overrides)
    : group_(group),
      colors_(colors),
      seed_(seed),
      color_hasher_(PolynomialHash::from_seed(
          seed, 0, 4 * static_cast<std::size_t>(pattern.edge_count()), colors == 0 ? 1 : colors)),
      overrides_(std::move(overrides)) {
  if (colors < static_cast<std::uint32_t>(pattern.vertex_count())) {
    throw ConfigError("need at least as many colors as pattern vertices (C=" +
                      std::to_string(colors) + " < t=" + std::to_string(pattern.vertex_count()) +
                      ")");
  }
  const int half_edges = pattern.half_edge_count();
  const std::size_t independence = 4 * static_cast<std::size_t>(pattern.edge_count());
  distinguished_others_.resize(static_cast<std::size_t>(half_edges));
  owner_.resize(static_cast<std::size_t>(half_edges));
  element_hashers_.resize(static_cast<std::size_t>(half_edges));
  for (int j = 1; j <= half_edges; ++j) {
    const int b = pattern.half_edge_vertex(j);
    owner_[j - 1] = b;
    if (pattern.is_distinguished(j)) {
      for (int other : pattern.incident(b)) {
        if (other != j) distinguished_others_[j - 1].push_back(other);
      }
    } else {
      element_hashers_[j - 1] =
          PolynomialHash::from_seed(seed, static_cast<std::uint64_t>(j), independence, group.size());
    }
  }
}

const PolynomialHash* HalfEdgeHashes::element_hasher(int half_edge) const {
  const auto& h = element_hashers_.at(static_cast<std::size_t>(half_edge - 1));
  return h ? &*h : nullptr;
}

std::size_t HalfEdgeHashes::element_hasher_count() const noexcept {
  std::size_t n = 0;
  for (const auto& h : element_hashers_) n += h.has_value();
  return n;
}

GroupElement HalfEdgeHashes::raw_x(int half_edge, VertexId v) const {
  if (overrides_.element) return overrides_.element(half_edge, v);
  return element_from_index((*element_hashers_[half_edge - 1])(v), group_);
}

GroupElement HalfEdgeHashes::x(int half_edge, VertexId v) const {
  if (half_edge < 1 || half_edge > half_edge_count()) {
    throw std::out_of_range("half-edge index " + std::to_string(half_edge) + " out of range");
  }
  if (element_hashers_[half_edge - 1]) return raw_x(half_edge, v);
  // Distinguished: inverse of the product of the others; identity when alone.
  GroupElement product = identity_element();
  for (int other : distinguished_others_[half_edge - 1]) {
    product = multiply(product, raw_x(other, v), group_);
  }
  return inverse(product, group_);
}

std::uint32_t HalfEdgeHashes::color_index(VertexId v) const {
  if (overrides_.color) {
    const std::uint32_t c = overrides_.color(v);
    if (c < 1 || c > colors_) throw std::out_of_range("injected color outside 1..C");
    return c - 1;
  }
  return static_cast<std::uint32_t>(color_hasher_(v));
}

std::uint32_t HalfEdgeHashes::signature(VertexId v, std::span<GroupElement> out) const {
  const int half_edges = half_edge_count();
  for (int j = 1; j <= half_edges; ++j) {
    if (element_hashers_[j - 1]) out[j - 1] = raw_x(j, v);
  }
  for (int j = 1; j <= half_edges; ++j) {
    if (element_hashers_[j - 1]) continue;
    GroupElement product = identity_element();
    for (int other : distinguished_others_[j - 1]) product = multiply(product, out[other - 1], group_);
    out[j - 1] = inverse(product, group_);
  }
  return color_index(v);
}

}  // namespace motifsketch
