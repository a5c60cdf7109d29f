#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace motifsketch {

enum class GroupKind {
  RootsOfUnity,  // r-th roots of unity, 1x1 matrices
  SignedPowers,  // {+-I, +-M, ..., +-M^(d-1)}, M = diag(1, w, ..., w^(d-1)), w = e^(2 pi i/d)
};

/// A finite group of diagonal matrices whose elements average to zero.
class GroupSpec {
 public:
  static GroupSpec roots_of_unity(std::uint32_t r);
  static GroupSpec signed_powers(std::uint32_t d);

  /// Parses `roots:<r>` or `matrix:<d>`.
  static GroupSpec parse(std::string_view text);

  GroupKind kind() const noexcept { return kind_; }

  /// r for RootsOfUnity, d for SignedPowers: the modulus of exponents.
  std::uint32_t modulus() const noexcept { return modulus_; }

  /// Number of group elements: r, or 2d.
  std::uint32_t size() const noexcept {
    return kind_ == GroupKind::RootsOfUnity ? modulus_ : 2 * modulus_;
  }

  /// Matrix dimension: 1, or d.
  std::uint32_t dimension() const noexcept {
    return kind_ == GroupKind::RootsOfUnity ? 1 : modulus_;
  }

  std::string to_string() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  GroupSpec(GroupKind kind, std::uint32_t modulus) : kind_(kind), modulus_(modulus) {}

  GroupKind kind_;
  std::uint32_t modulus_;
};

/// Compact group element: w^exponent (RootsOfUnity) or sign * M^exponent.
/// RootsOfUnity elements always carry sign +1.
struct GroupElement {
  std::uint32_t exponent = 0;
  std::int32_t sign = 1;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

constexpr GroupElement identity_element() noexcept { return {}; }

inline GroupElement multiply(GroupElement a, GroupElement b, const GroupSpec& spec) noexcept {
  std::uint32_t e = a.exponent + b.exponent;
  if (e >= spec.modulus()) e -= spec.modulus();
  return {e, a.sign * b.sign};
}

inline GroupElement inverse(GroupElement a, const GroupSpec& spec) noexcept {
  return {a.exponent == 0 ? 0 : spec.modulus() - a.exponent, a.sign};
}

/// Maps an index in [0, |G|) onto the group; uniform indices give uniform elements.
inline GroupElement element_from_index(std::uint64_t index, const GroupSpec& spec) noexcept {
  const auto n = static_cast<std::uint64_t>(spec.modulus());
  if (index < n) return {static_cast<std::uint32_t>(index), 1};
  return {static_cast<std::uint32_t>(index - n), -1};
}

/// Every element of the group, in element_from_index order.
std::vector<GroupElement> all_elements(const GroupSpec& spec);

/// e^(2 pi i j / n). Multiples of a quarter turn are returned exactly.
std::complex<double> unit_root(std::uint64_t j, std::uint32_t n);

/// Diagonal of a matrix in the group algebra: a sum of group elements.
class Accumulator {
 public:
  Accumulator() = default;
  explicit Accumulator(std::size_t dimension) : entries_(dimension) {}
  explicit Accumulator(std::vector<std::complex<double>> entries) : entries_(std::move(entries)) {}

  std::size_t dimension() const noexcept { return entries_.size(); }
  std::span<const std::complex<double>> entries() const noexcept { return entries_; }
  std::span<std::complex<double>> entries() noexcept { return entries_; }
  std::complex<double> operator[](std::size_t l) const { return entries_[l]; }
  std::complex<double>& operator[](std::size_t l) { return entries_[l]; }

  bool is_zero() const noexcept;

  Accumulator& operator+=(const Accumulator& other);
  Accumulator& operator-=(const Accumulator& other);
  /// Entrywise product, i.e. the matrix product of diagonal matrices.
  Accumulator& operator*=(const Accumulator& other);

  friend Accumulator operator+(Accumulator a, const Accumulator& b) { return a += b; }
  friend Accumulator operator-(Accumulator a, const Accumulator& b) { return a -= b; }
  friend Accumulator operator*(Accumulator a, const Accumulator& b) { return a *= b; }
  friend bool operator==(const Accumulator&, const Accumulator&) = default;

 private:
  std::vector<std::complex<double>> entries_;
};

inline Accumulator accumulator_add(const Accumulator& a, const Accumulator& b) { return a + b; }
inline Accumulator accumulator_sub(const Accumulator& a, const Accumulator& b) { return a - b; }
inline Accumulator accumulator_mul(const Accumulator& a, const Accumulator& b) { return a * b; }

Accumulator embed(GroupElement a, const GroupSpec& spec);

std::complex<double> trace(const Accumulator& a) noexcept;

/// Precomputed powers of the primitive root for one GroupSpec, so that
/// embedding an element costs table lookups only.
class RootTable {
 public:
  explicit RootTable(const GroupSpec& spec);

  /// Diagonal entry l of embed(a).
  std::complex<double> entry(GroupElement a, std::uint32_t l) const noexcept {
    if (dimension_ == 1) return static_cast<double>(a.sign) * powers_[a.exponent];
    const auto idx = (static_cast<std::uint64_t>(a.exponent) * l) % powers_.size();
    return static_cast<double>(a.sign) * powers_[idx];
  }

  /// w^j for j in [0, modulus).
  std::complex<double> power(std::uint64_t j) const noexcept { return powers_[j % powers_.size()]; }

  std::uint32_t dimension() const noexcept { return dimension_; }

 private:
  std::vector<std::complex<double>> powers_;
  std::uint32_t dimension_;
};

}  // namespace motifsketch
