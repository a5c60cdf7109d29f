#include "motifsketch/algebra.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "motifsketch/error.hpp"

namespace motifsketch {

GroupSpec GroupSpec::roots_of_unity(std::uint32_t r) {
  if (r < 2) throw ConfigError("roots-of-unity group needs r >= 2");
  return {GroupKind::RootsOfUnity, r};
}

GroupSpec GroupSpec::signed_powers(std::uint32_t d) {
  if (d < 2) throw ConfigError("signed-powers group needs d >= 2");
  return {GroupKind::SignedPowers, d};
}

GroupSpec GroupSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("group must be `roots:<r>` or `matrix:<d>`, got '" + std::string(text) + "'");
  }
  const auto kind = text.substr(0, colon);
  const auto number = text.substr(colon + 1);
  std::uint32_t n = 0;
  const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), n);
  if (ec != std::errc{} || ptr != number.data() + number.size()) {
    throw ConfigError("invalid group parameter '" + std::string(number) + "'");
  }
  if (kind == "roots") return roots_of_unity(n);
  if (kind == "matrix") return signed_powers(n);
  throw ConfigError("unknown group kind '" + std::string(kind) + "'");
}

std::string GroupSpec::to_string() const {
  return (kind_ == GroupKind::RootsOfUnity ? "roots:" : "matrix:") + std::to_string(modulus_);
}

std::vector<GroupElement> all_elements(const GroupSpec& spec) {
  std::vector<GroupElement> out;
  out.reserve(spec.size());
  for (std::uint64_t i = 0; i < spec.size(); ++i) out.push_back(element_from_index(i, spec));
  return out;
}

std::complex<double> unit_root(std::uint64_t j, std::uint32_t n) {
  j %= n;
  if ((4 * j) % n == 0) {
    switch ((4 * j) / n) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
}

bool Accumulator::is_zero() const noexcept {
  for (const auto& z : entries_) {
    if (z != std::complex<double>{}) return false;
  }
  return true;
}

Accumulator& Accumulator::operator+=(const Accumulator& other) {
  if (other.dimension() != dimension()) throw std::invalid_argument("accumulator dimension mismatch");
  for (std::size_t l = 0; l < entries_.size(); ++l) entries_[l] += other.entries_[l];
  return *this;
}

Accumulator& Accumulator::operator-=(const Accumulator& other) {
  if (other.dimension() != dimension()) throw std::invalid_argument("accumulator dimension mismatch");
  for (std::size_t l = 0; l < entries_.size(); ++l) entries_[l] -= other.entries_[l];
  return *this;
}

Accumulator& Accumulator::operator*=(const Accumulator& other) {
  if (other.dimension() != dimension()) throw std::invalid_argument("accumulator dimension mismatch");
  for (std::size_t l = 0; l < entries_.size(); ++l) entries_[l] *= other.entries_[l];
  return *this;
}

Accumulator embed(GroupElement a, const GroupSpec& spec) {
  Accumulator out(spec.dimension());
  const double sign = static_cast<double>(a.sign);
  if (spec.kind() == GroupKind::RootsOfUnity) {
    out[0] = sign * unit_root(a.exponent, spec.modulus());
    return out;
  }
  for (std::uint32_t l = 0; l < spec.dimension(); ++l) {
    out[l] = sign * unit_root(static_cast<std::uint64_t>(a.exponent) * l, spec.modulus());
  }
  return out;
}

std::complex<double> trace(const Accumulator& a) noexcept {
  std::complex<double> sum{};
  for (const auto& z : a.entries()) sum += z;
  return sum;
}

RootTable::RootTable(const GroupSpec& spec) : dimension_(spec.dimension()) {
  powers_.reserve(spec.modulus());
  for (std::uint32_t j = 0; j < spec.modulus(); ++j) powers_.push_back(unit_root(j, spec.modulus()));
}

}  // namespace motifsketch
