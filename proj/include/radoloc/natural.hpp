#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace radoloc {

// Arbitrary-precision natural number in hereditary sparse binary form.
//
// A value below 2^64 is stored inline. Larger values are stored as the
// ascending list of positions of their 1-bits, and each position is itself a
// Natural. This keeps tower-sized numbers such as 2^(2^2059) representable,
// which the labeling of the random graph produces after only a few levels.
//
// Canonical form: a value is stored inline iff it fits in 64 bits, so
// structural equality is numeric equality.
class Natural {
 public:
  Natural() noexcept = default;
  explicit Natural(std::uint64_t value) noexcept : small_(value) {}

  // Sum of 2^p over the distinct members of `positions` (duplicates ignored).
  static Natural from_positions(std::vector<Natural> positions);
  static Natural pow2(const Natural& exponent);
  // Throws std::invalid_argument on anything but a non-empty run of digits.
  static Natural parse(std::string_view decimal);

  bool is_zero() const noexcept { return !big_ && small_ == 0; }
  bool fits_u64() const noexcept { return !big_; }
  // Throws std::overflow_error if the value does not fit.
  std::uint64_t to_u64() const;

  bool bit(const Natural& position) const;
  // Positions of the 1-bits, ascending.
  std::vector<Natural> positions() const;
  std::size_t popcount() const noexcept;
  // Position of the highest 1-bit. Throws std::domain_error on zero.
  Natural top_position() const;

  Natural successor() const;
  Natural doubled() const;

  // True when the binary length is at most `max_bits`, i.e. the value can be
  // written out digit by digit.
  bool is_explicit(std::uint64_t max_bits = kExplicitBits) const;
  // Decimal digits. Throws std::length_error when !is_explicit().
  std::string to_decimal() const;
  // Decimal when explicit, otherwise 2^(a)+2^(b)+... with the largest term first.
  std::string to_string() const;

  std::size_t hash() const noexcept;

  friend bool operator==(const Natural& a, const Natural& b) noexcept;
  friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) noexcept;

  static constexpr std::uint64_t kExplicitBits = 1u << 16;

 private:
  struct Big {
    std::vector<Natural> positions;  // ascending, top position >= 64
    std::size_t hash = 0;
  };

  std::uint64_t small_ = 0;
  std::shared_ptr<const Big> big_;
};

using Vertex = Natural;  // the vertices of the random graph are the naturals
using VertexSet = std::vector<Vertex>;  // sorted ascending, no duplicates

VertexSet make_set(std::vector<Vertex> members);
VertexSet make_set(std::initializer_list<std::uint64_t> members);
bool set_contains(const VertexSet& s, const Vertex& v);
bool set_includes(const VertexSet& super, const VertexSet& sub);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
VertexSet set_insert(VertexSet s, const Vertex& v);
// "{0,2,13}"; the empty set prints as "{}".
std::string set_to_string(const VertexSet& s);

}  // namespace radoloc

template <>
struct std::hash<radoloc::Natural> {
  std::size_t operator()(const radoloc::Natural& n) const noexcept { return n.hash(); }
};
