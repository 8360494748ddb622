#include "radoloc/natural.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace radoloc {

namespace {

using boost::multiprecision::cpp_int;

std::size_t mix(std::size_t h, std::size_t v) noexcept {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t small_hash(std::uint64_t v) noexcept {
  v ^= v >> 33;
  v *= 0xff51afd7ed558ccdULL;
  v ^= v >> 33;
  v *= 0xc4ceb9fe1a85ec53ULL;
  v ^= v >> 33;
  return static_cast<std::size_t>(v);
}

const Natural& sixty_four() {
  static const Natural value(64);
  return value;
}

}  // namespace

Natural Natural::from_positions(std::vector<Natural> positions) {
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
  if (positions.empty()) return Natural();
  if (positions.back() < sixty_four()) {
    std::uint64_t v = 0;
    for (const auto& p : positions) v |= std::uint64_t{1} << p.small_;
    return Natural(v);
  }
  auto big = std::make_shared<Big>();
  std::size_t h = 0x5bd1e995;
  for (const auto& p : positions) h = mix(h, p.hash());
  big->hash = h;
  big->positions = std::move(positions);
  Natural out;
  out.big_ = std::move(big);
  return out;
}

Natural Natural::pow2(const Natural& exponent) {
  if (exponent < sixty_four()) return Natural(std::uint64_t{1} << exponent.small_);
  return from_positions({exponent});
}

Natural Natural::parse(std::string_view decimal) {
  if (decimal.empty()) throw std::invalid_argument("empty natural literal");
  for (char c : decimal) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("not a natural number: '" + std::string(decimal) + "'");
    }
  }
  const cpp_int value{std::string(decimal)};
  if (value <= std::numeric_limits<std::uint64_t>::max()) {
    return Natural(static_cast<std::uint64_t>(value));
  }
  std::vector<Natural> positions;
  const unsigned top = boost::multiprecision::msb(value);
  for (unsigned i = 0; i <= top; ++i) {
    if (boost::multiprecision::bit_test(value, i)) positions.emplace_back(i);
  }
  return from_positions(std::move(positions));
}

std::uint64_t Natural::to_u64() const {
  if (big_) throw std::overflow_error("natural does not fit in 64 bits");
  return small_;
}

bool Natural::bit(const Natural& position) const {
  if (!big_) {
    return !position.big_ && position.small_ < 64 && ((small_ >> position.small_) & 1U) != 0;
  }
  return std::binary_search(big_->positions.begin(), big_->positions.end(), position);
}

std::vector<Natural> Natural::positions() const {
  if (big_) return big_->positions;
  std::vector<Natural> out;
  std::uint64_t v = small_;
  while (v != 0) {
    out.emplace_back(static_cast<std::uint64_t>(std::countr_zero(v)));
    v &= v - 1;
  }
  return out;
}

std::size_t Natural::popcount() const noexcept {
  return big_ ? big_->positions.size() : static_cast<std::size_t>(std::popcount(small_));
}

Natural Natural::top_position() const {
  if (big_) return big_->positions.back();
  if (small_ == 0) throw std::domain_error("zero has no top position");
  return Natural(static_cast<std::uint64_t>(63 - std::countl_zero(small_)));
}

Natural Natural::successor() const {
  if (!big_) {
    if (small_ != std::numeric_limits<std::uint64_t>::max()) return Natural(small_ + 1);
    return pow2(sixty_four());
  }
  const auto& ps = big_->positions;
  std::size_t carry = 0;
  while (carry < ps.size() && ps[carry] == Natural(carry)) ++carry;
  std::vector<Natural> next;
  next.reserve(ps.size() - carry + 1);
  next.emplace_back(carry);
  next.insert(next.end(), ps.begin() + static_cast<std::ptrdiff_t>(carry), ps.end());
  return from_positions(std::move(next));
}

Natural Natural::doubled() const {
  if (!big_ && (small_ >> 63) == 0) return Natural(small_ << 1);
  std::vector<Natural> next;
  for (const auto& p : positions()) next.push_back(p.successor());
  return from_positions(std::move(next));
}

bool Natural::is_explicit(std::uint64_t max_bits) const {
  if (!big_) return true;
  const Natural& top = big_->positions.back();
  return top.fits_u64() && top.small_ < max_bits;
}

std::string Natural::to_decimal() const {
  if (!big_) return std::to_string(small_);
  if (!is_explicit()) throw std::length_error("natural too large for decimal output");
  cpp_int value = 0;
  for (const auto& p : big_->positions) boost::multiprecision::bit_set(value, static_cast<unsigned>(p.small_));
  return value.str();
}

std::string Natural::to_string() const {
  if (is_explicit()) return to_decimal();
  std::string out;
  for (auto it = big_->positions.rbegin(); it != big_->positions.rend(); ++it) {
    if (!out.empty()) out += '+';
    out += "2^(" + it->to_string() + ")";
  }
  return out;
}

std::size_t Natural::hash() const noexcept { return big_ ? big_->hash : small_hash(small_); }

bool operator==(const Natural& a, const Natural& b) noexcept {
  if (!a.big_ || !b.big_) return !a.big_ && !b.big_ && a.small_ == b.small_;
  if (a.big_ == b.big_) return true;
  return a.big_->hash == b.big_->hash && a.big_->positions == b.big_->positions;
}

std::strong_ordering operator<=>(const Natural& a, const Natural& b) noexcept {
  if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
  if (!a.big_) return std::strong_ordering::less;
  if (!b.big_) return std::strong_ordering::greater;
  if (a.big_ == b.big_) return std::strong_ordering::equal;
  // The first difference scanning down from the top decides.
  const auto& pa = a.big_->positions;
  const auto& pb = b.big_->positions;
  auto ia = pa.rbegin();
  auto ib = pb.rbegin();
  for (; ia != pa.rend() && ib != pb.rend(); ++ia, ++ib) {
    if (auto c = *ia <=> *ib; c != 0) return c;
  }
  if (ia == pa.rend() && ib == pb.rend()) return std::strong_ordering::equal;
  return ia == pa.rend() ? std::strong_ordering::less : std::strong_ordering::greater;
}

VertexSet make_set(std::vector<Vertex> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

VertexSet make_set(std::initializer_list<std::uint64_t> members) {
  std::vector<Vertex> out;
  for (auto m : members) out.emplace_back(m);
  return make_set(std::move(out));
}

bool set_contains(const VertexSet& s, const Vertex& v) {
  return std::binary_search(s.begin(), s.end(), v);
}

bool set_includes(const VertexSet& super, const VertexSet& sub) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_insert(VertexSet s, const Vertex& v) {
  auto it = std::lower_bound(s.begin(), s.end(), v);
  if (it == s.end() || *it != v) s.insert(it, v);
  return s;
}

std::string set_to_string(const VertexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += s[i].to_string();
  }
  return out + "}";
}

}  // namespace radoloc
