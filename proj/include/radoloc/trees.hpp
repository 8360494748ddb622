#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "radoloc/natural.hpp"
#include "radoloc/report.hpp"

namespace radoloc::trees {

// A finite 0/1 sequence. Ordered by length, then lexicographically, so a
// std::map<BinSeq, ...> lists ^{<ω}2 level by level.
class BinSeq {
 public:
  BinSeq() = default;
  explicit BinSeq(std::vector<std::uint8_t> bits);
  // "0110"; the empty string is ε. Throws std::invalid_argument on other chars.
  static BinSeq parse(std::string_view text);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  std::uint8_t back() const { return bits_.back(); }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  BinSeq prefix(std::size_t length) const;
  BinSeq parent() const { return prefix(size() - 1); }
  BinSeq child(std::uint8_t bit) const;
  bool is_prefix_of(const BinSeq& other) const;

  std::string to_string() const;  // "ε" for the empty sequence
  std::string key() const;        // "" for the empty sequence

  friend bool operator==(const BinSeq&, const BinSeq&) = default;
  friend std::strong_ordering operator<=>(const BinSeq& a, const BinSeq& b);

 private:
  std::vector<std::uint8_t> bits_;
};

using NatSeq = std::vector<Natural>;

bool is_prefix(const NatSeq& a, const NatSeq& b);
std::string to_string(const NatSeq& s);  // "⟨3,1⟩"

// A finite subtree of ^{<ω}ω. Nodes are kept in a sorted set.
class FiniteTree {
 public:
  FiniteTree() = default;
  explicit FiniteTree(std::set<NatSeq> nodes) : nodes_(std::move(nodes)) {}

  bool contains(const NatSeq& s) const { return nodes_.count(s) > 0; }
  void insert(NatSeq s) { nodes_.insert(std::move(s)); }
  bool erase(const NatSeq& s) { return nodes_.erase(s) > 0; }
  std::size_t size() const { return nodes_.size(); }
  const std::set<NatSeq>& nodes() const { return nodes_; }
  std::vector<NatSeq> successors(const NatSeq& s) const;

  friend bool operator==(const FiniteTree&, const FiniteTree&) = default;

 private:
  std::set<NatSeq> nodes_;
};

// ^n 2 in lexicographic order; entry i is φ^n_i.
std::vector<BinSeq> lex_level(std::size_t n);

// k_0 = 0, k_{n+1} = k_n + 2^{n+1} - 1. Throws std::overflow_error past 64 bits.
std::uint64_t k_sequence(std::size_t n);

// ψ_n, the member of Δ of length n (n ≥ 1).
BinSeq delta_element(std::uint64_t n);

// Members of Δ listed straight from the definition φ^{m+1}_i ⌢ 0^{k_m+i},
// for every m whose members are no longer than `max_length`.
std::vector<BinSeq> delta_by_definition(std::size_t max_length);

// Least r in [1, max_r] with s ⊆ ψ_r.
std::optional<std::uint64_t> least_delta_extension(const BinSeq& s, std::uint64_t max_r);

Report delta_density_check(std::size_t depth);

FiniteTree upward_closure(const std::vector<NatSeq>& image);
bool is_prefix_closed(const FiniteTree& t);
bool check_binary(const FiniteTree& t);

// Sorted node list, each node a list of decimal strings.
nlohmann::json tree_to_json(const FiniteTree& t);
FiniteTree tree_from_json(const nlohmann::json& j);
std::string to_dot(const FiniteTree& t);

}  // namespace radoloc::trees
