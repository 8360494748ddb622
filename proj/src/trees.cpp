#include "radoloc/trees.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "radoloc/rado.hpp"

namespace radoloc::trees {

BinSeq::BinSeq(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw std::invalid_argument("binary sequence entries must be 0 or 1");
  }
}

BinSeq BinSeq::parse(std::string_view text) {
  if (text == "ε") return {};
  std::vector<std::uint8_t> bits;
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("not a binary sequence: '" + std::string(text) + "'");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return BinSeq(std::move(bits));
}

BinSeq BinSeq::prefix(std::size_t length) const {
  if (length > size()) throw std::out_of_range("prefix longer than sequence");
  return BinSeq(std::vector<std::uint8_t>(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(length)));
}

BinSeq BinSeq::child(std::uint8_t bit) const {
  auto bits = bits_;
  bits.push_back(bit);
  return BinSeq(std::move(bits));
}

bool BinSeq::is_prefix_of(const BinSeq& other) const {
  return size() <= other.size() && std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
}

std::string BinSeq::to_string() const { return empty() ? "ε" : key(); }

std::string BinSeq::key() const {
  std::string out;
  for (auto b : bits_) out.push_back(static_cast<char>('0' + b));
  return out;
}

std::strong_ordering operator<=>(const BinSeq& a, const BinSeq& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  return a.bits_ <=> b.bits_;
}

bool is_prefix(const NatSeq& a, const NatSeq& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

std::string to_string(const NatSeq& s) {
  std::string out = "⟨";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + s[i].to_string();
  return out + "⟩";
}

std::vector<NatSeq> FiniteTree::successors(const NatSeq& s) const {
  std::vector<NatSeq> out;
  for (auto it = nodes_.upper_bound(s); it != nodes_.end() && is_prefix(s, *it); ++it) {
    if (it->size() == s.size() + 1) out.push_back(*it);
  }
  return out;
}

std::vector<BinSeq> lex_level(std::size_t n) {
  if (n >= 63) throw std::length_error("level too large to list");
  std::vector<BinSeq> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
    std::vector<std::uint8_t> bits(n);
    for (std::size_t j = 0; j < n; ++j) bits[j] = static_cast<std::uint8_t>((i >> (n - 1 - j)) & 1U);
    out.emplace_back(std::move(bits));
  }
  return out;
}

std::uint64_t k_sequence(std::size_t n) {
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i + 1 >= 64) throw std::overflow_error("k_n exceeds 64 bits");
    const std::uint64_t step = (std::uint64_t{1} << (i + 1)) - 1;
    if (k > ~std::uint64_t{0} - step) throw std::overflow_error("k_n exceeds 64 bits");
    k += step;
  }
  return k;
}

BinSeq delta_element(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Δ has no member of length 0");
  // Members built from ^{m+1}2 have lengths (m+1)+k_m .. (m+1)+k_m+2^{m+1}-1.
  for (std::size_t m = 0;; ++m) {
    const std::uint64_t first = (m + 1) + k_sequence(m);
    const std::uint64_t count = std::uint64_t{1} << (m + 1);
    if (n < first) throw std::logic_error("Δ lengths are not contiguous");
    if (n - first < count) {
      const std::uint64_t i = n - first;
      std::vector<std::uint8_t> bits(n, 0);
      for (std::size_t j = 0; j <= m; ++j) bits[j] = static_cast<std::uint8_t>((i >> (m - j)) & 1U);
      return BinSeq(std::move(bits));
    }
  }
}

std::vector<BinSeq> delta_by_definition(std::size_t max_length) {
  std::vector<BinSeq> out;
  for (std::size_t m = 0; m + 1 + k_sequence(m) <= max_length; ++m) {
    const auto phis = lex_level(m + 1);
    for (std::size_t i = 0; i < phis.size(); ++i) {
      auto bits = phis[i].bits();
      bits.resize(bits.size() + k_sequence(m) + i, 0);
      if (bits.size() <= max_length) out.emplace_back(std::move(bits));
    }
  }
  return out;
}

std::optional<std::uint64_t> least_delta_extension(const BinSeq& s, std::uint64_t max_r) {
  for (std::uint64_t r = std::max<std::uint64_t>(1, s.size()); r <= max_r; ++r) {
    if (s.is_prefix_of(delta_element(r))) return r;
  }
  return std::nullopt;
}

Report delta_density_check(std::size_t depth) {
  Report report{"Δ density to depth " + std::to_string(depth)};
  if (depth == 0) {
    report.note("vacuous at depth 0");
    return report;
  }
  const std::uint64_t bound = depth + k_sequence(depth) + (std::uint64_t{1} << (depth + 1));
  for (std::size_t len = 0; len <= depth; ++len) {
    for (const auto& s : lex_level(len)) {
      const auto r = least_delta_extension(s, bound);
      if (!r) {
        report.fail("no ψ_n with n ≤ " + std::to_string(bound) + " extends " + s.to_string());
      } else {
        report.note(s.to_string() + " ⊆ ψ_" + std::to_string(*r) + " = " + delta_element(*r).to_string());
      }
    }
  }
  std::vector<int> per_length(depth + 1, 0);
  for (const auto& psi : delta_by_definition(depth)) {
    ++per_length[psi.size()];
    if (psi != delta_element(psi.size())) {
      report.fail("member " + psi.to_string() + " of Δ differs from ψ_" + std::to_string(psi.size()));
    }
  }
  for (std::size_t len = 1; len <= depth; ++len) {
    if (per_length[len] != 1) {
      report.fail("Δ has " + std::to_string(per_length[len]) + " members of length " + std::to_string(len));
    }
  }
  return report;
}

FiniteTree upward_closure(const std::vector<NatSeq>& image) {
  std::set<NatSeq> nodes;
  for (const auto& s : image) {
    for (std::size_t len = 0; len <= s.size(); ++len) {
      nodes.emplace(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(len));
    }
  }
  return FiniteTree(std::move(nodes));
}

bool is_prefix_closed(const FiniteTree& t) {
  for (const auto& s : t.nodes()) {
    if (!s.empty() && !t.contains(NatSeq(s.begin(), s.end() - 1))) return false;
  }
  return true;
}

bool check_binary(const FiniteTree& t) {
  for (const auto& s : t.nodes()) {
    if (t.successors(s).size() > 2) return false;
  }
  return true;
}

nlohmann::json tree_to_json(const FiniteTree& t) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : t.nodes()) {
    nlohmann::json node = nlohmann::json::array();
    for (const auto& x : s) node.push_back(rado::natural_to_json(x));
    out.push_back(std::move(node));
  }
  return out;
}

FiniteTree tree_from_json(const nlohmann::json& j) {
  FiniteTree t;
  for (const auto& node : j) {
    NatSeq s;
    for (const auto& x : node) s.push_back(rado::natural_from_json(x));
    t.insert(std::move(s));
  }
  return t;
}

std::string to_dot(const FiniteTree& t) {
  std::string out = "digraph T {\n  node [shape=box];\n";
  std::map<NatSeq, std::size_t> ids;
  for (const auto& s : t.nodes()) {
    const std::size_t id = ids.size();
    ids.emplace(s, id);
    std::string label = s.empty() ? "ε" : s.back().to_string();
    if (label.size() > 24) label = label.substr(0, 21) + "...";
    out += "  n" + std::to_string(id) + " [label=\"" + label + "\"];\n";
    if (!s.empty()) {
      auto parent = ids.find(NatSeq(s.begin(), s.end() - 1));
      if (parent != ids.end()) {
        out += "  n" + std::to_string(parent->second) + " -> n" + std::to_string(id) + ";\n";
      }
    }
  }
  return out + "}\n";
}

}  // namespace radoloc::trees
