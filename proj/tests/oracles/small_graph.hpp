#pragma once

// Word-sized reference model of the BIT graph, written without the library.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

namespace oracle {

inline bool adjacent(std::uint64_t u, std::uint64_t v) {
  if (u == v) return false;
  if (u > v) std::swap(u, v);
  return u < 64 && ((v >> u) & 1U);
}

inline bool in_cone(std::uint64_t v, const std::vector<std::uint64_t>& H, const std::vector<std::uint64_t>& K) {
  for (auto h : H) {
    if (h == v) return false;
    bool want = false;
    for (auto k : K) want = want || k == h;
    if (adjacent(v, h) != want) return false;
  }
  return true;
}

inline std::optional<std::uint64_t> least_member(const std::vector<std::uint64_t>& H,
                                                 const std::vector<std::uint64_t>& K, std::uint64_t bound) {
  for (std::uint64_t v = 0; v < bound; ++v) {
    if (in_cone(v, H, K)) return v;
  }
  return std::nullopt;
}

// Least-index labeling of the identity copy, levels 0..depth, by direct search.
struct SmallLabeling {
  std::vector<std::vector<std::uint64_t>> levels;       // L_n in mask order
  std::vector<std::vector<std::uint64_t>> prefixes;     // ∪_{i<n} L_i, sorted
};

inline SmallLabeling least_index_labeling(std::size_t depth, std::uint64_t bound = 1u << 13) {
  SmallLabeling out;
  std::vector<std::uint64_t> U;
  for (std::size_t n = 0; n <= depth; ++n) {
    out.prefixes.push_back(U);
    std::vector<std::uint64_t> level;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << U.size()); ++mask) {
      std::vector<std::uint64_t> K;
      for (std::size_t i = 0; i < U.size(); ++i) {
        if ((mask >> i) & 1U) K.push_back(U[i]);
      }
      level.push_back(*least_member(U, K, bound));
    }
    out.levels.push_back(level);
    U.insert(U.end(), level.begin(), level.end());
    std::sort(U.begin(), U.end());
  }
  return out;
}

}  // namespace oracle
