#include "radoloc/kernels.hpp"

#include <omp.h>

#include <cstdint>
#include <stdexcept>

#include "radoloc/rado.hpp"

namespace radoloc::kernels {

namespace {

std::uint64_t subset_count(const VertexSet& prefix) {
  if (prefix.size() >= 32) throw std::length_error("too many subsets to enumerate");
  return std::uint64_t{1} << prefix.size();
}

VertexSet subset_of(const VertexSet& prefix, std::uint64_t mask) {
  VertexSet K;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if ((mask >> i) & 1U) K.push_back(prefix[i]);
  }
  return K;
}

std::optional<Vertex> least_in_cone(const std::vector<Vertex>& enumeration, const VertexSet& prefix,
                                    const VertexSet& K) {
  for (const auto& v : enumeration) {
    if (rado::cone_member(v, prefix, K)) return v;
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::optional<Vertex>> least_index_level_serial(const std::vector<Vertex>& enumeration,
                                                            const VertexSet& prefix) {
  const std::uint64_t count = subset_count(prefix);
  std::vector<std::optional<Vertex>> out(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    out[mask] = least_in_cone(enumeration, prefix, subset_of(prefix, mask));
  }
  return out;
}

std::vector<std::optional<Vertex>> least_index_level_parallel(const std::vector<Vertex>& enumeration,
                                                              const VertexSet& prefix) {
  const auto count = static_cast<std::int64_t>(subset_count(prefix));
  std::vector<std::optional<Vertex>> out(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t mask = 0; mask < count; ++mask) {
    const auto m = static_cast<std::uint64_t>(mask);
    out[m] = least_in_cone(enumeration, prefix, subset_of(prefix, m));
  }
  return out;
}

int thread_count() { return omp_get_max_threads(); }

}  // namespace radoloc::kernels
