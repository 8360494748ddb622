#pragma once

#include <optional>
#include <vector>

#include "radoloc/natural.hpp"

// Data-parallel kernels. Each has a serial reference with identical output.
namespace radoloc::kernels {

// For every K ⊆ prefix (bit i of the result index selects prefix[i]), the
// first vertex of `enumeration` in R^prefix_K, or nullopt if none is listed.
std::vector<std::optional<Vertex>> least_index_level_serial(const std::vector<Vertex>& enumeration,
                                                            const VertexSet& prefix);
std::vector<std::optional<Vertex>> least_index_level_parallel(const std::vector<Vertex>& enumeration,
                                                              const VertexSet& prefix);

// Number of OpenMP threads the parallel kernels will use.
int thread_count();

}  // namespace radoloc::kernels
