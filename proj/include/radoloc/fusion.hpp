#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "radoloc/labeling.hpp"
#include "radoloc/rado.hpp"
#include "radoloc/report.hpp"

namespace radoloc::fusion {

// Given the cone still available to q(n, K), returns a sub-cone lying inside
// some member of the n-th dense family.
using Refiner = std::function<rado::Cone(const rado::Cone& input, std::size_t n)>;

class RefinerFailure : public std::runtime_error {
 public:
  RefinerFailure(std::size_t n, VertexSet K, const std::string& why);
  std::size_t n;
  VertexSet K;
};

enum class Placement {
  kFirstMember,  // first base member in the refined cone
  kWitness,      // closed-form witness of the refined cone
};

struct FusionOptions {
  Placement placement = Placement::kFirstMember;
  // Members of the base copy scanned per level.
  std::size_t search_bound = 1u << 17;
};

struct FusionResult {
  std::shared_ptr<Labeling> labeling;
  std::map<std::pair<std::size_t, VertexSet>, rado::Cone> certificate;
  std::map<std::pair<std::size_t, VertexSet>, rado::Cone> input;
};

Refiner identity_refiner();
// Adds the closed-form witness of the input cone to H, so the refined cone
// misses one more vertex.
Refiner avoid_witness_refiner();

// Levels 0..depth: at level n every K ⊆ ∪_{i<n} L_i (canonical order) is
// refined from Cone(∪_{i<n} L_i, K) ∩ certificate of (n-1, K ∩ ∪_{i<n-1} L_i),
// then q(n, K) is placed in the refined cone, avoiding every vertex some
// certificate of the level excluded. depth ≤ Labeling::kMaxMaterialLevel.
FusionResult build_fusion(const std::vector<Refiner>& refiners, const rado::Cone& base, std::size_t depth,
                          FusionOptions options = {});

// verify_labeling, plus: each certificate lies inside its input cone, and
// q(n, K) and every materialized vertex tree-below it lie in the certificate.
Report verify_fusion(const FusionResult& r, std::size_t depth);

nlohmann::json fusion_to_json(const FusionResult& r);
FusionResult fusion_from_json(const nlohmann::json& j);

}  // namespace radoloc::fusion
