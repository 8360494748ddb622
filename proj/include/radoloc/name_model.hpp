#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "radoloc/natural.hpp"

namespace radoloc::construction {

// An assignment (n, K) ↦ m^n_K standing in for the values a name takes on
// labeled cones.
class NameModel {
 public:
  virtual ~NameModel() = default;
  // K is a set of vertices (sorted or not; it is normalized).
  virtual Natural value(std::size_t n, const VertexSet& K) const = 0;
  // The selector string that recreates this model.
  virtual std::string selector() const = 0;
};

// m^n_K = 2^{2n} + Σ_{k∈K} 2^{2k+1}: injective in (n, K).
std::shared_ptr<const NameModel> encode_name_model();
std::shared_ptr<const NameModel> constant_name_model(Natural value);

// {"format":"radoloc.names/1","default":"7","entries":[{"n":1,"K":["0"],"m":"3"}]}
// "default" is optional; without it a missing entry throws std::out_of_range.
std::shared_ptr<const NameModel> table_name_model(const nlohmann::json& j, std::string source);

// "encode", "constant:<v>" or "file:<path>". Throws std::invalid_argument.
std::shared_ptr<const NameModel> name_model_from_selector(std::string_view selector);

}  // namespace radoloc::construction
