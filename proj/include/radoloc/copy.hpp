#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "radoloc/rado.hpp"
#include "radoloc/report.hpp"

namespace radoloc {

// A copy of the random graph inside R: a decidable vertex set enumerated in
// increasing order.
class Copy {
 public:
  virtual ~Copy() = default;

  virtual std::string describe() const = 0;
  virtual bool contains(const Vertex& v) const = 0;
  // The first `count` members in increasing order (fewer if the scan budget
  // of the implementation runs out).
  virtual std::vector<Vertex> first_members(std::size_t count) const = 0;
  virtual nlohmann::json to_json() const = 0;

  // R itself, enumerated as 0, 1, 2, ...
  virtual bool is_whole_graph() const { return false; }
};

class WholeGraph final : public Copy {
 public:
  std::string describe() const override { return "R"; }
  bool contains(const Vertex&) const override { return true; }
  std::vector<Vertex> first_members(std::size_t count) const override;
  nlohmann::json to_json() const override { return {{"kind", "whole"}}; }
  bool is_whole_graph() const override { return true; }
};

// R^H_K as a copy in its own right.
class ConeCopy final : public Copy {
 public:
  explicit ConeCopy(rado::Cone cone) : cone_(std::move(cone)) {}

  const rado::Cone& cone() const { return cone_; }
  std::string describe() const override { return "R^H_K" + cone_.to_string(); }
  bool contains(const Vertex& v) const override { return rado::cone_member(v, cone_); }
  std::vector<Vertex> first_members(std::size_t count) const override;
  nlohmann::json to_json() const override;

 private:
  rado::Cone cone_;
  mutable std::mutex mu_;
  mutable std::vector<Vertex> members_;
  mutable std::uint64_t scanned_ = 0;
};

// R with finitely many vertices removed.
class CofiniteCopy final : public Copy {
 public:
  explicit CofiniteCopy(VertexSet removed) : removed_(make_set(std::move(removed))) {}

  std::string describe() const override { return "R\\" + set_to_string(removed_); }
  bool contains(const Vertex& v) const override { return !set_contains(removed_, v); }
  std::vector<Vertex> first_members(std::size_t count) const override;
  nlohmann::json to_json() const override;

 private:
  VertexSet removed_;
};

std::shared_ptr<const Copy> copy_from_json(const nlohmann::json& j);

// Finite-depth copy check: for every K ⊆ H, with H the first `prefix`
// members, some member among the first `bound` lies in R^H_K.
Report check_copy(const Copy& copy, std::size_t prefix, std::size_t bound);

}  // namespace radoloc
