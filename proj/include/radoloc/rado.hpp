#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "radoloc/natural.hpp"

// The random graph in its BIT presentation: for u < v, u ~ v iff bit u of v
// is 1. Every finite K ⊆ H has the closed-form witness
//   ΣK + 2^(max H + 1),
// which is what makes the extension property constructive.
namespace radoloc::rado {

bool adjacent(const Vertex& u, const Vertex& v);

// R^H_K: the vertices outside H adjacent to every k in K and to no h in H∖K.
class Cone {
 public:
  // The whole graph, R^∅_∅.
  Cone() = default;
  // Throws std::invalid_argument unless K ⊆ H. Inputs need not be sorted.
  Cone(VertexSet H, VertexSet K);

  const VertexSet& H() const { return H_; }
  const VertexSet& K() const { return K_; }
  std::string to_string() const;

  friend bool operator==(const Cone&, const Cone&) = default;

 private:
  VertexSet H_;
  VertexSet K_;
};

// Membership with H and K given directly; K ⊆ H is assumed, not checked.
bool cone_member(const Vertex& v, const VertexSet& H, const VertexSet& K);
bool cone_member(const Vertex& v, const Cone& c);

Vertex witness(const Cone& c);
// Least member of `c` below `bound`, by scanning. Kept for oracles; the
// kernel never needs it.
std::optional<Vertex> least_witness(const Cone& c, std::uint64_t bound);

bool cones_intersect(const Cone& a, const Cone& b);
// nullopt marks disjoint cones.
std::optional<Cone> cone_intersection(const Cone& a, const Cone& b);
bool cone_subset(const Cone& a, const Cone& b);
bool cone_equal(const Cone& a, const Cone& b);

// Which member of the partition {H} ∪ {R^H_K : K ⊆ H} holds a vertex.
struct PartitionPart {
  bool in_H = false;
  VertexSet K;  // meaningful when !in_H

  friend bool operator==(const PartitionPart&, const PartitionPart&) = default;
};

PartitionPart classify_vertex(const Vertex& v, const VertexSet& H);

// Sorted decimal vertex lists: {"H":[...],"K":[...]}.
nlohmann::json cone_to_json(const Cone& c);
Cone cone_from_json(const nlohmann::json& j);

// A natural as JSON: a decimal string when it can be written out, otherwise
// {"pow2":[...]} listing the positions of its 1-bits (recursively).
nlohmann::json natural_to_json(const Natural& n);
Natural natural_from_json(const nlohmann::json& j);
nlohmann::json set_to_json(const VertexSet& s);
VertexSet set_from_json(const nlohmann::json& j);

}  // namespace radoloc::rado
