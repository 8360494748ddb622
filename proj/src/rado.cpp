#include "radoloc/rado.hpp"

#include <algorithm>

namespace radoloc::rado {

bool adjacent(const Vertex& u, const Vertex& v) {
  // bit u of v can only be set when u < v, so no ordering test is needed.
  return u != v && (v.bit(u) || u.bit(v));
}

Cone::Cone(VertexSet H, VertexSet K) : H_(make_set(std::move(H))), K_(make_set(std::move(K))) {
  if (!set_includes(H_, K_)) {
    throw std::invalid_argument("cone requires K ⊆ H, got H=" + set_to_string(H_) +
                                " K=" + set_to_string(K_));
  }
}

std::string Cone::to_string() const {
  return "(H=" + set_to_string(H_) + ", K=" + set_to_string(K_) + ")";
}

bool cone_member(const Vertex& v, const VertexSet& H, const VertexSet& K) {
  if (set_contains(H, v)) return false;
  auto k = K.begin();
  for (const auto& h : H) {
    const bool in_K = k != K.end() && *k == h;
    if (in_K) ++k;
    if (adjacent(v, h) != in_K) return false;
  }
  return true;
}

bool cone_member(const Vertex& v, const Cone& c) { return cone_member(v, c.H(), c.K()); }

Vertex witness(const Cone& c) {
  std::vector<Natural> positions = c.K();
  positions.push_back(c.H().empty() ? Natural() : c.H().back().successor());
  return Natural::from_positions(std::move(positions));
}

std::optional<Vertex> least_witness(const Cone& c, std::uint64_t bound) {
  for (std::uint64_t v = 0; v < bound; ++v) {
    if (cone_member(Natural(v), c)) return Natural(v);
  }
  return std::nullopt;
}

bool cones_intersect(const Cone& a, const Cone& b) {
  return set_intersection(a.H(), b.K()) == set_intersection(b.H(), a.K());
}

std::optional<Cone> cone_intersection(const Cone& a, const Cone& b) {
  if (!cones_intersect(a, b)) return std::nullopt;
  return Cone(set_union(a.H(), b.H()), set_union(a.K(), b.K()));
}

bool cone_subset(const Cone& a, const Cone& b) {
  return set_includes(a.H(), b.H()) && set_includes(a.K(), b.K()) &&
         set_intersection(b.H(), a.K()) == b.K();
}

bool cone_equal(const Cone& a, const Cone& b) { return a.H() == b.H() && a.K() == b.K(); }

PartitionPart classify_vertex(const Vertex& v, const VertexSet& H) {
  const VertexSet sorted = make_set(H);
  if (set_contains(sorted, v)) return {true, {}};
  PartitionPart part;
  for (const auto& h : sorted) {
    if (adjacent(v, h)) part.K.push_back(h);
  }
  return part;
}

nlohmann::json natural_to_json(const Natural& n) {
  if (n.is_explicit()) return n.to_decimal();
  nlohmann::json bits = nlohmann::json::array();
  for (const auto& p : n.positions()) bits.push_back(natural_to_json(p));
  return nlohmann::json{{"pow2", std::move(bits)}};
}

Natural natural_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Natural::parse(j.get<std::string>());
  if (j.is_number_unsigned()) return Natural(j.get<std::uint64_t>());
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
    return Natural(static_cast<std::uint64_t>(j.get<std::int64_t>()));
  }
  if (j.is_object() && j.contains("pow2") && j.at("pow2").is_array()) {
    std::vector<Natural> positions;
    for (const auto& p : j.at("pow2")) positions.push_back(natural_from_json(p));
    return Natural::from_positions(std::move(positions));
  }
  throw std::invalid_argument("not a natural: " + j.dump());
}

nlohmann::json set_to_json(const VertexSet& s) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : s) out.push_back(natural_to_json(v));
  return out;
}

VertexSet set_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("vertex set must be a JSON array");
  std::vector<Vertex> out;
  for (const auto& v : j) out.push_back(natural_from_json(v));
  return make_set(std::move(out));
}

nlohmann::json cone_to_json(const Cone& c) {
  return nlohmann::json{{"H", set_to_json(c.H())}, {"K", set_to_json(c.K())}};
}

Cone cone_from_json(const nlohmann::json& j) {
  return Cone(set_from_json(j.at("H")), set_from_json(j.at("K")));
}

}  // namespace radoloc::rado
