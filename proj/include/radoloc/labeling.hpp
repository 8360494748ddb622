#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "radoloc/copy.hpp"
#include "radoloc/rado.hpp"
#include "radoloc/report.hpp"

namespace radoloc {

// The (n, K) a labeled vertex was produced for: v = q(n, K).
struct Tag {
  std::size_t level = 0;
  VertexSet K;

  friend bool operator==(const Tag&, const Tag&) = default;
};

class SearchExhausted : public std::runtime_error {
 public:
  SearchExhausted(std::size_t level, VertexSet K, std::uint64_t bound);
  std::size_t level;
  VertexSet K;
  std::uint64_t bound;
};

class Untagged : public std::runtime_error {
 public:
  explicit Untagged(const Vertex& v);
  Vertex vertex;
};

// Raised when a request needs ∪_{i<n} L_i written out for an n where that is
// not feasible, or a fixed labeling lacks the entry.
class LevelUnavailable : public std::runtime_error {
 public:
  LevelUnavailable(std::size_t level, const std::string& why);
  std::size_t level;
};

enum class PlacementRule {
  kClosedForm,   // identity copy, least-index values by formula
  kLeastIndex,   // least-index search through the copy's enumeration
  kFixed,        // values supplied up front (fusion output, snapshots)
};

struct LabelRecord {
  std::size_t n = 0;
  VertexSet K;
  Vertex q;

  friend bool operator==(const LabelRecord&, const LabelRecord&) = default;
};

struct LabelingOptions {
  // Members of the copy scanned by least-index search.
  std::uint64_t search_bound = 1u << 14;
  // Use the formula on the identity copy instead of searching.
  bool closed_form = true;
  bool parallel = true;
};

class Labeling {
 public:
  // Levels up to this index can be listed vertex by vertex.
  static constexpr std::size_t kMaxMaterialLevel = 3;

  static std::shared_ptr<Labeling> build(std::shared_ptr<const Copy> copy, LabelingOptions options = {});
  // Throws std::invalid_argument if two records share a q-value or a tag, or
  // a K mentions a vertex not tagged at a smaller level.
  static std::shared_ptr<Labeling> fixed(std::shared_ptr<const Copy> copy, std::vector<LabelRecord> records);

  // m_n = 2^{M_n} with M_n = Σ_{i<n} m_i, the sizes 1, 2, 8, 2048, ...
  static Natural level_size(std::size_t n);
  // M_n = |∪_{i<n} L_i|.
  static Natural prefix_size(std::size_t n);

  // K must be a set of vertices tagged at levels below n.
  Vertex q(std::size_t n, const VertexSet& K) const;

  Tag tag_of(const Vertex& v) const;  // throws Untagged
  std::optional<Tag> find_tag(const Vertex& v) const;
  // K ∩ ∪_{i<n} L_i, answered from the registry.
  VertexSet trace(const VertexSet& K, std::size_t n) const;

  // L_n, sorted. n ≤ kMaxMaterialLevel.
  const VertexSet& level(std::size_t n) const;
  // ∪_{i<n} L_i, sorted. n ≤ kMaxMaterialLevel + 1.
  VertexSet prefix(std::size_t n) const;
  // The subsets of ∪_{i<n} L_i in canonical order: bit i of the index selects
  // the i-th smallest member.
  std::vector<VertexSet> level_keys(std::size_t n) const;

  // v ∈ L^{∪_{i<n}L_i}_K relative to the copy.
  bool in_cone(const Vertex& v, std::size_t n, const VertexSet& K) const;

  std::vector<LabelRecord> snapshot() const;  // sorted by (n, q)
  nlohmann::json to_json() const;
  // A fixed labeling over the recorded copy.
  static std::shared_ptr<Labeling> from_json(const nlohmann::json& j);

  const Copy& copy() const { return *copy_; }
  std::shared_ptr<const Copy> copy_ptr() const { return copy_; }
  PlacementRule rule() const { return rule_; }
  const LabelingOptions& options() const { return options_; }

  Labeling(std::shared_ptr<const Copy> copy, PlacementRule rule, LabelingOptions options);

 private:
  Vertex q_locked(std::size_t n, const VertexSet& K) const;
  Vertex compute(std::size_t n, const VertexSet& K) const;
  void record(std::size_t n, const VertexSet& K, const Vertex& v) const;
  void check_key(std::size_t n, const VertexSet& K) const;
  const VertexSet& level_locked(std::size_t n) const;
  VertexSet prefix_locked(std::size_t n) const;
  const std::vector<Vertex>& enumeration_locked() const;

  std::shared_ptr<const Copy> copy_;
  PlacementRule rule_;
  LabelingOptions options_;

  mutable std::recursive_mutex mu_;
  mutable std::map<std::pair<std::size_t, VertexSet>, Vertex> qmap_;
  mutable std::unordered_map<Vertex, Tag> registry_;
  mutable std::map<std::size_t, VertexSet> levels_;
  mutable std::vector<Vertex> enumeration_;
};

// Tag form of ≤_L: a ≤_L b iff a's level ≥ b's and a's K traced to b's level
// is b's K. Throws Untagged.
bool tree_leq(const Vertex& a, const Vertex& b, const Labeling& lab);

// Cone(∪_{i<n}L_i, K) for v = q(n, K). Needs the prefix written out.
rado::Cone cone_of(const Vertex& v, const Labeling& lab);

// Whether the labeled cones of two tagged vertices meet, decided from tags.
bool labeled_cones_intersect(const Tag& a, const Tag& b, const Labeling& lab);

// (L1)-(L4), the level-size law and registry/qmap inversion on L_0..L_depth.
Report verify_labeling(const Labeling& lab, std::size_t depth);

}  // namespace radoloc
