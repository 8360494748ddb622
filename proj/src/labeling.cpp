#include "radoloc/labeling.hpp"

#include <algorithm>
#include <set>

#include "radoloc/kernels.hpp"

namespace radoloc {

SearchExhausted::SearchExhausted(std::size_t level_, VertexSet K_, std::uint64_t bound_)
    : std::runtime_error("search exhausted: no member of the cone for (n=" + std::to_string(level_) +
                         ", K=" + set_to_string(K_) + ") among the first " + std::to_string(bound_) +
                         " vertices of the copy"),
      level(level_),
      K(std::move(K_)),
      bound(bound_) {}

Untagged::Untagged(const Vertex& v)
    : std::runtime_error("vertex " + v.to_string() + " was not produced by this labeling"), vertex(v) {}

LevelUnavailable::LevelUnavailable(std::size_t level_, const std::string& why)
    : std::runtime_error("level " + std::to_string(level_) + " unavailable: " + why), level(level_) {}

Labeling::Labeling(std::shared_ptr<const Copy> copy, PlacementRule rule, LabelingOptions options)
    : copy_(std::move(copy)), rule_(rule), options_(options) {}

std::shared_ptr<Labeling> Labeling::build(std::shared_ptr<const Copy> copy, LabelingOptions options) {
  const auto rule = options.closed_form && copy->is_whole_graph() ? PlacementRule::kClosedForm
                                                                   : PlacementRule::kLeastIndex;
  return std::make_shared<Labeling>(std::move(copy), rule, options);
}

std::shared_ptr<Labeling> Labeling::fixed(std::shared_ptr<const Copy> copy, std::vector<LabelRecord> records) {
  auto lab = std::make_shared<Labeling>(std::move(copy), PlacementRule::kFixed, LabelingOptions{});
  std::stable_sort(records.begin(), records.end(),
                   [](const LabelRecord& a, const LabelRecord& b) { return a.n < b.n; });
  for (auto& r : records) {
    r.K = make_set(std::move(r.K));
    try {
      lab->check_key(r.n, r.K);
    } catch (const std::exception& e) {
      throw std::invalid_argument(std::string("bad record: ") + e.what());
    }
    if (lab->qmap_.count({r.n, r.K})) {
      throw std::invalid_argument("duplicate record for (n=" + std::to_string(r.n) + ", K=" + set_to_string(r.K) + ")");
    }
    if (lab->registry_.count(r.q)) {
      throw std::invalid_argument("vertex " + r.q.to_string() + " recorded twice");
    }
    lab->record(r.n, r.K, r.q);
  }
  return lab;
}

Natural Labeling::prefix_size(std::size_t n) {
  static std::mutex mu;
  static std::vector<Natural> cache{Natural()};  // M_0, M_1, ...
  std::lock_guard lock(mu);
  while (cache.size() <= n) cache.push_back(Natural::from_positions(cache));
  return cache[n];
}

Natural Labeling::level_size(std::size_t n) { return Natural::pow2(prefix_size(n)); }

void Labeling::check_key(std::size_t n, const VertexSet& K) const {
  for (const auto& k : K) {
    auto it = registry_.find(k);
    if (it == registry_.end()) throw Untagged(k);
    if (it->second.level >= n) {
      throw std::invalid_argument("vertex " + k.to_string() + " is tagged at level " +
                                  std::to_string(it->second.level) + ", not below " + std::to_string(n));
    }
  }
}

void Labeling::record(std::size_t n, const VertexSet& K, const Vertex& v) const {
  auto [it, inserted] = registry_.emplace(v, Tag{n, K});
  if (!inserted && !(it->second == Tag{n, K})) {
    throw std::logic_error("vertex " + v.to_string() + " produced for two tags");
  }
  qmap_.emplace(std::make_pair(n, K), v);
}

const std::vector<Vertex>& Labeling::enumeration_locked() const {
  if (enumeration_.empty()) enumeration_ = copy_->first_members(options_.search_bound);
  return enumeration_;
}

Vertex Labeling::compute(std::size_t n, const VertexSet& K) const {
  switch (rule_) {
    case PlacementRule::kClosedForm: {
      const Natural M = prefix_size(n);
      Natural s = Natural::from_positions(K);
      if (s >= M) return s;
      return Natural::from_positions(set_insert(K, M));
    }
    case PlacementRule::kLeastIndex: {
      const VertexSet U = prefix_locked(n);
      for (const auto& v : enumeration_locked()) {
        if (rado::cone_member(v, U, K)) return v;
      }
      throw SearchExhausted(n, K, options_.search_bound);
    }
    case PlacementRule::kFixed:
      break;
  }
  throw LevelUnavailable(n, "no recorded value for K=" + set_to_string(K));
}

Vertex Labeling::q_locked(std::size_t n, const VertexSet& K) const {
  if (auto it = qmap_.find({n, K}); it != qmap_.end()) return it->second;
  check_key(n, K);
  Vertex v = compute(n, K);
  record(n, K, v);
  return v;
}

Vertex Labeling::q(std::size_t n, const VertexSet& K) const {
  std::lock_guard lock(mu_);
  return q_locked(n, make_set(K));
}

Tag Labeling::tag_of(const Vertex& v) const {
  std::lock_guard lock(mu_);
  auto it = registry_.find(v);
  if (it == registry_.end()) throw Untagged(v);
  return it->second;
}

std::optional<Tag> Labeling::find_tag(const Vertex& v) const {
  std::lock_guard lock(mu_);
  auto it = registry_.find(v);
  if (it == registry_.end()) return std::nullopt;
  return it->second;
}

VertexSet Labeling::trace(const VertexSet& K, std::size_t n) const {
  std::lock_guard lock(mu_);
  VertexSet out;
  for (const auto& k : K) {
    auto it = registry_.find(k);
    if (it == registry_.end()) throw Untagged(k);
    if (it->second.level < n) out.push_back(k);
  }
  return out;
}

const VertexSet& Labeling::level_locked(std::size_t n) const {
  if (auto it = levels_.find(n); it != levels_.end()) return it->second;
  if (n > kMaxMaterialLevel) {
    throw LevelUnavailable(n, "only levels up to " + std::to_string(kMaxMaterialLevel) + " are listed");
  }
  VertexSet members;
  if (rule_ == PlacementRule::kFixed) {
    for (const auto& [v, tag] : registry_) {
      if (tag.level == n) members.push_back(v);
    }
  } else {
    const VertexSet U = prefix_locked(n);
    if (rule_ == PlacementRule::kLeastIndex) {
      const auto& enumeration = enumeration_locked();
      const auto found = options_.parallel ? kernels::least_index_level_parallel(enumeration, U)
                                           : kernels::least_index_level_serial(enumeration, U);
      for (std::uint64_t mask = 0; mask < found.size(); ++mask) {
        VertexSet K;
        for (std::size_t i = 0; i < U.size(); ++i) {
          if ((mask >> i) & 1U) K.push_back(U[i]);
        }
        if (!found[mask]) throw SearchExhausted(n, K, options_.search_bound);
        record(n, K, *found[mask]);
        members.push_back(*found[mask]);
      }
    } else {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << U.size()); ++mask) {
        VertexSet K;
        for (std::size_t i = 0; i < U.size(); ++i) {
          if ((mask >> i) & 1U) K.push_back(U[i]);
        }
        members.push_back(q_locked(n, K));
      }
    }
  }
  std::sort(members.begin(), members.end());
  return levels_.emplace(n, std::move(members)).first->second;
}

const VertexSet& Labeling::level(std::size_t n) const {
  std::lock_guard lock(mu_);
  return level_locked(n);
}

VertexSet Labeling::prefix_locked(std::size_t n) const {
  if (n > kMaxMaterialLevel + 1) {
    throw LevelUnavailable(n, "the union of the levels below it is too large to list");
  }
  VertexSet out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& L = level_locked(i);
    out.insert(out.end(), L.begin(), L.end());
  }
  return make_set(std::move(out));
}

VertexSet Labeling::prefix(std::size_t n) const {
  std::lock_guard lock(mu_);
  return prefix_locked(n);
}

std::vector<VertexSet> Labeling::level_keys(std::size_t n) const {
  const VertexSet U = prefix(n);
  if (U.size() > 20) throw LevelUnavailable(n, "too many subsets to list");
  std::vector<VertexSet> keys;
  keys.reserve(std::size_t{1} << U.size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << U.size()); ++mask) {
    VertexSet K;
    for (std::size_t i = 0; i < U.size(); ++i) {
      if ((mask >> i) & 1U) K.push_back(U[i]);
    }
    keys.push_back(std::move(K));
  }
  return keys;
}

bool Labeling::in_cone(const Vertex& v, std::size_t n, const VertexSet& K) const {
  if (!copy_->contains(v)) return false;
  if (rule_ == PlacementRule::kClosedForm) {
    const Natural M = prefix_size(n);
    if (v < M) return false;
    VertexSet low;
    for (auto& p : v.positions()) {
      if (p < M) low.push_back(std::move(p));
    }
    return low == make_set(K);
  }
  return rado::cone_member(v, prefix(n), make_set(K));
}

std::vector<LabelRecord> Labeling::snapshot() const {
  std::lock_guard lock(mu_);
  std::vector<LabelRecord> out;
  out.reserve(qmap_.size());
  for (const auto& [key, v] : qmap_) out.push_back({key.first, key.second, v});
  std::sort(out.begin(), out.end(), [](const LabelRecord& a, const LabelRecord& b) {
    return a.n != b.n ? a.n < b.n : a.q < b.q;
  });
  return out;
}

nlohmann::json Labeling::to_json() const {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : snapshot()) {
    records.push_back({{"n", r.n}, {"K", rado::set_to_json(r.K)}, {"q", rado::natural_to_json(r.q)}});
  }
  return {{"format", "radoloc.labeling/1"}, {"copy", copy_->to_json()}, {"records", std::move(records)}};
}

std::shared_ptr<Labeling> Labeling::from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "radoloc.labeling/1") throw std::invalid_argument("not a labeling snapshot");
  std::vector<LabelRecord> records;
  for (const auto& r : j.at("records")) {
    records.push_back({r.at("n").get<std::size_t>(), rado::set_from_json(r.at("K")),
                       rado::natural_from_json(r.at("q"))});
  }
  return fixed(copy_from_json(j.at("copy")), std::move(records));
}

bool tree_leq(const Vertex& a, const Vertex& b, const Labeling& lab) {
  const Tag ta = lab.tag_of(a);
  const Tag tb = lab.tag_of(b);
  return ta.level >= tb.level && lab.trace(ta.K, tb.level) == tb.K;
}

rado::Cone cone_of(const Vertex& v, const Labeling& lab) {
  const Tag t = lab.tag_of(v);
  return rado::Cone(lab.prefix(t.level), t.K);
}

bool labeled_cones_intersect(const Tag& a, const Tag& b, const Labeling& lab) {
  const Tag& lo = a.level <= b.level ? a : b;
  const Tag& hi = a.level <= b.level ? b : a;
  return lab.trace(hi.K, lo.level) == lo.K;
}

Report verify_labeling(const Labeling& lab, std::size_t depth) {
  if (depth > Labeling::kMaxMaterialLevel) {
    throw std::invalid_argument("verify_labeling lists levels only up to " +
                                std::to_string(Labeling::kMaxMaterialLevel));
  }
  Report report{"labeling (L1)-(L4) to depth " + std::to_string(depth)};
  std::set<Vertex> seen;
  std::string sizes;
  for (std::size_t n = 0; n <= depth; ++n) {
    VertexSet L;
    VertexSet U;
    try {
      L = lab.level(n);
      U = lab.prefix(n);
    } catch (const std::exception& e) {
      report.fail("level " + std::to_string(n) + ": " + e.what());
      break;
    }
    sizes += (n ? "," : "") + std::to_string(L.size());
    for (const auto& v : L) {
      if (!seen.insert(v).second) report.fail("(L1) " + v.to_string() + " lies in two levels");
      if (!lab.copy().contains(v)) report.fail("(L1) " + v.to_string() + " is outside the copy");
    }
    if (Natural(L.size()) != Labeling::level_size(n)) {
      report.fail("(L3) |L_" + std::to_string(n) + "| = " + std::to_string(L.size()) + ", expected " +
                  Labeling::level_size(n).to_string());
    }
    std::set<Vertex> values;
    for (const auto& K : lab.level_keys(n)) {
      const std::string where = "q(" + std::to_string(n) + "," + set_to_string(K) + ")";
      Vertex v;
      try {
        v = lab.q(n, K);
      } catch (const std::exception& e) {
        report.fail("(L2) " + where + " undefined: " + e.what());
        continue;
      }
      if (!values.insert(v).second) report.fail("(L2) " + where + " = " + v.to_string() + " repeats a value");
      if (!set_contains(L, v)) report.fail("(L3) " + where + " = " + v.to_string() + " is not in L_" + std::to_string(n));
      if (!lab.copy().contains(v) || !rado::cone_member(v, U, K)) {
        report.fail("(L4) " + where + " = " + v.to_string() + " is not in the cone over the levels below " +
                    std::to_string(n));
      }
      const auto tag = lab.find_tag(v);
      if (!tag || !(*tag == Tag{n, K})) report.fail("registry does not map " + v.to_string() + " back to " + where);
    }
  }
  for (const auto& r : lab.snapshot()) {
    if (r.n > depth) continue;
    const auto tag = lab.find_tag(r.q);
    if (!tag || tag->level != r.n || tag->K != r.K) {
      report.fail("registry and q disagree at " + r.q.to_string());
    }
  }
  report.note("level sizes [" + sizes + "]");
  return report;
}

}  // namespace radoloc
