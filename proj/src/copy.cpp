#include "radoloc/copy.hpp"

#include <stdexcept>

namespace radoloc {

namespace {
// Give up scanning a sparse cone after this many candidates per member asked.
constexpr std::uint64_t kScanFactor = 1u << 12;
}  // namespace

std::vector<Vertex> WholeGraph::first_members(std::size_t count) const {
  std::vector<Vertex> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(i);
  return out;
}

std::vector<Vertex> ConeCopy::first_members(std::size_t count) const {
  std::lock_guard lock(mu_);
  const std::uint64_t budget = scanned_ + kScanFactor * (count + 1);
  while (members_.size() < count && scanned_ < budget) {
    Natural v(scanned_++);
    if (rado::cone_member(v, cone_)) members_.push_back(std::move(v));
  }
  return {members_.begin(), members_.begin() + static_cast<std::ptrdiff_t>(std::min(count, members_.size()))};
}

nlohmann::json ConeCopy::to_json() const {
  return {{"kind", "cone"}, {"cone", rado::cone_to_json(cone_)}};
}

std::vector<Vertex> CofiniteCopy::first_members(std::size_t count) const {
  std::vector<Vertex> out;
  out.reserve(count);
  for (std::uint64_t v = 0; out.size() < count; ++v) {
    Natural n(v);
    if (!set_contains(removed_, n)) out.push_back(std::move(n));
  }
  return out;
}

nlohmann::json CofiniteCopy::to_json() const {
  return {{"kind", "cofinite"}, {"removed", rado::set_to_json(removed_)}};
}

std::shared_ptr<const Copy> copy_from_json(const nlohmann::json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "whole") return std::make_shared<WholeGraph>();
  if (kind == "cone") return std::make_shared<ConeCopy>(rado::cone_from_json(j.at("cone")));
  if (kind == "cofinite") return std::make_shared<CofiniteCopy>(rado::set_from_json(j.at("removed")));
  throw std::invalid_argument("unknown copy kind '" + kind + "'");
}

Report check_copy(const Copy& copy, std::size_t prefix, std::size_t bound) {
  Report report{"copy check " + copy.describe()};
  const auto members = copy.first_members(std::max(prefix, bound));
  if (members.size() < prefix) {
    report.fail("copy enumerated only " + std::to_string(members.size()) + " members");
    return report;
  }
  const VertexSet H(members.begin(), members.begin() + static_cast<std::ptrdiff_t>(prefix));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << prefix); ++mask) {
    VertexSet K;
    for (std::size_t i = 0; i < prefix; ++i) {
      if ((mask >> i) & 1U) K.push_back(H[i]);
    }
    bool found = false;
    for (const auto& v : members) {
      if (rado::cone_member(v, H, K)) {
        found = true;
        break;
      }
    }
    if (!found) {
      report.fail("no member of R^H_K among the first " + std::to_string(members.size()) +
                  " for H=" + set_to_string(H) + " K=" + set_to_string(K));
    }
  }
  return report;
}

}  // namespace radoloc
