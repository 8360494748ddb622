#include "radoloc/fusion.hpp"

#include <set>
#include <string>

#include "radoloc/copy.hpp"

namespace radoloc::fusion {

using Key = std::pair<std::size_t, VertexSet>;

RefinerFailure::RefinerFailure(std::size_t n_, VertexSet K_, const std::string& why)
    : std::runtime_error("refiner failed at (n=" + std::to_string(n_) + ", K=" + set_to_string(K_) + "): " + why),
      n(n_),
      K(std::move(K_)) {}

Refiner identity_refiner() {
  return [](const rado::Cone& c, std::size_t) { return c; };
}

Refiner avoid_witness_refiner() {
  return [](const rado::Cone& c, std::size_t) {
    VertexSet H = c.H();
    H.push_back(rado::witness(c));
    return rado::Cone(make_set(std::move(H)), c.K());
  };
}

namespace {

VertexSet subset_of(const VertexSet& prefix, std::uint64_t mask) {
  VertexSet K;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if ((mask >> i) & 1U) K.push_back(prefix[i]);
  }
  return K;
}

}  // namespace

FusionResult build_fusion(const std::vector<Refiner>& refiners, const rado::Cone& base, std::size_t depth,
                          FusionOptions options) {
  if (depth > Labeling::kMaxMaterialLevel) {
    throw std::invalid_argument("fusion lists levels only up to " + std::to_string(Labeling::kMaxMaterialLevel));
  }
  if (refiners.size() <= depth) throw std::invalid_argument("need a refiner for every level up to the depth");

  auto copy = std::make_shared<ConeCopy>(base);
  FusionResult out;
  std::vector<LabelRecord> records;
  std::set<Vertex> excluded;
  VertexSet U;                      // ∪_{i<n} L_i
  std::vector<VertexSet> prefixes;  // prefixes[n] = ∪_{i<n} L_i

  for (std::size_t n = 0; n <= depth; ++n) {
    prefixes.push_back(U);
    const std::uint64_t count = std::uint64_t{1} << U.size();
    std::vector<rado::Cone> refined(count);
    std::vector<VertexSet> keys(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      keys[mask] = subset_of(U, mask);
      const VertexSet& K = keys[mask];
      std::optional<rado::Cone> input = base;
      if (n > 0) {
        const auto parent = out.certificate.at({n - 1, set_intersection(K, prefixes[n - 1])});
        input = rado::cone_intersection(rado::Cone(U, K), parent);
        if (!input) throw RefinerFailure(n, K, "parent certificate misses Cone" + rado::Cone(U, K).to_string());
      }
      rado::Cone r = refiners[n](*input, n);
      if (!rado::cone_subset(r, *input)) {
        throw RefinerFailure(n, K, "returned " + r.to_string() + ", not inside " + input->to_string());
      }
      for (const auto& h : set_difference(r.H(), input->H())) excluded.insert(h);
      out.input.emplace(Key{n, K}, *input);
      out.certificate.emplace(Key{n, K}, r);
      refined[mask] = std::move(r);
    }

    std::vector<std::optional<Vertex>> q(count);
    std::uint64_t filled = 0;
    if (options.placement == Placement::kWitness) {
      for (std::uint64_t mask = 0; mask < count; ++mask) {
        q[mask] = rado::witness(refined[mask]);
        if (excluded.count(*q[mask])) {
          throw RefinerFailure(n, keys[mask], "the witness " + q[mask]->to_string() + " is excluded at this level");
        }
      }
      filled = count;
    }
    for (const auto& v : filled == count ? std::vector<Vertex>{} : copy->first_members(options.search_bound)) {
      if (filled == count) break;
      if (excluded.count(v)) continue;
      const auto part = rado::classify_vertex(v, U);
      if (part.in_H) continue;
      std::uint64_t mask = 0;
      for (std::size_t i = 0, j = 0; i < U.size() && j < part.K.size(); ++i) {
        if (U[i] == part.K[j]) {
          mask |= std::uint64_t{1} << i;
          ++j;
        }
      }
      if (q[mask] || !rado::cone_member(v, refined[mask])) continue;
      q[mask] = v;
      ++filled;
    }
    VertexSet level;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      if (!q[mask]) throw SearchExhausted(n, keys[mask], options.search_bound);
      level.push_back(*q[mask]);
      records.push_back({n, keys[mask], *q[mask]});
    }
    U = set_union(U, make_set(std::move(level)));
  }
  out.labeling = Labeling::fixed(copy, std::move(records));
  return out;
}

Report verify_fusion(const FusionResult& r, std::size_t depth) {
  Report report{"fusion certificates to depth " + std::to_string(depth)};
  report.absorb(verify_labeling(*r.labeling, depth));
  for (const auto& [key, cert] : r.certificate) {
    const auto in = r.input.find(key);
    if (key.first <= depth && (in == r.input.end() || !rado::cone_subset(cert, in->second))) {
      report.fail("certificate (n=" + std::to_string(key.first) + ", K=" + set_to_string(key.second) +
                  ") is not inside its input cone");
    }
  }
  std::size_t checked = 0;
  for (const auto& rec : r.labeling->snapshot()) {
    if (rec.n > depth) continue;
    for (std::size_t k = 0; k <= rec.n; ++k) {
      const Key anc{k, r.labeling->trace(rec.K, k)};
      const auto cert = r.certificate.find(anc);
      ++checked;
      if (cert == r.certificate.end()) {
        report.fail("no certificate for (n=" + std::to_string(k) + ", K=" + set_to_string(anc.second) + ")");
      } else if (!rado::cone_member(rec.q, cert->second)) {
        report.fail(rec.q.to_string() + " lies below q(" + std::to_string(k) + "," + set_to_string(anc.second) +
                    ") but outside its certificate " + cert->second.to_string());
      }
    }
  }
  report.note(std::to_string(checked) + " vertex/certificate pairs checked");
  return report;
}

nlohmann::json fusion_to_json(const FusionResult& r) {
  nlohmann::json certs = nlohmann::json::array();
  for (const auto& [key, cert] : r.certificate) {
    certs.push_back({{"n", key.first},
                     {"K", rado::set_to_json(key.second)},
                     {"input", rado::cone_to_json(r.input.at(key))},
                     {"cone", rado::cone_to_json(cert)}});
  }
  return {{"format", "radoloc.fusion/1"}, {"labeling", r.labeling->to_json()}, {"certificates", certs}};
}

FusionResult fusion_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "radoloc.fusion/1") throw std::runtime_error("not a radoloc.fusion/1 document");
  FusionResult r;
  r.labeling = Labeling::from_json(j.at("labeling"));
  for (const auto& c : j.at("certificates")) {
    const Key key{c.at("n").get<std::size_t>(), rado::set_from_json(c.at("K"))};
    r.input.emplace(key, rado::cone_from_json(c.at("input")));
    r.certificate.emplace(key, rado::cone_from_json(c.at("cone")));
  }
  return r;
}

}  // namespace radoloc::fusion
