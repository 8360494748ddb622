#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "radoloc/labeling.hpp"
#include "radoloc/name_model.hpp"
#include "radoloc/report.hpp"
#include "radoloc/trees.hpp"

namespace radoloc::construction {

using trees::BinSeq;
using trees::FiniteTree;
using trees::NatSeq;

// No split of the condition (n, K) was found: the name model takes one value
// on everything the search looked at below it.
class Undecided : public std::runtime_error {
 public:
  Undecided(std::size_t n, VertexSet K, std::size_t bound);
  std::size_t n;
  VertexSet K;
};

class DepthInsufficient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Split {
  std::size_t n1 = 0;
  VertexSet left;   // K'
  VertexSet right;  // K''
};

inline constexpr std::size_t kDefaultSplitBound = 4;

// Least n1 in (n, n + bound] and subsets K' = K, K'' = K ∪ S, with S drawn
// from {q(i, K) : n ≤ i < n1} in canonical order, such that m^{n1}_{K'} and
// m^{n1}_{K''} differ. The first candidate is K'' = K ∪ {q(n, K)}.
Split find_split(std::size_t n, const VertexSet& K, const NameModel& nm, const Labeling& lab,
                 std::size_t bound = kDefaultSplitBound);

struct ConstructionState {
  std::shared_ptr<Labeling> lab;
  std::shared_ptr<const NameModel> names;
  std::size_t depth = 0;

  std::vector<std::vector<Vertex>> lambda;  // Λ_0..Λ_depth, each in lexicographic order of ^n 2
  std::vector<std::map<BinSeq, Vertex>> f;  // f_0..f_depth
  std::vector<std::size_t> l;               // l_0..l_depth
  std::map<std::size_t, Vertex> d;          // d_1..d_depth
  std::map<std::size_t, std::vector<Vertex>> phi;  // Φ_1..Φ_depth
  std::map<BinSeq, std::size_t> n_phi;      // n_φ for |φ| < depth
  std::map<BinSeq, VertexSet> K_phi;        // K_φ for |φ| ≤ depth

  // f(φ) recomputed from the tables: q(n_{φ↾(|φ|-1)}, K_φ), and q(0, ∅) at ε.
  Vertex f_value(const BinSeq& phi) const;
};

ConstructionState run_construction(std::shared_ptr<Labeling> lab, std::shared_ptr<const NameModel> nm,
                                   std::size_t depth, std::size_t split_bound = kDefaultSplitBound);

// Conditions (i)-(x) on every built stage.
Report verify_state(const ConstructionState& s);

// Adjacency of the built vertices to d_n: via bit k for the nodes below stage n.
Report check_adjacency_laws(const ConstructionState& s);

struct DExtraction {
  std::vector<Vertex> D;  // d_1..d_depth
  Report report;
};
DExtraction extract_D(const ConstructionState& s);

struct ConeWitness {
  Vertex vertex;       // d_r when found, else q
  Vertex q;            // f(φ⌢0)
  BinSeq phi;          // φ(k) = 1 iff d_{k+1} ∈ K
  std::optional<std::size_t> r;
  Report certificate;
};
// H ⊆ D, K ⊆ H. Throws std::invalid_argument on other input and
// DepthInsufficient when φ⌢0 lies past the built depth.
ConeWitness cone_witness_in_D(const ConstructionState& s, const VertexSet& H, const VertexSet& K);

Report check_antichain(const ConstructionState& s, std::size_t n);

struct FEmbedding {
  std::map<Vertex, NatSeq> F;
  FiniteTree T;
  Report report;
};
// F(v) = ⟨m^k_{K ∩ ∪_{i<k} L_i} : k ≤ n_φ⟩ for v = f(φ⌢j), F(f(ε)) = ⟨⟩.
FEmbedding embed_F(const ConstructionState& s);

// Least n_0 ≤ depth with n < l_{n_0 - 1}, if any.
std::optional<std::size_t> localize_stage(const ConstructionState& s, std::size_t n);
// n values for which localize_stage succeeds.
std::vector<std::size_t> admissible_localize_levels(const ConstructionState& s);
Report localize_check(const ConstructionState& s, const FiniteTree& T, const NameModel& nm, std::size_t n);

// Structured file form. `T` is stored when given.
nlohmann::json state_to_json(const ConstructionState& s, const FiniteTree* T = nullptr);
struct LoadedState {
  ConstructionState state;
  std::optional<FiniteTree> T;
};
// Rebuilds the labeling from the recorded copy, checking every recorded tag
// against it, then loads the tables as stored. Throws std::runtime_error on a
// malformed or inconsistent file.
LoadedState state_from_json(const nlohmann::json& j);

}  // namespace radoloc::construction
