#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "radoloc/report.hpp"
#include "radoloc/trees.hpp"

// The finite Boolean algebra on up to 64 atoms: an element is the set of atoms
// below it, as a bitmask.
namespace radoloc::boolean {

using Element = std::uint64_t;

class IndexOutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

Element top(unsigned atoms);
// "{0,2}" style; "⊥" for the empty set.
std::string element_to_string(Element e);

// b[n][m] for n < rows, m < cols.
class ValueMatrix {
 public:
  // Throws std::invalid_argument unless 1 ≤ atoms ≤ 64 and rows, cols ≥ 1.
  ValueMatrix(unsigned atoms, std::size_t rows, std::size_t cols);

  unsigned atoms() const { return atoms_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Element top() const { return boolean::top(atoms_); }

  Element at(std::size_t n, std::size_t m) const { return b_[n * cols_ + m]; }
  // Throws IndexOutOfRange, and std::invalid_argument on bits past the atoms.
  void set(std::size_t n, std::size_t m, Element e);

  friend bool operator==(const ValueMatrix&, const ValueMatrix&) = default;

 private:
  unsigned atoms_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> b_;
};

// Text form: "atoms rows cols" on the first line, then `rows` lines of `cols`
// bitmasks (decimal or 0x-prefixed).
ValueMatrix read_matrix(std::istream& in);
ValueMatrix read_matrix_file(const std::string& path);
std::string matrix_to_text(const ValueMatrix& mat);

// ⋀_n ⋁_m b[n][m].
Element lhs(const ValueMatrix& mat);

struct AtomwiseResult {
  Element value = 0;
  // branch[a] lists φ(0..rows-1) with atom a below every b[k][φ(k)], for each
  // atom of `value`; empty for the others.
  std::vector<std::vector<std::size_t>> branch;
};
// The join of the atoms that some single branch φ: rows → cols dominates.
// Each atom takes the least column per row that contains it.
AtomwiseResult rhs_atomwise(const ValueMatrix& mat);
// The same join by walking all cols^rows branches. Throws std::length_error
// past 2^24 branches.
Element rhs_all_branches(const ValueMatrix& mat);

// A subtree of the depth-`rows`, branching-`cols` tree. Node 0 is the root;
// every other node names its parent, which comes earlier, and its column.
struct IndexTree {
  struct Node {
    std::uint32_t parent = 0;
    std::uint32_t col = 0;
    std::uint32_t depth = 0;
  };
  std::vector<Node> nodes;
};

// Throws IndexOutOfRange for a node longer than `rows` or an entry ≥ `cols`,
// and std::invalid_argument for a set that is not prefix closed or has a node
// with more than two successors.
IndexTree index_tree(const trees::FiniteTree& T, std::size_t rows, std::size_t cols);
trees::FiniteTree finite_tree(const IndexTree& t);

// ⋀_{n<rows} ⋁_{φ ∈ T of length n+1} ⋀_{k≤n} b[k][φ(k)].
Element tree_value(const ValueMatrix& mat, const IndexTree& t);
// Join of tree_value over the sample; ⊥ for an empty sample.
Element rhs_tree_lower_bound(const ValueMatrix& mat, const std::vector<IndexTree>& sample);
Element rhs_tree_lower_bound(const ValueMatrix& mat, const std::vector<trees::FiniteTree>& sample);

ValueMatrix random_matrix(std::mt19937_64& rng, unsigned atoms, std::size_t rows, std::size_t cols);
// Each node short of full depth gets one or two distinct children, so every
// branch reaches length `rows`.
IndexTree random_binary_tree(std::mt19937_64& rng, std::size_t rows, std::size_t cols);

// lhs = rhs_atomwise, and the tree lower bound stays below lhs.
Report check_identity(const ValueMatrix& mat, const std::vector<IndexTree>& sample = {});

std::uint64_t splitmix(std::uint64_t seed, std::uint64_t index);

struct FuzzConfig {
  unsigned atoms = 3;
  std::size_t rows = 4;
  std::size_t cols = 4;
  std::size_t cases = 1000;
  std::uint64_t seed = 0;
  std::size_t trees = 0;  // sampled trees per case
};

struct FuzzOutcome {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::optional<std::size_t> first_failure;
  std::optional<ValueMatrix> counterexample;
  std::optional<Report> counterexample_report;
};

// Case i draws its matrix and trees from splitmix(seed, i), so both kernels
// see the same cases.
FuzzOutcome fuzz_identity_serial(const FuzzConfig& config);
FuzzOutcome fuzz_identity_parallel(const FuzzConfig& config);

}  // namespace radoloc::boolean
