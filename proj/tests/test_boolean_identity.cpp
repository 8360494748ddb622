#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "oracles/tree_enumeration.hpp"
#include "radoloc/boolean_identity.hpp"

using namespace radoloc;
using namespace radoloc::boolean;

namespace {

ValueMatrix make(unsigned atoms, std::vector<std::vector<Element>> rows) {
  ValueMatrix mat(atoms, rows.size(), rows.at(0).size());
  for (std::size_t n = 0; n < rows.size(); ++n) {
    for (std::size_t m = 0; m < rows[n].size(); ++m) mat.set(n, m, rows[n][m]);
  }
  return mat;
}

trees::NatSeq seq(std::initializer_list<std::uint64_t> xs) {
  trees::NatSeq s;
  for (auto x : xs) s.emplace_back(x);
  return s;
}

trees::FiniteTree closure(std::vector<trees::NatSeq> leaves) { return trees::upward_closure(leaves); }

}  // namespace

TEST(BooleanIdentity, SmallExamples) {
  const auto all_top = make(2, {{3, 3}, {3, 3}});
  EXPECT_EQ(lhs(all_top), Element{3});
  EXPECT_EQ(rhs_atomwise(all_top).value, Element{3});

  const auto bottom_row = make(2, {{3, 1}, {0, 0}});
  EXPECT_EQ(lhs(bottom_row), Element{0});
  EXPECT_EQ(rhs_atomwise(bottom_row).value, Element{0});

  const auto cross = make(2, {{1, 2}, {2, 1}});
  EXPECT_EQ(lhs(cross), Element{3});
  const auto r = rhs_atomwise(cross);
  EXPECT_EQ(r.value, Element{3});
  EXPECT_EQ(r.branch[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.branch[1], (std::vector<std::size_t>{1, 0}));
}

TEST(BooleanIdentity, TreeLowerBoundExamples) {
  const auto cross = make(2, {{1, 2}, {2, 1}});
  const auto branch01 = closure({seq({0, 1})});
  EXPECT_EQ(rhs_tree_lower_bound(cross, std::vector{branch01}), Element{1});
  EXPECT_EQ(rhs_tree_lower_bound(cross, std::vector<trees::FiniteTree>{}), Element{0});
  // Both branches in one tree: the levels join first, so the value is ⊤ only
  // where a branch survives every level.
  const auto both = closure({seq({0, 1}), seq({1, 0})});
  EXPECT_EQ(rhs_tree_lower_bound(cross, std::vector{both}), Element{3});
  const auto half = closure({seq({0, 0})});
  EXPECT_EQ(rhs_tree_lower_bound(cross, std::vector{half}), Element{0});
}

TEST(BooleanIdentity, MalformedTrees) {
  const auto mat = make(1, {{1, 1}, {1, 1}});
  EXPECT_THROW(rhs_tree_lower_bound(mat, std::vector{closure({seq({0, 2})})}), IndexOutOfRange);
  EXPECT_THROW(rhs_tree_lower_bound(mat, std::vector{closure({seq({0, 1, 0})})}), IndexOutOfRange);
  trees::FiniteTree gap;
  gap.insert({});
  gap.insert(seq({0, 1}));
  EXPECT_THROW(rhs_tree_lower_bound(mat, std::vector{gap}), std::invalid_argument);
  const auto wide = make(1, {{1, 1, 1}});
  EXPECT_THROW(rhs_tree_lower_bound(wide, std::vector{closure({seq({0}), seq({1}), seq({2})})}),
               std::invalid_argument);
  IndexTree bad;
  bad.nodes = {{}, {0, 5, 1}};
  EXPECT_THROW(tree_value(mat, bad), IndexOutOfRange);
  EXPECT_THROW(ValueMatrix(0, 1, 1), std::invalid_argument);
  EXPECT_THROW(ValueMatrix(2, 0, 1), std::invalid_argument);
  ValueMatrix m(2, 1, 1);
  EXPECT_THROW(m.set(1, 0, 1), IndexOutOfRange);
  EXPECT_THROW(m.set(0, 0, 4), std::invalid_argument);
}

TEST(BooleanIdentity, CheckIdentityExamples) {
  std::mt19937_64 rng(42);
  const auto mat = random_matrix(rng, 3, 4, 4);
  std::vector<IndexTree> sample;
  for (int i = 0; i < 20; ++i) sample.push_back(random_binary_tree(rng, 4, 4));
  const auto r = check_identity(mat, sample);
  EXPECT_TRUE(r.passed()) << r.render();

  for (int i = 0; i < 50; ++i) EXPECT_TRUE(check_identity(random_matrix(rng, 1, 3, 5)).passed());

  auto interleaved = random_matrix(rng, 3, 5, 3);
  for (std::size_t m = 0; m < 3; ++m) {
    interleaved.set(1, m, 0);
    interleaved.set(3, m, 0);
  }
  EXPECT_EQ(lhs(interleaved), Element{0});
  EXPECT_EQ(rhs_atomwise(interleaved).value, Element{0});
  EXPECT_TRUE(check_identity(interleaved).passed());
}

TEST(BooleanIdentity, ReportNamesBranches) {
  const auto r = check_identity(make(2, {{1, 2}, {2, 1}}));
  EXPECT_NE(r.render().find("atom 1 via branch (1,0)"), std::string::npos) << r.render();
}

TEST(BooleanIdentity, AtomwiseMatchesAllBranches) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const auto mat = random_matrix(rng, 1 + rng() % 8, 1 + rng() % 5, 1 + rng() % 5);
    ASSERT_EQ(rhs_atomwise(mat).value, rhs_all_branches(mat)) << matrix_to_text(mat);
    ASSERT_EQ(rhs_atomwise(mat).value, lhs(mat));
  }
}

TEST(BooleanIdentity, AtomwiseEqualsExhaustiveTreeEnumeration) {
  std::size_t trees_3x3 = 0;
  for (int rows = 1; rows <= 3; ++rows) {
    for (int cols = 1; cols <= 3; ++cols) {
      std::size_t count = 0;
      const auto table = oracle::boolean_rhs_table<512>(rows, cols, &count);
      if (rows == 3 && cols == 3) trees_3x3 = count;
      const std::size_t slices = std::size_t{1} << (rows * cols);
      // Every matrix over two atoms is a pair of 0/1 slices.
      for (std::size_t lo = 0; lo < slices; ++lo) {
        for (std::size_t hi = 0; hi < slices; ++hi) {
          ValueMatrix mat(2, rows, cols);
          for (int e = 0; e < rows * cols; ++e) {
            mat.set(e / cols, e % cols, ((lo >> e) & 1U) | (((hi >> e) & 1U) << 1));
          }
          const Element expected = Element(table[lo]) | (Element(table[hi]) << 1);
          ASSERT_EQ(rhs_atomwise(mat).value, expected) << matrix_to_text(mat);
        }
      }
    }
  }
  // t(0) = 1, t(d+1) = 1 + 3 t(d) + 3 t(d)^2.
  EXPECT_EQ(trees_3x3, 86191u);
}

TEST(BooleanIdentity, Monotone) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    auto mat = random_matrix(rng, 4, 1 + rng() % 5, 1 + rng() % 5);
    const Element before_l = lhs(mat);
    const Element before_r = rhs_atomwise(mat).value;
    const std::size_t n = rng() % mat.rows();
    const std::size_t m = rng() % mat.cols();
    mat.set(n, m, mat.at(n, m) | (rng() & mat.top()));
    EXPECT_EQ(lhs(mat) & before_l, before_l);
    EXPECT_EQ(rhs_atomwise(mat).value & before_r, before_r);
  }
}

TEST(BooleanIdentity, AtomOrderDoesNotMatter) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto mat = random_matrix(rng, 6, 4, 3);
    std::vector<unsigned> perm(6);
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto permute = [&](Element e) {
      Element out = 0;
      for (unsigned a = 0; a < 6; ++a) out |= ((e >> a) & 1U) << perm[a];
      return out;
    };
    ValueMatrix p(6, 4, 3);
    for (std::size_t n = 0; n < 4; ++n) {
      for (std::size_t m = 0; m < 3; ++m) p.set(n, m, permute(mat.at(n, m)));
    }
    EXPECT_EQ(rhs_atomwise(p).value, permute(rhs_atomwise(mat).value));
  }
}

TEST(BooleanIdentity, TreeBoundNeverExceedsLhs) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    const auto mat = random_matrix(rng, 1 + rng() % 8, 1 + rng() % 5, 1 + rng() % 5);
    std::vector<IndexTree> sample;
    for (int t = 0; t < 20; ++t) sample.push_back(random_binary_tree(rng, mat.rows(), mat.cols()));
    EXPECT_EQ(rhs_tree_lower_bound(mat, sample) & ~lhs(mat), Element{0});
  }
}

TEST(BooleanIdentity, RandomTreesAreBinaryAndFull) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const auto t = random_binary_tree(rng, 4, 3);
    const auto T = finite_tree(t);
    EXPECT_TRUE(trees::is_prefix_closed(T));
    for (const auto& s : T.nodes()) {
      const auto kids = T.successors(s);
      EXPECT_LE(kids.size(), 2u);
      EXPECT_EQ(kids.empty(), s.size() == 4);
    }
    const auto back = index_tree(T, 4, 3);
    const auto mat = random_matrix(rng, 5, 4, 3);
    EXPECT_EQ(tree_value(mat, back), tree_value(mat, t));
  }
}

TEST(BooleanIdentity, MatrixText) {
  std::mt19937_64 rng(1);
  const auto mat = random_matrix(rng, 8, 3, 4);
  std::istringstream in(matrix_to_text(mat));
  EXPECT_EQ(read_matrix(in), mat);
  std::istringstream hex("2 1 2\n0x3 0x1\n");
  EXPECT_EQ(read_matrix(hex), make(2, {{3, 1}}));
  std::istringstream shortfile("2 2 2\n1 2 3\n");
  EXPECT_THROW(read_matrix(shortfile), std::invalid_argument);
  std::istringstream wide("2 1 1\n4\n");
  EXPECT_THROW(read_matrix(wide), std::invalid_argument);
  std::istringstream junk("2 1 1\nx\n");
  EXPECT_THROW(read_matrix(junk), std::invalid_argument);
}

TEST(BooleanIdentity, FuzzKernelsAgree) {
  const FuzzConfig c{.atoms = 3, .rows = 4, .cols = 4, .cases = 1000, .seed = 7, .trees = 10};
  const auto s = fuzz_identity_serial(c);
  const auto p = fuzz_identity_parallel(c);
  EXPECT_EQ(s.failures, 0u);
  EXPECT_EQ(p.failures, 0u);
  EXPECT_EQ(s.cases, 1000u);
  EXPECT_NE(splitmix(7, 0), splitmix(7, 1));
  EXPECT_NE(splitmix(7, 0), splitmix(8, 0));
  EXPECT_THROW(fuzz_identity_serial({.rows = 0}), std::invalid_argument);
}
