#include <gtest/gtest.h>

#include "oracles/small_graph.hpp"
#include "radoloc/rado.hpp"

using namespace radoloc;
using rado::Cone;

namespace {
Cone cone(std::initializer_list<std::uint64_t> H, std::initializer_list<std::uint64_t> K) {
  return Cone(make_set(H), make_set(K));
}
}  // namespace

TEST(Rado, AdjacencyExamples) {
  EXPECT_TRUE(rado::adjacent(Natural(0), Natural(1)));
  EXPECT_FALSE(rado::adjacent(Natural(0), Natural(2)));
  EXPECT_FALSE(rado::adjacent(Natural(5), Natural(5)));
}

TEST(Rado, AdjacencyMatchesWordOracleAndIsSymmetric) {
  for (std::uint64_t u = 0; u < 200; ++u) {
    for (std::uint64_t v = 0; v < 200; ++v) {
      EXPECT_EQ(rado::adjacent(Natural(u), Natural(v)), oracle::adjacent(u, v));
      EXPECT_EQ(rado::adjacent(Natural(u), Natural(v)), rado::adjacent(Natural(v), Natural(u)));
    }
  }
}

TEST(Rado, ConeMemberExamples) {
  EXPECT_TRUE(rado::cone_member(Natural(13), cone({0, 1, 2}, {0, 2})));
  EXPECT_TRUE(rado::cone_member(Natural(0), Cone()));
  EXPECT_FALSE(rado::cone_member(Natural(1), cone({0, 1}, {0})));
}

TEST(Rado, ConeRejectsKOutsideH) {
  EXPECT_THROW(cone({}, {0}), std::invalid_argument);
}

TEST(Rado, WitnessExamples) {
  EXPECT_EQ(rado::witness(cone({0, 1, 2}, {0, 2})), Natural(13));
  EXPECT_EQ(rado::witness(Cone()), Natural(1));
  EXPECT_EQ(rado::witness(cone({0}, {0})), Natural(3));
}

TEST(Rado, IntersectionExamples) {
  EXPECT_FALSE(rado::cones_intersect(cone({0}, {}), cone({0, 1}, {0})));
  EXPECT_TRUE(rado::cones_intersect(Cone(), Cone()));
  EXPECT_TRUE(rado::cones_intersect(cone({0, 1}, {0}), cone({1, 2}, {2})));
  EXPECT_EQ(rado::cone_intersection(cone({0, 1}, {0}), cone({1, 2}, {2})), cone({0, 1, 2}, {0, 2}));
  EXPECT_EQ(rado::cone_intersection(Cone(), cone({0}, {0})), cone({0}, {0}));
  EXPECT_FALSE(rado::cone_intersection(cone({0}, {}), cone({0, 1}, {0})).has_value());
}

TEST(Rado, SubsetExamples) {
  EXPECT_TRUE(rado::cone_subset(cone({0, 1}, {0}), cone({0}, {0})));
  EXPECT_TRUE(rado::cone_subset(cone({0}, {}), Cone()));
  EXPECT_FALSE(rado::cone_subset(cone({0, 1}, {1}), cone({0}, {0})));
  EXPECT_TRUE(rado::cone_equal(cone({0, 1}, {1}), cone({1, 0}, {1})));
}

TEST(Rado, ClassifyExamples) {
  EXPECT_TRUE(rado::classify_vertex(Natural(0), make_set({0, 1})).in_H);
  const auto p = rado::classify_vertex(Natural(2), make_set({0, 1}));
  EXPECT_FALSE(p.in_H);
  EXPECT_EQ(p.K, make_set({1}));
  EXPECT_EQ(rado::classify_vertex(Natural(13), make_set({0, 1, 2})).K, make_set({0, 2}));
}

TEST(Rado, WitnessOnHugeVertices) {
  const Natural big = Natural::pow2(Natural::pow2(Natural(70)));
  const Cone c(VertexSet{Natural(4), big}, VertexSet{big});
  const Natural w = rado::witness(c);
  EXPECT_TRUE(rado::cone_member(w, c));
  EXPECT_FALSE(rado::cone_member(big, c));
}

TEST(Rado, JsonRoundTrip) {
  const Natural big = Natural::pow2(Natural(100000));
  const Cone c(VertexSet{Natural(2), big}, VertexSet{Natural(2)});
  const auto j = rado::cone_to_json(c);
  EXPECT_EQ(j.at("H").at(0), "2");
  EXPECT_TRUE(j.at("H").at(1).is_object());
  EXPECT_EQ(rado::cone_from_json(j), c);
}
