#include "gradual/bag.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace gradual;
using gradual::testing::figure1_bag;

TEST(Bag, ParentVectorOfFigureOneArgumentB) {
  const Bag bag = figure1_bag();
  ParentVector expected(3);
  expected << -1, 0, 1;
  EXPECT_EQ(parent_vector(bag, 1), expected);
  EXPECT_EQ(bag.indegree(1), 2);
}

TEST(Bag, ParentVectorWithoutParentsIsZero) {
  const Bag bag = figure1_bag();
  EXPECT_EQ(parent_vector(bag, 0), ParentVector::Zero(3));
}

TEST(Bag, ParentVectorOfFamilyMember) {
  const Bag bag = generate_family(1, 0.9, 0.1);
  ParentVector expected(2);
  expected << -1, 1;  // self-attack, support from b1
  EXPECT_EQ(parent_vector(bag, 0), expected);
}

TEST(Bag, ParentVectorIndexOutOfRange) {
  const Bag bag = figure1_bag();
  EXPECT_THROW(parent_vector(bag, 3), std::out_of_range);
  EXPECT_THROW(parent_vector(bag, -1), std::out_of_range);
}

TEST(Bag, RejectsInvalidConstruction) {
  StrengthVector w(2);
  w << 0.5, 1.5;
  EXPECT_THROW(Bag({"a", "b"}, w, {}, {}), BagError);

  w << 0.5, 0.5;
  EXPECT_THROW(Bag({"a", "a"}, w, {}, {}), BagError);
  EXPECT_THROW(Bag({"a", "b"}, w, {{0, 2}}, {}), BagError);
  EXPECT_THROW(Bag({"a", "b"}, w, {{0, 1}}, {{0, 1}}), BagError);
  // Self-attack plus self-support on the same argument is the same collision.
  EXPECT_THROW(Bag({"a", "b"}, w, {{0, 0}}, {{0, 0}}), BagError);
}

TEST(Bag, DuplicateEdgesCollapse) {
  StrengthVector w(2);
  w << 0.5, 0.5;
  const Bag bag({"a", "b"}, w, {{0, 1}, {0, 1}}, {});
  EXPECT_EQ(bag.attacks().size(), 1u);
  EXPECT_EQ(bag.indegree(1), 1);
}

TEST(TopologicalOrder, Chain) {
  StrengthVector w = StrengthVector::Constant(3, 0.5);
  const Bag bag({"c", "a", "b"}, w, {{1, 2}}, {{2, 0}});  // a -> b -> c
  const auto order = topological_order(bag);
  ASSERT_TRUE(order.has_value());
  EXPECT_EQ(*order, (std::vector<Index>{1, 2, 0}));
}

TEST(TopologicalOrder, EdgelessUsesIndexOrder) {
  const auto order = topological_order(gradual::testing::edgeless(3));
  ASSERT_TRUE(order.has_value());
  EXPECT_EQ(*order, (std::vector<Index>{0, 1, 2}));
}

TEST(TopologicalOrder, SelfAttackIsCyclic) {
  EXPECT_FALSE(topological_order(generate_family(1, 0.9, 0.1)).has_value());
  EXPECT_FALSE(is_acyclic(figure1_bag()));  // b and c support each other
}

TEST(MaxIndegree, Basics) {
  EXPECT_EQ(max_indegree(gradual::testing::edgeless(4)), 0);
  EXPECT_EQ(max_indegree(generate_star(10, 0.9, 0.9)), 10);
  for (int k : {1, 2, 3}) EXPECT_EQ(max_indegree(generate_family(k, 0.5, 0.5)), 2 * k);
}

TEST(BagProperties, RandomBags) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const bool acyclic = trial % 2 == 0;
    const Bag bag = gradual::testing::random_bag(rng, 12, 0.3, acyclic);

    // Parent vectors agree with the edge sets, and indegree is the l1 norm.
    Index d = 0;
    for (Index i = 0; i < bag.size(); ++i) {
      const ParentVector g = parent_vector(bag, i);
      for (Index j = 0; j < bag.size(); ++j) {
        const bool att = std::binary_search(bag.attacks().begin(), bag.attacks().end(), Edge{j, i});
        const bool sup =
            std::binary_search(bag.supports().begin(), bag.supports().end(), Edge{j, i});
        EXPECT_EQ(g(j), att ? -1 : (sup ? 1 : 0));
      }
      EXPECT_EQ(g.cwiseAbs().sum(), bag.indegree(i));
      d = std::max<Index>(d, g.cwiseAbs().sum());
    }
    EXPECT_EQ(max_indegree(bag), d);

    const auto order = topological_order(bag);
    if (acyclic) ASSERT_TRUE(order.has_value());
    if (order) {
      std::vector<Index> position(static_cast<std::size_t>(bag.size()));
      for (std::size_t k = 0; k < order->size(); ++k) position[static_cast<std::size_t>((*order)[k])] = static_cast<Index>(k);
      for (const auto& edges : {bag.attacks(), bag.supports()}) {
        for (const auto& [u, v] : edges) {
          EXPECT_LT(position[static_cast<std::size_t>(u)], position[static_cast<std::size_t>(v)]);
        }
      }
    }
  }
}
