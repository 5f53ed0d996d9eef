#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "ybx/perm.hpp"

using namespace ybx;

namespace {

Permutation random_perm(std::size_t n, std::mt19937& rng) {
  std::vector<Point> v(n);
  std::iota(v.begin(), v.end(), Point{0});
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation(v);
}

std::vector<oracle::Images> images_of(std::vector<Permutation> const& ps) {
  std::vector<oracle::Images> out;
  for (auto const& p : ps) out.push_back(p.images());
  return out;
}

}  // namespace

TEST(Permutation, RejectsNonBijection) {
  EXPECT_THROW(Permutation(std::vector<Point>{0, 0, 1}), std::invalid_argument);
  EXPECT_THROW(Permutation(std::vector<Point>{0, 3, 1}), std::invalid_argument);
}

TEST(Permutation, FromCyclesAndBack) {
  auto p = Permutation::from_cycles(5, {{0, 3}, {1, 4, 2}});
  EXPECT_EQ(p.images(), (std::vector<Point>{3, 4, 1, 0, 2}));
  EXPECT_EQ(p.to_string(), "(0 3)(1 4 2)");
  EXPECT_EQ(p.order(), 6u);
  EXPECT_EQ(Permutation(4).to_string(), "()");
  EXPECT_THROW(Permutation::from_cycles(3, {{0, 1}, {1, 2}}), std::invalid_argument);
}

TEST(Permutation, ComposeIsRightToLeft) {
  auto p = Permutation::from_cycles(3, {{0, 1}});
  auto q = Permutation::from_cycles(3, {{1, 2}});
  // p(q(2)) = p(1) = 0
  EXPECT_EQ((p * q)(2), 0u);
  EXPECT_EQ((q * p)(2), 1u);
}

TEST(Permutation, InverseRandom) {
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    auto p = random_perm(9, rng);
    EXPECT_TRUE((p * p.inverse()).is_identity());
    EXPECT_EQ(p.inverse().images(), oracle::inverse(p.images()));
  }
}

TEST(PermutationGroup, SymmetricGroupOrder) {
  PermutationGroup s5(5, {Permutation::from_cycles(5, {{0, 1}}),
                          Permutation::from_cycles(5, {{0, 1, 2, 3, 4}})});
  EXPECT_EQ(s5.order(), 120u);
  EXPECT_EQ(s5.elements().size(), 120u);
  EXPECT_TRUE(std::is_sorted(s5.elements().begin(), s5.elements().end()));
  EXPECT_TRUE(is_primitive(s5));
}

TEST(PermutationGroup, OrderMatchesClosureOnRandomGenerators) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 3 + trial % 5;
    std::vector<Permutation> gens;
    for (int k = 0; k < 1 + trial % 3; ++k) gens.push_back(random_perm(n, rng));
    PermutationGroup g(n, gens);
    auto brute = oracle::closure(n, images_of(gens));
    ASSERT_EQ(g.order(), brute.size());
    ASSERT_EQ(g.elements().size(), brute.size());
    for (auto const& e : g.elements()) ASSERT_TRUE(brute.count(e.images()));
    // membership agrees on random probes
    for (int k = 0; k < 20; ++k) {
      auto p = random_perm(n, rng);
      ASSERT_EQ(g.contains(p), brute.count(p.images()) == 1);
    }
  }
}

TEST(PermutationGroup, OrderWithoutMaterializing) {
  // Sym(12) is far past a small cap but the chain still knows its order.
  PermutationGroup s12(12,
                       {Permutation::from_cycles(12, {{0, 1}}),
                        Permutation::from_cycles(12, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}})},
                       1000);
  EXPECT_EQ(s12.order(), 479001600u);
  EXPECT_EQ(s12.order_primes(), (std::vector<std::size_t>{2, 3, 5, 7, 11}));
  EXPECT_THROW(s12.elements(), CapExceeded);
}

TEST(PermutationGroup, ContainsRejectsWrongDegree) {
  auto g = PermutationGroup::trivial(3);
  EXPECT_FALSE(g.contains(Permutation(4)));
  EXPECT_TRUE(g.contains(Permutation(3)));
}

TEST(PermutationGroup, OrbitsAndBlocks) {
  // <(0 1)(2 3), (0 2)(1 3)> on 6 points: orbits {0,1,2,3}, {4}, {5}
  PermutationGroup v4(6, {Permutation::from_cycles(6, {{0, 1}, {2, 3}}),
                          Permutation::from_cycles(6, {{0, 2}, {1, 3}})});
  auto o = orbits(v4);
  ASSERT_EQ(o.size(), 3u);
  EXPECT_EQ(o[0], (std::vector<Point>{0, 1, 2, 3}));
  EXPECT_FALSE(is_transitive(v4));

  PermutationGroup c4(4, {Permutation::from_cycles(4, {{0, 1, 2, 3}})});
  EXPECT_TRUE(is_transitive(c4));
  EXPECT_FALSE(is_primitive(c4));
  auto lab = minimal_block_system(c4, 0, 2);
  EXPECT_EQ(lab[0], lab[2]);
  EXPECT_EQ(lab[1], lab[3]);
  EXPECT_NE(lab[0], lab[1]);
}

TEST(PermutationGroup, PrimitivityAgainstBrutePartitions) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 4 + trial % 3;
    std::vector<Permutation> gens{random_perm(n, rng)};
    if (trial % 2) gens.push_back(random_perm(n, rng));
    PermutationGroup g(n, gens);
    EXPECT_EQ(is_primitive(g), oracle::is_primitive_group(n, images_of(gens)));
  }
}

TEST(PermutationGroup, NormalStructure) {
  PermutationGroup s4(4, {Permutation::from_cycles(4, {{0, 1}}),
                          Permutation::from_cycles(4, {{0, 1, 2, 3}})});
  PermutationGroup a4(4, {Permutation::from_cycles(4, {{0, 1, 2}}),
                          Permutation::from_cycles(4, {{1, 2, 3}})});
  auto ns = normal_structure(s4, a4);
  EXPECT_TRUE(ns.is_normal);
  EXPECT_EQ(ns.index, 2u);
  EXPECT_TRUE(ns.quotient_is_cyclic);

  PermutationGroup v4(4, {Permutation::from_cycles(4, {{0, 1}, {2, 3}}),
                          Permutation::from_cycles(4, {{0, 2}, {1, 3}})});
  auto ns2 = normal_structure(s4, v4);
  EXPECT_TRUE(ns2.is_normal);
  EXPECT_EQ(ns2.index, 6u);
  EXPECT_FALSE(ns2.quotient_is_cyclic);  // S4/V4 is S3

  PermutationGroup c2(4, {Permutation::from_cycles(4, {{0, 1}})});
  EXPECT_FALSE(normal_structure(s4, c2).is_normal);
}

TEST(PermutationGroup, IntermediateSubgroupsOfS3) {
  PermutationGroup s3(3, {Permutation::from_cycles(3, {{0, 1}}),
                          Permutation::from_cycles(3, {{0, 1, 2}})});
  auto one = PermutationGroup::trivial(3);
  auto subs = intermediate_subgroups(s3, one, s3);
  // three of order 2, one of order 3, S3 itself
  ASSERT_EQ(subs.size(), 5u);
  std::vector<std::size_t> orders;
  for (auto const& h : subs) orders.push_back(h.order());
  EXPECT_EQ(orders, (std::vector<std::size_t>{2, 2, 2, 3, 6}));
}

TEST(PermutationGroup, CoreFree) {
  PermutationGroup s3(3, {Permutation::from_cycles(3, {{0, 1}}),
                          Permutation::from_cycles(3, {{0, 1, 2}})});
  EXPECT_TRUE(core_is_trivial(s3, PermutationGroup(3, {Permutation::from_cycles(3, {{0, 1}})})));
  EXPECT_FALSE(core_is_trivial(s3, PermutationGroup(3, {Permutation::from_cycles(3, {{0, 1, 2}})})));
}
