#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "ybx/canonical.hpp"
#include "ybx/congruence.hpp"
#include "ybx/construct.hpp"
#include "ybx/cycleset.hpp"

using namespace ybx;

namespace {

using Kind = AxiomViolation::Kind;

std::optional<Kind> violation_kind(std::size_t n, std::vector<Point> t) {
  auto v = check_cycle_set(n, t);
  if (!v) return std::nullopt;
  return v->kind;
}

CycleSet relabel(CycleSet const& x, std::vector<Point> const& f) {
  std::size_t n = x.size();
  std::vector<Point> t(n * n);
  for (Point a = 0; a < n; ++a)
    for (Point b = 0; b < n; ++b) t[f[a] * n + f[b]] = f[x.op(a, b)];
  return CycleSet::from_table(n, t);
}

std::vector<CycleSet> small_examples() {
  return {trivial_shift(1), trivial_shift(2), trivial_shift(5), esfin3_I(),
          rump_singular8(), latin_2x_minus_y(4), direct_product(trivial_shift(2), trivial_shift(3))};
}

}  // namespace

TEST(Validate, TrivialShiftAndI) {
  EXPECT_NO_THROW(trivial_shift(5));
  auto x = esfin3_I();
  EXPECT_EQ(x.size(), 4u);
  EXPECT_EQ(x.sigma(0).to_string(), "(0 3)");
  EXPECT_EQ(x.sigma(1).to_string(), "(0 2 3 1)");
  EXPECT_TRUE(oracle::is_cycle_set(4, x.table()));
}

TEST(Validate, RepeatedRowEntry) {
  EXPECT_EQ(violation_kind(2, {0, 0, 0, 1}), Kind::row_not_bijective);
  try {
    CycleSet::from_rows({{0, 0}, {0, 1}});
    FAIL() << "accepted a non-bijective row";
  } catch (CycleSetError const& e) {
    EXPECT_EQ(e.violation().kind, Kind::row_not_bijective);
    EXPECT_EQ(e.violation().x, 0u);
  }
}

TEST(Validate, OtherFailures) {
  EXPECT_EQ(violation_kind(2, {0, 1, 0}), Kind::shape);
  EXPECT_EQ(violation_kind(2, {0, 2, 0, 1}), Kind::entry_range);
  // sigma_0 = id, sigma_1 = swap: degenerate, but finite tables like this
  // already break the law
  EXPECT_EQ(violation_kind(2, {0, 1, 1, 0}), Kind::law);
  // 2x - y mod 3 is not a cycle set
  std::vector<Point> t(9);
  for (Point a = 0; a < 3; ++a)
    for (Point b = 0; b < 3; ++b) t[a * 3 + b] = (2 * a + 3 - b) % 3;
  auto v = check_cycle_set(3, t);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, Kind::law);
  EXPECT_FALSE(oracle::is_cycle_set(3, t));
}

TEST(Validate, AgreesWithOracleOnRandomTables) {
  std::mt19937 rng(5);
  int valid = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    std::size_t n = 2 + trial % 3;
    std::vector<Point> t;
    for (Point x = 0; x < n; ++x) {
      std::vector<Point> r(n);
      std::iota(r.begin(), r.end(), Point{0});
      std::shuffle(r.begin(), r.end(), rng);
      t.insert(t.end(), r.begin(), r.end());
    }
    bool ok = !check_cycle_set(n, t);
    ASSERT_EQ(ok, oracle::is_cycle_set(n, t));
    valid += ok;
  }
  EXPECT_GT(valid, 0);
}

TEST(Solution, TrivialShiftOnZ2) {
  auto s = to_solution(trivial_shift(2));
  // sigma_0^{-1}(0) = 1 and 1.0 = 1
  EXPECT_EQ(s(0, 0), (std::pair<Point, Point>{1, 1}));
}

TEST(Solution, RoundTripAndIdentities) {
  for (auto const& x : small_examples()) {
    auto s = to_solution(x);
    EXPECT_TRUE(is_involutive(s));
    EXPECT_TRUE(satisfies_braid_relation(s));
    EXPECT_EQ(from_solution(s), x);
  }
}

TEST(Solution, RInvolutiveOnAllPairsOfI) {
  auto s = to_solution(esfin3_I());
  std::size_t pairs = 0;
  for (Point a = 0; a < 4; ++a)
    for (Point b = 0; b < 4; ++b) {
      auto [u, v] = s(a, b);
      EXPECT_EQ(s(u, v), (std::pair<Point, Point>{a, b}));
      ++pairs;
    }
  EXPECT_EQ(pairs, 16u);
}

TEST(Solution, RejectsNonInvolutive) {
  // r(x,y) = (y+1, x): r(r(0,0)) = r(1,0) = (1,1)
  Solution s{2, {{1, 0}, {0, 0}, {1, 1}, {0, 1}}};
  EXPECT_FALSE(is_involutive(s));
  EXPECT_THROW(from_solution(s), ValidationError);
}

TEST(Groups, AgainstClosure) {
  for (auto const& x : small_examples()) {
    auto g = oracle::group(x.size(), x.table());
    auto d = oracle::displacements(x.size(), x.table());
    EXPECT_EQ(permutation_group(x).order(), g.size());
    EXPECT_EQ(displacement_group(x).order(), d.size());
    EXPECT_EQ(is_indecomposable(x), oracle::orbit_count(x.size(), g) == 1);
  }
}

TEST(Groups, Examples) {
  EXPECT_EQ(permutation_group(rump_singular8()).order(), 24u);
  EXPECT_TRUE(displacement_group(trivial_shift(6)).is_trivial());
  EXPECT_TRUE(is_transitive(displacement_group(esfin3_I())));
}

TEST(Predicates, Basic) {
  auto z5 = trivial_shift(5);
  EXPECT_TRUE(is_trivial(z5));
  EXPECT_TRUE(is_indecomposable(z5));
  EXPECT_TRUE(is_primitive_cycle_set(z5));
  EXPECT_FALSE(has_fixed_point(z5));
  EXPECT_FALSE(is_latin(z5));

  auto l4 = CycleSet::from_rows({{0, 1, 3, 2}, {2, 3, 1, 0}, {1, 0, 2, 3}, {3, 2, 0, 1}});
  EXPECT_TRUE(is_latin(l4));
  EXPECT_TRUE(is_indecomposable(l4));
  EXPECT_FALSE(is_latin(latin_2x_minus_y(4)));

  auto x = esfin3_I();
  EXPECT_FALSE(is_trivial(x));
  EXPECT_TRUE(has_fixed_point(x));  // sigma_0 = (0 3) fixes 1

  auto dec = direct_product(trivial_shift(2), trivial_shift(3));
  EXPECT_TRUE(is_indecomposable(dec));  // Z/2 x Z/3 shift is cyclic of order 6
  auto two_orbits = trivial_cycle_set(Permutation::from_cycles(4, {{0, 1}, {2, 3}}));
  EXPECT_FALSE(is_indecomposable(two_orbits));
}

TEST(Homomorphism, Checks) {
  auto x = trivial_shift(4);
  auto y = trivial_shift(2);
  CycleSetHom p{x, y, {0, 1, 0, 1}};
  EXPECT_TRUE(p.is_homomorphism());
  EXPECT_TRUE(p.is_surjective());
  CycleSetHom bad{x, y, {0, 0, 1, 1}};
  EXPECT_FALSE(bad.is_homomorphism());
  EXPECT_TRUE(identity_hom(x).is_homomorphism());
}

TEST(Congruence, AllMatchBrutePartitions) {
  for (auto const& x : small_examples()) {
    auto ours = all_congruences(x);
    auto brute = oracle::congruences(x.size(), x.table());
    ASSERT_EQ(ours.size(), brute.size()) << "size " << x.size();
    for (auto const& c : ours) EXPECT_TRUE(is_congruence(x, c));
  }
}

TEST(Congruence, PrincipalIsLeast) {
  auto x = rump_singular8();
  for (Point b = 1; b < 8; ++b) {
    auto c = principal_congruence(x, 0, b);
    EXPECT_TRUE(is_congruence(x, c));
    EXPECT_EQ(c.class_of(0), c.class_of(b));
    // every congruence identifying 0 and b is coarser
    for (auto const& d : all_congruences(x)) {
      if (d.class_of(0) != d.class_of(b)) continue;
      for (Point u = 0; u < 8; ++u)
        for (Point v = 0; v < 8; ++v)
          if (c.class_of(u) == c.class_of(v)) EXPECT_EQ(d.class_of(u), d.class_of(v));
    }
  }
}

TEST(Congruence, QuotientMatchesOracle) {
  auto x = rump_singular8();
  for (auto const& c : all_congruences(x)) {
    auto q = quotient(x, c);
    std::vector<Point> lab(c.labels().begin(), c.labels().end());
    EXPECT_EQ(q.set.table(), oracle::quotient(8, x.table(), lab));
    EXPECT_TRUE(q.map.is_epimorphism());
    EXPECT_EQ(kernel(q.map), c);
  }
  auto bad = Congruence::from_labels({0, 0, 1, 1, 2, 2, 3, 3});
  if (!is_congruence(x, bad)) EXPECT_THROW(quotient(x, bad), ValidationError);
}

TEST(Retraction, IrretractableAndLevels) {
  EXPECT_TRUE(is_irretractable(esfin3_I()));
  EXPECT_EQ(retraction(trivial_shift(5)).set.size(), 1u);
  for (auto const& x : small_examples()) {
    EXPECT_EQ(mpl(x), oracle::mpl(x.size(), x.table())) << "size " << x.size();
  }
  EXPECT_EQ(mpl(trivial_shift(5)), 1u);
  EXPECT_FALSE(mpl(esfin3_I()).has_value());
}

TEST(Canonical, InvariantUnderRelabelling) {
  std::mt19937 rng(13);
  for (auto const& x : small_examples()) {
    auto c = canonical_form(x);
    EXPECT_EQ(canonical_form(c), c);
    for (int k = 0; k < 10; ++k) {
      std::vector<Point> f(x.size());
      std::iota(f.begin(), f.end(), Point{0});
      std::shuffle(f.begin(), f.end(), rng);
      auto y = relabel(x, f);
      EXPECT_EQ(canonical_form(y), c);
      auto iso = are_isomorphic(x, y);
      ASSERT_TRUE(iso);
      for (Point a = 0; a < x.size(); ++a)
        for (Point b = 0; b < x.size(); ++b)
          EXPECT_EQ((*iso)(x.op(a, b)), y.op((*iso)(a), (*iso)(b)));
    }
  }
}

TEST(Canonical, DistinguishesAsBruteForceDoes) {
  auto xs = small_examples();
  for (auto const& a : xs)
    for (auto const& b : xs) {
      if (a.size() != b.size() || a.size() > 7) continue;
      bool brute = oracle::isomorphic(a.size(), a.table(), b.table());
      EXPECT_EQ(are_isomorphic(a, b).has_value(), brute);
      EXPECT_EQ(canonical_form(a) == canonical_form(b), brute);
    }
}

TEST(Congruence, SmallExamples) {
  auto z4 = trivial_shift(4);
  auto cs = all_congruences(z4);
  EXPECT_EQ(cs.size(), 3u);
  EXPECT_EQ(oracle::congruences(4, z4.table()).size(), 3u);
  auto parity = Congruence::from_labels({0, 1, 0, 1});
  EXPECT_TRUE(std::find(cs.begin(), cs.end(), parity) != cs.end());
  EXPECT_EQ(quotient(z4, parity).set, trivial_shift(2));
  EXPECT_EQ(quotient(z4, Congruence::full(4)).set.size(), 1u);
  EXPECT_EQ(quotient(z4, Congruence::discrete(4)).set, z4);

  auto i = all_congruences(esfin3_I());
  ASSERT_EQ(i.size(), 2u);
  EXPECT_TRUE(i[0].is_discrete() || i[0].is_full());
  EXPECT_TRUE(i[1].is_discrete() || i[1].is_full());
}

TEST(Congruence, JoinIsCongruence) {
  auto x = direct_product(trivial_shift(2), trivial_shift(4));
  auto cs = all_congruences(x);
  for (auto const& a : cs)
    for (auto const& b : cs) {
      auto j = join(x, a, b);
      EXPECT_TRUE(is_congruence(x, j));
      EXPECT_TRUE(std::find(cs.begin(), cs.end(), j) != cs.end());
    }
}
