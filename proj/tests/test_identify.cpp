#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace progressive;
using namespace progressive::testing;

namespace {

std::vector<Ordering> scan_theta_orders(const ChoiceModel& mu) {
  std::vector<Ordering> out;
  for (const auto& o : all_orderings(mu.domain()->size())) {
    bool inside = true;
    for (const auto& c : mu) inside = inside && satisfies_theta(c, o).ok;
    if (inside) out.push_back(o);
  }
  return out;
}

std::vector<Ordering> both_ways(const Ordering& o) {
  std::vector<Ordering> v{o, o.inverse()};
  std::sort(v.begin(), v.end());
  return v;
}

BetweennessRelation random_relation(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  BetweennessRelation rel(n);
  for (std::size_t t = 0; t < k; ++t) {
    const auto y = static_cast<Alt>(draw(rng, n));
    const auto x = static_cast<Alt>(draw(rng, n));
    const auto z = static_cast<Alt>(draw(rng, n));
    if (x != y && y != z && x != z) rel.insert(y, x, z);
  }
  return rel;
}

}  // namespace

TEST(Betweenness, Examples) {
  const auto d = abc();
  const auto single = betweenness(model(d, {"baab"}));
  EXPECT_TRUE(single.between(1, 0, 2));
  EXPECT_TRUE(single.between(1, 2, 0));
  EXPECT_TRUE(betweenness(model(d, {"aaab"})).empty());
  const auto theta = betweenness(theta_model(d, Ordering::identity(3)));
  EXPECT_EQ(theta.triples(), (std::set<Triple>{Triple::make(1, 0, 2)}));
}

TEST(Betweenness, TripleCanonicalForm) {
  EXPECT_EQ(Triple::make(1, 2, 0), Triple::make(1, 0, 2));
  EXPECT_THROW(Triple::make(1, 1, 2), PreconditionError);
  BetweennessRelation rel(3);
  rel.insert(0, 2, 1);
  EXPECT_TRUE(rel.between(0, 1, 2));
  EXPECT_EQ(rel.comparisons(2, 0, 1), 1);
}

TEST(CheckAxioms, Examples) {
  const auto r3 = check_axioms(betweenness(theta_model(abc(), Ordering::identity(3))));
  EXPECT_TRUE(r3.b1 && r3.sb1 && r3.b2 && r3.b3);

  BetweennessRelation twice(3);
  twice.insert(1, 0, 2);
  twice.insert(0, 1, 2);
  const auto r = check_axioms(twice);
  EXPECT_FALSE(r.b1);
  EXPECT_FALSE(r.sb1);
  ASSERT_TRUE(r.b1_triple);
  EXPECT_EQ(*r.b1_triple, (std::array<Alt, 3>{0, 1, 2}));

  const auto empty = check_axioms(BetweennessRelation(3));
  EXPECT_TRUE(empty.b1_to_b3());
  EXPECT_FALSE(empty.sb1);
}

TEST(CheckAxioms, ThetaModelsOfFourAlternativesSatisfyAll) {
  const auto d = Domain::full(4);
  for (const auto& o : all_orderings(4)) {
    const auto r = check_axioms(betweenness(theta_model(d, o)));
    EXPECT_TRUE(r.b1 && r.sb1 && r.b2 && r.b3) << o.to_string(*d);
  }
}

TEST(CheckAxioms, StrongFormImpliesWeakForm) {
  std::mt19937_64 rng(71);
  for (int k = 0; k < 3000; ++k) {
    const auto r = check_axioms(random_relation(rng, 4 + k % 3, 2 + draw(rng, 20)));
    if (r.sb1) EXPECT_TRUE(r.b1);
  }
}

TEST(CheckAxioms, BetweennessAxiomsMatchOrderedLineForFullRelations) {
  for (const auto& o : all_orderings(5)) {
    BetweennessRelation rel(5);
    const auto& r = o.ranking();
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = i + 1; j < 5; ++j) {
        for (std::size_t k = j + 1; k < 5; ++k) rel.insert(r[j], r[i], r[k]);
      }
    }
    const auto report = check_axioms(rel);
    EXPECT_TRUE(report.sb1 && report.b2 && report.b3);
    EXPECT_TRUE(agrees(rel, o));
    EXPECT_EQ(all_agreeing_orderings(rel), both_ways(o));
  }
}

TEST(LocalOrdering, Examples) {
  BetweennessRelation one(4);
  one.insert(1, 0, 2);
  const auto local = local_ordering(one, {3, 2, 1, 0});
  ASSERT_TRUE(local);
  const auto pos = [&](Alt v) { return std::find(local->begin(), local->end(), v) - local->begin(); };
  EXPECT_TRUE((pos(0) < pos(1) && pos(1) < pos(2)) || (pos(2) < pos(1) && pos(1) < pos(0)));

  BetweennessRelation contradictory(4);
  contradictory.insert(1, 0, 2);
  contradictory.insert(0, 1, 2);
  EXPECT_FALSE(local_ordering(contradictory, {0, 1, 2, 3}));
  EXPECT_THROW(local_ordering(one, {0, 1, 1, 3}), PreconditionError);
}

TEST(LocalOrdering, ExistsWheneverAxiomsHold) {
  std::mt19937_64 rng(72);
  int passing = 0;
  for (int k = 0; k < 200000 && passing < 10000; ++k) {
    const std::size_t n = 4 + k % 3;
    const auto rel = random_relation(rng, n, 1 + draw(rng, 6));
    if (!check_axioms(rel).b1_to_b3()) continue;
    ++passing;
    for (Alt a = 0; a < n; ++a) {
      for (Alt b = a + 1; b < n; ++b) {
        for (Alt c = b + 1; c < n; ++c) {
          for (Alt e = c + 1; e < n; ++e) ASSERT_TRUE(local_ordering(rel, {a, b, c, e}));
        }
      }
    }
  }
  EXPECT_GE(passing, 10000);
}

TEST(FindAgreeingOrdering, Examples) {
  const auto d = abc();
  const auto found = find_agreeing_ordering(betweenness(theta_model(d, Ordering::identity(3))));
  ASSERT_TRUE(found);
  EXPECT_TRUE(*found == Ordering::identity(3) || *found == Ordering::identity(3).inverse());
  EXPECT_EQ(find_agreeing_ordering(BetweennessRelation(4)), Ordering::identity(4));
  BetweennessRelation contradictory(3);
  contradictory.insert(1, 0, 2);
  contradictory.insert(0, 1, 2);
  EXPECT_FALSE(find_agreeing_ordering(contradictory));
}

TEST(FindAgreeingOrdering, SearchMatchesScanOfAllOrders) {
  std::mt19937_64 rng(73);
  for (int k = 0; k < 400; ++k) {
    const std::size_t n = 3 + k % 4;
    const auto rel = random_relation(rng, n, draw(rng, 2 * n));
    std::vector<Ordering> scanned;
    for (const auto& o : all_orderings(n)) {
      if (agrees(rel, o)) scanned.push_back(o);
    }
    EXPECT_EQ(all_agreeing_orderings(rel), scanned);
    const auto first = find_agreeing_ordering(rel);
    EXPECT_EQ(first.has_value(), !scanned.empty());
    if (first) EXPECT_EQ(*first, scanned.front());
  }
}

TEST(IdentifyPrimitive, Examples) {
  const auto d = abc();
  EXPECT_EQ(identify_primitive(theta_model(d, Ordering::identity(3))).orderings, both_ways(Ordering::identity(3)));
  const auto single = model(d, {"aaab"});
  const auto id = identify_primitive(single);
  EXPECT_GT(id.orderings.size(), 2u);
  EXPECT_EQ(id.orderings, scan_theta_orders(single));
  const auto d4 = Domain::full(4);
  const auto bad = io::parse_ordering_string(*d4, "b>a>d>c");
  EXPECT_EQ(identify_primitive(theta_model(d4, bad)).orderings, both_ways(bad));
  const auto d7 = Domain::full(7);
  EXPECT_THROW(identify_primitive(ChoiceModel(d7, {ChoiceFunction::maximizer(d7, Ordering::identity(7))})), GuardExceeded);
}

TEST(IdentifyPrimitive, AxiomsDecideExistenceForThetaSubmodels) {
  const auto d = abc();
  const auto theta = theta_model(d, Ordering::identity(3)).functions();
  const std::size_t m = theta.size();
  int checked = 0;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    if (std::popcount(mask) > 4) continue;
    std::vector<ChoiceFunction> fs;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1u) fs.push_back(theta[i]);
    }
    const auto id = identify_primitive(ChoiceModel(d, fs));
    EXPECT_TRUE(id.axioms.b1_to_b3());
    EXPECT_FALSE(id.orderings.empty());
    ++checked;
  }
  EXPECT_EQ(checked, 12 + 66 + 220 + 495);
}

TEST(IdentifyPrimitive, AxiomsDecideExistenceForRandomModels) {
  std::mt19937_64 rng(74);
  for (std::size_t n : {3, 4}) {
    const auto d = Domain::full(n);
    std::vector<std::vector<ChoiceFunction>> thetas;
    for (const auto& o : all_orderings(n)) thetas.push_back(theta_model(d, o).functions());
    for (int k = 0; k < 1500; ++k) {
      std::vector<ChoiceFunction> fs;
      const auto size = 1 + draw(rng, 4);
      if (k % 2 == 0) {
        const auto& theta = thetas[draw(rng, thetas.size())];
        for (std::size_t t = 0; t < size; ++t) fs.push_back(theta[draw(rng, theta.size())]);
      } else {
        for (std::size_t t = 0; t < size; ++t) fs.push_back(random_function(rng, d));
      }
      const auto id = identify_primitive(ChoiceModel(d, fs));
      EXPECT_EQ(id.axioms.b1_to_b3(), !id.orderings.empty());
      if (id.axioms.sb1 && id.axioms.b3) {
        ASSERT_EQ(id.orderings.size(), 2u);
        EXPECT_EQ(id.orderings[0].inverse(), id.orderings[1]);
      }
    }
  }
}

TEST(IdentifyPrimitive, UniqueOrderWithoutRichBetweenness) {
  // One function already confines the order to a pair of inverses, while its
  // betweenness relation leaves some triples uncompared.
  const auto d = Domain::full(4);
  const auto mu = model(d, {"ccbcdaaacdd"});
  const auto id = identify_primitive(mu);
  ASSERT_EQ(id.orderings.size(), 2u);
  EXPECT_EQ(id.orderings[0].inverse(), id.orderings[1]);
  EXPECT_FALSE(id.axioms.sb1);
  EXPECT_EQ(id.orderings, scan_theta_orders(mu));
}

TEST(IdentifyPrimitive, JoinsAndMeetsOfRationalFunctionsOnFiveAlternatives) {
  std::mt19937_64 rng(75);
  const auto d = Domain::full(5);
  const auto rational = enumerate_rational(d).functions();
  int unique = 0;
  for (int k = 0; k < 30; ++k) {
    const auto o = random_ordering(rng, 5);
    const auto ord = global(d, o);
    std::vector<ChoiceFunction> fs;
    const auto pairs = 2 + draw(rng, 10);
    for (std::size_t t = 0; t < pairs; ++t) {
      const auto& a = rational[draw(rng, rational.size())];
      const auto& b = rational[draw(rng, rational.size())];
      fs.push_back(join(a, b, ord));
      fs.push_back(meet(a, b, ord));
    }
    const auto id = identify_primitive(ChoiceModel(d, fs));
    EXPECT_TRUE(id.axioms.b1_to_b3());
    EXPECT_TRUE(std::binary_search(id.orderings.begin(), id.orderings.end(), o));
    EXPECT_TRUE(std::binary_search(id.orderings.begin(), id.orderings.end(), o.inverse()));
    if (id.axioms.sb1 && id.axioms.b3) {
      EXPECT_EQ(id.orderings, both_ways(o));
      ++unique;
    }
  }
  RecordProperty("unique", unique);
}

TEST(Betweenness, RevealedTriplesFollowAnyContainingOrder) {
  std::mt19937_64 rng(76);
  for (std::size_t n : {4, 5}) {
    const auto d = Domain::full(n);
    const auto rational = enumerate_rational(d).functions();
    for (int k = 0; k < 200; ++k) {
      const auto o = random_ordering(rng, n);
      const auto ord = global(d, o);
      std::vector<ChoiceFunction> fs;
      for (int t = 0; t < 4; ++t) {
        fs.push_back(join(rational[draw(rng, rational.size())], rational[draw(rng, rational.size())], ord));
        fs.push_back(meet(rational[draw(rng, rational.size())], rational[draw(rng, rational.size())], ord));
      }
      const ChoiceModel mu(d, fs);
      ASSERT_TRUE(model_within_theta(mu, o));
      EXPECT_TRUE(agrees(betweenness(mu), o));
    }
  }
}
