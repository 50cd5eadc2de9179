#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace progressive;
using namespace progressive::testing;

TEST(Domain, FullDomainHasCanonicalSetOrder) {
  const auto d = abc();
  ASSERT_EQ(d->num_sets(), 4u);
  EXPECT_TRUE(d->is_full());
  EXPECT_EQ(d->set_to_string(d->set(0)), "{a,b,c}");
  EXPECT_EQ(d->set_to_string(d->set(1)), "{a,b}");
  EXPECT_EQ(d->set_to_string(d->set(2)), "{a,c}");
  EXPECT_EQ(d->set_to_string(d->set(3)), "{b,c}");
  EXPECT_EQ(Domain::full(4)->num_sets(), 11u);
}

TEST(Domain, RejectsBadSets) {
  EXPECT_THROW(Domain({"a", "b"}, {0b01}), PreconditionError);
  EXPECT_THROW(Domain({"a", "b"}, {0b11, 0b11}), PreconditionError);
  EXPECT_THROW(Domain({"a", "b"}, {0b111}), DomainMismatch);
  EXPECT_THROW(Domain({"a", "a"}, {0b11}), ParseError);
  EXPECT_FALSE(Domain({"a", "b", "c"}, {0b011, 0b110}).is_full());
}

TEST(RestrictOrdering, FiltersPreservingOrder) {
  const Ordering abc_order = Ordering::identity(3);
  EXPECT_EQ(restrict_ordering(abc_order, 0b101), (std::vector<Alt>{0, 2}));
  EXPECT_EQ(restrict_ordering(abc_order, 0b110), (std::vector<Alt>{1, 2}));
  EXPECT_EQ(restrict_ordering(abc_order, 0b111), (std::vector<Alt>{0, 1, 2}));
  EXPECT_THROW(restrict_ordering(abc_order, 0b1001), DomainMismatch);
}

TEST(PrimitiveOrderings, ValidatesPerSetRankings) {
  const auto d = abc();
  EXPECT_THROW(PrimitiveOrderings(d, {{0, 1, 2}, {0, 1}, {0, 2}}), DomainMismatch);
  EXPECT_THROW(PrimitiveOrderings(d, {{0, 1, 2}, {0, 1}, {0, 1}, {1, 2}}), PreconditionError);
  EXPECT_THROW(PrimitiveOrderings(d, {{0, 1}, {0, 1}, {0, 2}, {1, 2}}), PreconditionError);
  const auto g = abc_order(d);
  ASSERT_TRUE(g.global().has_value());
  for (std::size_t i = 0; i < d->num_sets(); ++i) EXPECT_EQ(g.ranking(i), restrict_ordering(*g.global(), d->set(i)));
}

TEST(ChoiceFunction, StringNotationAndValidation) {
  const auto d = abc();
  const auto c = fn(d, "baac");
  EXPECT_EQ(c.to_string(), "baac");
  EXPECT_EQ(c.at(0b111), 1);
  EXPECT_EQ(c.at(0b110), 2);
  EXPECT_THROW(fn(d, "caaa"), PreconditionError);  // a is not in {b,c}
  EXPECT_THROW(fn(d, "aaa"), ParseError);
  EXPECT_THROW(fn(d, "aaad"), ParseError);
  EXPECT_THROW(c.at(0b11000), DomainMismatch);
}

TEST(Compare, DominanceRelations) {
  const auto d = abc();
  const auto g = abc_order(d);
  EXPECT_EQ(compare(fn(d, "aaab"), fn(d, "abab"), g), Comparison::Dominates);
  EXPECT_EQ(compare(fn(d, "abab"), fn(d, "aaab"), g), Comparison::DominatedBy);
  EXPECT_EQ(compare(fn(d, "abab"), fn(d, "aaac"), g), Comparison::Incomparable);
  EXPECT_EQ(compare(fn(d, "aaab"), fn(d, "aaab"), g), Comparison::Equal);
}

TEST(Compare, RejectsForeignDomain) {
  const auto d = abc();
  const auto other = Domain::full(std::vector<std::string>{"x", "y", "z"});
  EXPECT_THROW(compare(fn(d, "aaab"), fn(other, "xxxy"), abc_order(d)), DomainMismatch);
  EXPECT_THROW(join(fn(d, "aaab"), fn(d, "aaab"), abc_order(other)), DomainMismatch);
}

TEST(JoinMeet, PointwiseBestAndWorst) {
  const auto d = abc();
  const auto g = abc_order(d);
  EXPECT_EQ(join(fn(d, "bbab"), fn(d, "cacc"), g).to_string(), "baab");
  EXPECT_EQ(meet(fn(d, "bbab"), fn(d, "cacc"), g).to_string(), "cbcc");
  EXPECT_EQ(join(fn(d, "abac"), fn(d, "abac"), g).to_string(), "abac");
}

namespace {

void expect_lattice_laws(const ChoiceFunction& x, const ChoiceFunction& y, const ChoiceFunction& z,
                         const PrimitiveOrderings& ord) {
  EXPECT_EQ(join(x, y, ord), join(y, x, ord));
  EXPECT_EQ(meet(x, y, ord), meet(y, x, ord));
  EXPECT_EQ(join(join(x, y, ord), z, ord), join(x, join(y, z, ord), ord));
  EXPECT_EQ(meet(meet(x, y, ord), z, ord), meet(x, meet(y, z, ord), ord));
  EXPECT_EQ(join(x, x, ord), x);
  EXPECT_EQ(meet(x, x, ord), x);
  EXPECT_EQ(join(x, meet(x, y, ord), ord), x);
  EXPECT_EQ(meet(x, join(x, y, ord), ord), x);
  EXPECT_TRUE(dominates_or_equal(join(x, y, ord), x, ord));
  EXPECT_TRUE(dominates_or_equal(x, meet(x, y, ord), ord));
}

}  // namespace

TEST(JoinMeet, LatticeLawsExhaustiveThreeAlternatives) {
  const auto d = abc();
  const auto all = all_choice_functions(d);
  std::mt19937_64 rng(31);
  for (const auto& ord : {abc_order(d), random_per_set(rng, d)}) {
    for (const auto& x : all) {
      for (const auto& y : all) {
        for (const auto& z : all) expect_lattice_laws(x, y, z, ord);
      }
    }
  }
}

TEST(JoinMeet, LatticeLawsRandomFourAndFive) {
  std::mt19937_64 rng(32);
  for (std::size_t n : {4, 5}) {
    const auto d = Domain::full(n);
    for (int k = 0; k < 300; ++k) {
      const auto ord = k % 2 ? global(d, random_ordering(rng, n)) : random_per_set(rng, d);
      expect_lattice_laws(random_function(rng, d), random_function(rng, d), random_function(rng, d), ord);
    }
  }
}

TEST(Compare, AntisymmetricAndTransitiveExhaustive) {
  const auto d = abc();
  const auto g = abc_order(d);
  const auto all = all_choice_functions(d);
  for (const auto& x : all) {
    EXPECT_EQ(compare(x, x, g), Comparison::Equal);
    for (const auto& y : all) {
      const auto xy = compare(x, y, g);
      const auto yx = compare(y, x, g);
      EXPECT_EQ(xy == Comparison::Dominates, yx == Comparison::DominatedBy);
      EXPECT_EQ(xy == Comparison::Incomparable, yx == Comparison::Incomparable);
      if (xy != Comparison::Dominates) continue;
      for (const auto& z : all) {
        if (compare(y, z, g) == Comparison::Dominates) EXPECT_EQ(compare(x, z, g), Comparison::Dominates);
      }
    }
  }
}

TEST(Ordering, InverseAndFormatting) {
  const auto d = abc();
  const Ordering o({1, 0, 2});
  EXPECT_EQ(o.to_string(*d), "b>a>c");
  EXPECT_EQ(o.inverse().to_string(*d), "c>a>b");
  EXPECT_TRUE(o.better(1, 2));
  EXPECT_THROW(Ordering({0, 0, 1}), PreconditionError);
}
