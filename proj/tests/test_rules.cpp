#include <gtest/gtest.h>

#include <set>

#include "symdyn/error.hpp"
#include "symdyn/rules.hpp"

using namespace symdyn;

namespace {

TEST(Rule, CodeBitsAreSumTimesTwoPlusCenter) {
  const Rule r = Rule::from_code(3, 86);  // 0b01010110
  EXPECT_EQ(r.next(0, 0), 0u);
  EXPECT_EQ(r.next(0, 1), 1u);
  EXPECT_EQ(r.next(1, 0), 1u);
  EXPECT_EQ(r.next(1, 1), 0u);
  EXPECT_EQ(r.next(3, 0), 1u);
  EXPECT_EQ(r.next(3, 1), 0u);
  EXPECT_THROW(Rule::from_code(3, 256), Error);
  EXPECT_THROW(Rule::from_code(0, 0), Error);
}

// Rule numbers with their B/S and polynomial forms as listed for the
// 3-valent reversible rules.
struct Listed {
  std::uint64_t code;
  const char* bs;
  const char* poly;
};

class ListedRules : public ::testing::TestWithParam<Listed> {};

TEST_P(ListedRules, ThreeViewsAgree) {
  const auto& l = GetParam();
  const Rule r = Rule::from_code(3, l.code);
  EXPECT_EQ(r.birth_survival(), l.bs);
  EXPECT_EQ(parse_rule(l.bs, 3), r);
  EXPECT_EQ(rule_to_gf2_polynomial(r), l.poly);
}

INSTANTIATE_TEST_SUITE_P(
    Catalogue, ListedRules,
    ::testing::Values(Listed{86, "B123/S0", "x4 + σ3 + σ2 + σ1"}, Listed{85, "B0123/S", "x4 + 1"},
                      Listed{170, "B/S0123", "x4"},
                      Listed{43, "B0/S012", "x4(σ2 + σ1) + σ3 + σ2 + σ1 + 1"},
                      Listed{51, "B02/S02", "σ1 + 1"}, Listed{77, "B013/S1", "x4(σ2 + σ1 + 1) + σ3 + σ2 + 1"},
                      Listed{178, "B2/S023", "x4(σ2 + σ1 + 1) + σ3 + σ2"}, Listed{204, "B13/S13", "σ1"},
                      Listed{212, "B123/S3", "x4(σ2 + σ1) + σ3 + σ2 + σ1"}));

TEST(Gf2Polynomial, AgreesWithTableOnEveryInput) {
  for (int k : {2, 3, 4}) {
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (2 * k + 2)); ++code) {
      const Rule r = Rule::from_code(k, code);
      const Gf2Polynomial p(r);
      for (std::uint32_t m = 0; m < (1u << k); ++m)
        for (unsigned c = 0; c < 2; ++c) {
          std::vector<unsigned> outer(k);
          int sum = 0;
          for (int i = 0; i < k; ++i) sum += static_cast<int>(outer[i] = (m >> i) & 1u);
          ASSERT_EQ(p.evaluate(outer, c), r.next(sum, c)) << "k=" << k << " code=" << code;
        }
    }
  }
}

TEST(Gf2Polynomial, ZeroRule) { EXPECT_EQ(rule_to_gf2_polynomial(Rule::from_code(3, 0)), "0"); }

TEST(Counting, ThreeValentBinary) {
  EXPECT_EQ(count_rules(3, 2), BigInt(256));
  EXPECT_EQ(count_classes(3), BigInt(136));
}

TEST(Counting, MatchesMultisetEnumeration) {
  // Symmetric rules over q values: one output per (multiset of k outer
  // values, center value) input.
  for (int k : {1, 2, 3, 4})
    for (unsigned q : {2u, 3u}) {
      std::set<std::vector<unsigned>> inputs;
      std::vector<unsigned> x(k, 0);
      std::uint64_t tuples = 1;
      for (int i = 0; i < k; ++i) tuples *= q;
      for (std::uint64_t t = 0; t < tuples; ++t) {
        std::uint64_t r = t;
        for (int i = 0; i < k; ++i, r /= q) x[i] = static_cast<unsigned>(r % q);
        auto sorted = x;
        std::sort(sorted.begin(), sorted.end());
        inputs.insert(sorted);
      }
      EXPECT_EQ(count_rules(k, q), big_pow(BigInt(q), static_cast<unsigned>(inputs.size() * q)));
    }
}

TEST(Counting, ClassesByExplicitPairing) {
  for (int k : {1, 2, 3, 4, 5}) {
    std::set<std::uint64_t> classes;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (2 * k + 2)); ++code) {
      const std::uint64_t conj = value_swap_conjugate(Rule::from_code(k, code)).code();
      classes.insert(std::min(code, conj));
    }
    EXPECT_EQ(count_classes(k), BigInt(classes.size())) << k;
    EXPECT_EQ(count_classes(k), (BigInt(1) << (2 * k + 1)) + (BigInt(1) << k));
  }
}

TEST(ValueSwap, IsAnInvolution) {
  for (std::uint64_t code = 0; code < 256; ++code) {
    const Rule r = Rule::from_code(3, code);
    const Rule c = value_swap_conjugate(r);
    EXPECT_EQ(value_swap_conjugate(c), r);
    for (int s = 0; s <= 3; ++s)
      for (unsigned x = 0; x < 2; ++x) EXPECT_EQ(c.next(s, x), 1u - r.next(3 - s, 1u - x));
  }
  EXPECT_EQ(value_swap_conjugate(Rule::from_code(3, 85)).code(), 85u);
  EXPECT_EQ(value_swap_conjugate(Rule::from_code(3, 170)).code(), 170u);
}

TEST(ClassRepresentatives, PartitionAllCodes) {
  const auto reps = class_representatives(3);
  ASSERT_EQ(reps.size(), 136u);
  std::set<std::uint64_t> covered;
  for (const Rule& r : reps) {
    covered.insert(r.code());
    covered.insert(value_swap_conjugate(r).code());
  }
  EXPECT_EQ(covered.size(), 256u);
  for (std::size_t i = 1; i < reps.size(); ++i) EXPECT_LT(reps[i - 1].code(), reps[i].code());
  EXPECT_EQ(class_representatives(5).size(), 2080u);
}

TEST(ParseRule, Notations) {
  EXPECT_EQ(parse_rule("B3/S23", 8).code(), 224u);
  EXPECT_EQ(parse_rule("b3/s23", 8).code(), 224u);
  EXPECT_EQ(parse_rule(" 86 ", 3).code(), 86u);
  EXPECT_EQ(parse_rule("B1,10/S", 12), Rule::from_birth_survival(12, {1, 10}, {}));
  EXPECT_EQ(Rule::from_birth_survival(12, {1, 10}, {}).birth_survival(), "B1,10/S");
  EXPECT_THROW(parse_rule("B4/S", 3), Error);
  EXPECT_THROW(parse_rule("B3", 3), Error);
  EXPECT_THROW(parse_rule("life", 3), Error);
  EXPECT_THROW(parse_rule("", 3), Error);
  EXPECT_THROW(parse_rule("300", 3), Error);
}

}  // namespace
