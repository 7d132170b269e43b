#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "abcsat/rules.hpp"

using namespace abcsat;

namespace {

Profile P(const char* text, int m) { return parse_profile(text, m); }

// Harmonic prefix accumulated backwards as a plain fraction.
Rational harmonic_backwards(int r) {
  Rational h = 0;
  for (int j = r; j >= 1; --j) h += Rational(1) / j;
  return h;
}

}  // namespace

TEST(Av, Examples) {
  EXPECT_EQ(to_string(av(P("abc,abc,d", 4), {4, 3, 3})), "abc");
  EXPECT_EQ(to_string(av(P("abc,abc,abc,abc,abc,d,d,d,d", 4), {4, 9, 3})), "abc");
  EXPECT_EQ(to_string(av(P("a,b", 2), {2, 2, 1})), "a");
  EXPECT_THROW(av(P("a,a", 3), {3, 2, 2}), std::invalid_argument);
}

TEST(Av, WinnerContainsATopScorer) {
  for (int m = 2; m <= 4; ++m)
    for (int n = 1; n <= 3; ++n)
      for (int k = 1; k < m; ++k) {
        const ElectionParams e{m, n, k};
        for_each_profile(e, true, [&](ProfileRank, const Profile& p) {
          const auto score = approval_scores(p, m);
          const int best = *std::max_element(score.begin(), score.end());
          const Committee w = av(p, e);
          EXPECT_EQ(w.size(), k);
          bool has_top = false;
          for (int c = 0; c < m; ++c) has_top = has_top || (w.contains(c) && score[c] == best);
          EXPECT_TRUE(has_top) << to_string(p);
        });
      }
}

TEST(PavScore, Examples) {
  const auto p = P("abc,abc,abc,abd,abd", 4);
  const ElectionParams e{4, 5, 3};
  EXPECT_EQ(pav_score(p, parse_committee("abc", e)).value, Rational(17, 2));
  EXPECT_EQ(pav_score(p, parse_committee("abd", e)).value, Rational(49, 6));
  EXPECT_EQ(pav_score(P("a,a", 4), parse_committee("bcd", e)).value, Rational(0));
  // oracle: 3*(11/6) + 2*(3/2) and 3*(3/2) + 2*(11/6)
  EXPECT_EQ(Rational(3) * Rational(11, 6) + Rational(2) * Rational(3, 2), Rational(17, 2));
  EXPECT_EQ(Rational(3) * Rational(3, 2) + Rational(2) * Rational(11, 6), Rational(49, 6));
}

TEST(PavScore, LowestTerms) {
  const auto s = pav_score(P("ab,ab", 3), Committee{0b011}).value;
  EXPECT_EQ(numerator(s), 3);
  EXPECT_EQ(denominator(s), 1);
}

TEST(PavScore, MatchesIndependentAccumulation) {
  const ElectionParams e{4, 3, 3};
  const auto ws = enumerate_committees(e);
  for_each_profile(e, false, [&](ProfileRank, const Profile& p) {
    for (Committee w : ws) {
      Rational alt = 0;
      for (auto it = p.rbegin(); it != p.rend(); ++it)
        alt += harmonic_backwards(std::popcount(it->mask & w.mask));
      EXPECT_EQ(pav_score(p, w).value, alt);
    }
  });
}

TEST(Pav, Examples) {
  EXPECT_EQ(to_string(pav(P("abc,abc,abc,abd,abd", 4), {4, 5, 3})), "abc");
  EXPECT_EQ(to_string(pav(P("abc,abc,abc,abd,d", 4), {4, 5, 3})), "abd");
  EXPECT_EQ(to_string(pav(P("a,b", 3), {3, 2, 2})), "ab");
  EXPECT_THROW(pav(P("a,a", 3), {3, 2, 2}), std::invalid_argument);
}

TEST(Pav, AttainsExactMaximumWithLexFirstTieBreak) {
  const ElectionParams e{4, 3, 3};
  const auto ws = enumerate_committees(e);
  for_each_profile(e, true, [&](ProfileRank, const Profile& p) {
    Rational best = -1;
    Committee first{};
    for (Committee w : ws) {
      const auto s = pav_score(p, w).value;
      if (s > best) {
        best = s;
        first = w;
      }
    }
    EXPECT_EQ(pav(p, e), first) << to_string(p);
  });
}

TEST(Rules, AnonymousUnderVoterPermutation) {
  const ElectionParams e{3, 3, 2};
  for_each_profile(e, true, [&](ProfileRank, const Profile& p) {
    auto q = p;
    std::sort(q.begin(), q.end());
    do {
      EXPECT_EQ(av(p, e), av(q, e));
      EXPECT_EQ(pav(p, e), pav(q, e));
    } while (std::next_permutation(q.begin(), q.end()));
  });
}

TEST(BuildTable, Sizes) {
  const auto t = build_table(NamedRule::av, {3, 2, 1});
  EXPECT_EQ(t.defined_count(), 36u);
  EXPECT_TRUE(t.covers_admissible_domain());
  const auto t2 = build_table(NamedRule::av, {2, 1, 1});
  EXPECT_EQ(to_string(t2.at(P("a", 2))), "a");
  EXPECT_EQ(to_string(t2.at(P("b", 2))), "b");
}

TEST(BuildTable, PavAgreesWithPointEvaluation) {
  const ElectionParams e{4, 3, 3};
  const auto t = build_table(NamedRule::pav, e);
  EXPECT_TRUE(t.covers_admissible_domain());
  std::mt19937_64 rng(11);
  int checked = 0;
  while (checked < 100) {
    const ProfileRank r = rng() % t.size();
    if (!t.defined(r)) continue;
    EXPECT_EQ(t.at(r), pav(t.space().unrank(r), e));
    ++checked;
  }
}

TEST(BuildTable, CapIsEnforced) {
  EXPECT_THROW(build_table(NamedRule::av, {4, 4, 2}, 1000), CapExceeded);
}

TEST(RuleTable, RejectsWrongCommitteeSize) {
  RuleTable t({4, 3, 3});
  EXPECT_THROW(t.set(P("ab,c,d", 4), parse_committee("ab", {4, 3, 2})), std::invalid_argument);
}
