#include <gtest/gtest.h>

#include <json.hpp>

#include <random>

#include "abcsat/proofs.hpp"
#include "support.hpp"

using namespace abcsat;
using abcsat::testing::P;
using abcsat::testing::sat_tables;

namespace {

EncodeConfig hare_subset(ElectionParams e, bool we = true) {
  EncodeConfig cfg;
  cfg.params = e;
  cfg.weak_efficiency = we;
  return cfg;
}

void expect_passes(const RuleTable& t, std::initializer_list<Axiom> axioms) {
  for (Axiom a : axioms) {
    const auto v = check_axiom(t, a);
    EXPECT_TRUE(v.passed) << to_string(a) << " at " << to_string(t.params())
                          << (v.witness ? " (" + to_string(v.witness->profile) + ")" : "");
  }
}

bool same_on_domain(const RuleTable& a, const RuleTable& b) {
  if (!(a.params() == b.params())) return false;
  for (ProfileRank r = 0; r < a.size(); ++r) {
    if (a.defined(r) != b.defined(r)) return false;
    if (a.defined(r) && a.at(r) != b.at(r)) return false;
  }
  return true;
}

nlohmann::json base_json() { return nlohmann::json::parse(kBaseCaseScript); }

}  // namespace

TEST(Lemma2, SingletonApproverMustWin) {
  const ElectionParams e{4, 3, 3};
  const auto p = P("ab,ac,d", 4);
  EXPECT_TRUE(lemma2_applies(p, 3, e));
  EXPECT_FALSE(lemma2_applies(p, 1, e));
  EXPECT_TRUE(local_violation(Axiom::lemma2, p, parse_committee("abc", e), e));
  EXPECT_FALSE(local_violation(Axiom::lemma2, p, parse_committee("acd", e), e));
  EXPECT_FALSE(lemma2_applies(P("ab,ad,d", 4), 3, e));
}

TEST(Lemma2, ReducesToProportionalityOnPartyLists) {
  for (const ElectionParams e : {ElectionParams{4, 3, 3}, ElectionParams{3, 2, 2}, ElectionParams{3, 4, 2}}) {
    const auto ws = enumerate_committees(e);
    for_each_profile(e, true, [&](ProfileRank, const Profile& p) {
      if (!is_party_list(p)) return;
      for (Committee w : ws)
        EXPECT_EQ(local_violation(Axiom::lemma2, p, w, e).has_value(),
                  local_violation(Axiom::proportionality, p, w, e).has_value())
            << to_string(p) << " " << to_string(w);
    });
  }
}

TEST(Lemma2, HoldsOnSatFoundTables) {
  const auto tables = sat_tables(hare_subset({3, 2, 2}, false), 25);
  ASSERT_FALSE(tables.empty());
  for (const auto& t : tables) EXPECT_TRUE(check_lemma2(t).passed);
}

TEST(Lemma2, NeedsOneMoreCandidateThanSeats) {
  EXPECT_THROW(check_lemma2(build_table(NamedRule::av, {4, 2, 2})), std::invalid_argument);
  EXPECT_THROW(lemma2_chain(P("a,b", 4), 0, {4, 2, 2}), std::invalid_argument);
}

TEST(Lemma2, ChainWalksByVariants) {
  const ElectionParams e{4, 3, 3};
  const auto p = P("ab,ac,d", 4);
  const auto chain = lemma2_chain(p, 3, e);
  ASSERT_EQ(chain.size(), 3u);
  EXPECT_EQ(to_string(chain.front()), "abc,abc,d");
  EXPECT_EQ(chain.back(), p);
  for (std::size_t i = 1; i < chain.size(); ++i) {
    int differing = 0;
    for (int v = 0; v < e.n; ++v) {
      if (chain[i][v] == chain[i - 1][v]) continue;
      ++differing;
      EXPECT_EQ(chain[i][v].mask & ~chain[i - 1][v].mask, 0u);
    }
    EXPECT_EQ(differing, 1);
  }
  EXPECT_THROW(lemma2_chain(p, 0, e), std::invalid_argument);
}

TEST(Replay, BaseCaseVerifiesEveryStep) {
  const auto report = replay_base_case();
  ASSERT_EQ(report.steps.size(), 15u);
  for (const auto& s : report.steps) {
    EXPECT_TRUE(s.verified) << s.id << ": " << s.message;
    if (s.claim != "contradiction") {
      EXPECT_TRUE(s.consistent) << s.id;
    }
  }
  EXPECT_EQ(report.verified_steps(), 15u);
  EXPECT_TRUE(report.contradiction);
  EXPECT_TRUE(report.verified);
  EXPECT_EQ(report.steps[0].claim, "f(ab,c,d) in {acd, bcd}");
  EXPECT_EQ(report.steps[2].id, "P2");
  EXPECT_EQ(report.steps[2].claim, "f(b,ac,d) = bcd");
  EXPECT_EQ(report.steps[13].id, "P7.5");
  EXPECT_EQ(report.steps[13].claim, "f(ab,c,ad) = abc");
  EXPECT_EQ(report.steps[14].claim, "contradiction");
}

TEST(Replay, ReportJson) {
  const auto j = to_json(replay_base_case());
  EXPECT_TRUE(j["verified"].get<bool>());
  EXPECT_EQ(j["steps"].size(), 15u);
}

TEST(Replay, WrongClaimFails) {
  auto j = base_json();
  j["steps"][2]["claim"] = {{"equals", "acd"}};
  const auto report = replay(parse_proof_script(j.dump()));
  EXPECT_FALSE(report.steps[2].verified);
  EXPECT_FALSE(report.verified);
}

TEST(Replay, MissingJustificationFails) {
  auto j = base_json();
  j["steps"][2]["justification"] = nlohmann::json::array({{{"rule", "proportionality"}}});
  const auto report = replay(parse_proof_script(j.dump()));
  EXPECT_FALSE(report.steps[2].verified);
  EXPECT_FALSE(report.verified);
}

TEST(Replay, TruncatedScriptHasNoContradiction) {
  auto j = base_json();
  j["steps"].erase(j["steps"].size() - 1);
  const auto report = replay(parse_proof_script(j.dump()));
  EXPECT_EQ(report.verified_steps(), 14u);
  EXPECT_FALSE(report.contradiction);
  EXPECT_FALSE(report.verified);
}

TEST(ProofScript, RejectsMalformedInput) {
  auto forward = base_json();
  forward["steps"][1]["justification"][1]["from"] = "P2";
  EXPECT_THROW(parse_proof_script(forward.dump()), ProofScriptError);
  auto empty = base_json();
  empty["steps"][0]["claim"] = {{"in", nlohmann::json::array()}};
  EXPECT_THROW(parse_proof_script(empty.dump()), ProofScriptError);
  auto assume = base_json();
  assume["steps"][0]["assume"]["equals"] = "abc";
  EXPECT_THROW(parse_proof_script(assume.dump()), ProofScriptError);
  auto dup = base_json();
  dup["steps"][1]["id"] = "P1";
  EXPECT_THROW(parse_proof_script(dup.dump()), ProofScriptError);
  EXPECT_THROW(parse_proof_script("{"), ProofScriptError);
  EXPECT_NO_THROW(base_case_script());
}

TEST(ReduceVoters, QOneIsIdentity) {
  const auto t = build_table(NamedRule::pav, {3, 2, 2});
  EXPECT_TRUE(same_on_domain(reduce_voters(t, 1), t));
  EXPECT_THROW(reduce_voters(t, 2), TransformError);
  EXPECT_THROW(reduce_voters(build_table(NamedRule::av, {3, 4, 2}), 3), TransformError);
}

TEST(ReduceVoters, PointwiseConcatenation) {
  std::mt19937_64 rng(3);
  const auto t = abcsat::testing::random_table({3, 4, 2}, rng);
  const auto out = reduce_voters(t, 2);
  const ElectionParams small{3, 2, 2};
  std::size_t checked = 0;
  for_each_profile(small, true, [&](ProfileRank r, const Profile& p) {
    Profile qp = p;
    qp.insert(qp.end(), p.begin(), p.end());
    EXPECT_EQ(out.at(r), t.at(qp)) << to_string(p);
    ++checked;
  });
  EXPECT_EQ(checked, out.defined_count());
}

TEST(ReduceVoters, QuotaCountScales) {
  const ElectionParams e{3, 2, 2};
  for_each_profile(e, true, [&](ProfileRank, const Profile& p) {
    for (int c = 0; c < e.m; ++c) {
      const Mask s = Mask{1} << c;
      int count = 0;
      for (Ballot b : p) count += b.mask == s;
      if (count * e.k < e.n) continue;
      for (int q = 1; q <= 3; ++q) {
        Profile qp;
        for (int j = 0; j < q; ++j) qp.insert(qp.end(), p.begin(), p.end());
        int qcount = 0;
        for (Ballot b : qp) qcount += b.mask == s;
        EXPECT_EQ(qcount, q * count);
        EXPECT_GE(qcount * e.k, q * e.n);
      }
    }
  });
}

TEST(ReduceVoters, InheritsAxiomsFromSatFoundTables) {
  const auto tables = sat_tables(hare_subset({3, 4, 2}, false), 5);
  ASSERT_FALSE(tables.empty());
  for (const auto& t : tables) {
    expect_passes(t, {Axiom::proportionality, Axiom::subset_sp});
    expect_passes(reduce_voters(t, 2), {Axiom::proportionality, Axiom::subset_sp});
  }
}

TEST(ReduceAlternatives, AvRestrictsToAv) {
  for (const ElectionParams e : {ElectionParams{4, 3, 2}, ElectionParams{4, 2, 3}}) {
    const auto big = build_table(NamedRule::av, e);
    const auto out = reduce_alternatives(big);
    EXPECT_TRUE(same_on_domain(out, build_table(NamedRule::av, {e.m - 1, e.n, e.k})));
    expect_passes(out, {Axiom::weak_efficiency});
  }
}

TEST(ReduceAlternatives, RejectsDummyWinner) {
  auto t = build_table(NamedRule::av, {4, 2, 2});
  t.set(P("a,b", 4), parse_committee("ad", {4, 2, 2}));
  EXPECT_THROW(reduce_alternatives(t), TransformError);
  EXPECT_THROW(reduce_alternatives(build_table(NamedRule::av, {3, 2, 3})), TransformError);
}

TEST(ReduceAlternatives, InheritsAxiomsFromSatFoundTables) {
  const auto tables = sat_tables(hare_subset({4, 2, 2}), 5);
  ASSERT_FALSE(tables.empty());
  for (const auto& t : tables)
    expect_passes(reduce_alternatives(t),
                  {Axiom::proportionality, Axiom::subset_sp, Axiom::weak_efficiency});
}

TEST(ReduceCommitteeSize, InheritsAxiomsAndSize) {
  const auto tables = sat_tables(hare_subset({3, 2, 2}, false), 10);
  ASSERT_FALSE(tables.empty());
  for (const auto& t : tables) {
    const auto out = reduce_committee_size(t);
    EXPECT_EQ(out.params(), (ElectionParams{2, 1, 1}));
    EXPECT_TRUE(out.covers_admissible_domain());
    for (ProfileRank r = 0; r < out.size(); ++r)
      if (out.defined(r)) {
        EXPECT_EQ(out.at(r).size(), 1);
      }
    expect_passes(out, {Axiom::proportionality, Axiom::subset_sp});
  }
}

TEST(ReduceCommitteeSize, RejectsLemmaViolation) {
  auto t = build_table(NamedRule::av, {3, 2, 2});
  t.set(P("a,c", 3), parse_committee("ab", {3, 2, 2}));
  EXPECT_THROW(reduce_committee_size(t), TransformError);
  EXPECT_THROW(reduce_committee_size(build_table(NamedRule::av, {4, 2, 2})), TransformError);
}

TEST(DroopReduce, QuotaArithmetic) {
  // k=3, q=3, r=1: n=10 and 10/4 < 3.
  EXPECT_TRUE(droop_quota_guard(10, 3, 3));
  EXPECT_LT(Rational(10, 4), Rational(3));
  EXPECT_FALSE(droop_quota_guard(12, 3, 3));
  for (int k = 1; k <= 6; ++k)
    for (int q = k; q <= 8; ++q)
      for (int r = 0; r < k; ++r)
        EXPECT_EQ(droop_quota_guard(q * k + r, k, q), Rational(q * k + r, k + 1) < Rational(q));
}

TEST(DroopReduce, ZeroFixedIsIdentity) {
  const auto t = build_table(NamedRule::pav, {3, 4, 2});
  EXPECT_TRUE(same_on_domain(droop_reduce(t, {}), t));
}

TEST(DroopReduce, Preconditions) {
  const auto t = build_table(NamedRule::av, {3, 5, 2});
  EXPECT_THROW(droop_reduce(t, {}), TransformError);
  EXPECT_THROW(droop_reduce(build_table(NamedRule::av, {3, 3, 2}), {parse_ballot("a", 3)}),
               TransformError);
  EXPECT_NO_THROW(droop_reduce(t, {parse_ballot("a", 3)}));
}

TEST(DroopReduce, HareFromDroopOnSyntheticTable) {
  // A table built profile by profile to avoid any Droop violation.
  std::mt19937_64 rng(17);
  const auto t = abcsat::testing::random_table({3, 5, 2}, rng, Axiom::droop_proportionality);
  ASSERT_TRUE(check_axiom(t, Axiom::droop_proportionality).passed);
  for (const char* fixed : {"a", "b", "bc"}) {
    const auto out = droop_reduce(t, {parse_ballot(fixed, 3)});
    EXPECT_EQ(out.params(), (ElectionParams{3, 4, 2}));
    expect_passes(out, {Axiom::proportionality});
  }
}

TEST(DroopReduce, InheritsFromSatFoundTable) {
  EncodeConfig cfg;
  cfg.params = {3, 5, 2};
  cfg.proportionality = ProportionalityMode::droop_singleton;
  const auto tables = sat_tables(cfg, 3);
  ASSERT_FALSE(tables.empty());
  for (const auto& t : tables) {
    expect_passes(t, {Axiom::droop_proportionality, Axiom::subset_sp});
    expect_passes(droop_reduce(t, {parse_ballot("c", 3)}), {Axiom::proportionality, Axiom::subset_sp});
  }
}
