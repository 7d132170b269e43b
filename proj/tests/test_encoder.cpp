#include <gtest/gtest.h>

#include <json.hpp>

#include <map>
#include <random>
#include <sstream>

#include "abcsat/decode.hpp"
#include "abcsat/dimacs.hpp"
#include "abcsat/encoder.hpp"
#include "support.hpp"

using namespace abcsat;
using abcsat::testing::P;

namespace {

EncodeConfig config(ElectionParams e, ProportionalityMode prop, SpVariant sp, bool we) {
  EncodeConfig c;
  c.params = e;
  c.proportionality = prop;
  c.sp = sp;
  c.weak_efficiency = we;
  return c;
}

EncodeConfig base_case() {
  return config({4, 3, 3}, ProportionalityMode::hare_singleton, SpVariant::subset, true);
}

std::vector<std::string> names(const std::vector<Committee>& ws) {
  std::vector<std::string> out;
  for (auto w : ws) out.push_back(to_string(w));
  return out;
}

struct Counts {
  std::size_t vars = 0, clauses = 0, groups = 0;
};

// Sizes derived from the checkers' local predicates rather than the encoder.
Counts recount(const EncodeConfig& cfg) {
  const auto& e = cfg.params;
  const ProfileSpace space(e);
  const auto ws = enumerate_committees(e);
  std::map<ProfileRank, std::vector<Committee>> allowed;
  for_each_profile(e, true, [&](ProfileRank r, const Profile& p) {
    for (Committee w : ws) {
      if (local_violation(proportionality_axiom(cfg.proportionality), p, w, e)) continue;
      if (cfg.weak_efficiency && local_violation(Axiom::weak_efficiency, p, w, e)) continue;
      allowed[r].push_back(w);
    }
  });
  Counts c;
  for (const auto& [r, a] : allowed) {
    c.vars += a.size();
    c.clauses += 1 + a.size() * (a.size() - 1) / 2;
    c.groups += 1 + (a.size() > 1);
    const Profile p = space.unrank(r);
    for (int i = 0; i < e.n; ++i)
      for (Ballot b : enumerate_ballots(e)) {
        if (b == p[i]) continue;
        if (cfg.sp == SpVariant::subset && (b.mask & ~p[i].mask)) continue;
        Profile q = p;
        q[i] = b;
        const auto it = allowed.find(space.rank(q));
        if (it == allowed.end()) continue;
        std::size_t n = 0;
        for (Committee w : a)
          for (Committee w2 : it->second) {
            const Mask before = w.mask & p[i].mask, after = w2.mask & p[i].mask;
            n += (before | after) == after && before != after;
          }
        c.clauses += n;
        c.groups += n > 0;
      }
  }
  return c;
}

}  // namespace

TEST(AllowedCommittees, Examples) {
  auto cfg = base_case();
  cfg.weak_efficiency = false;
  EXPECT_EQ(names(allowed_committees(P("ab,c,d", 4), cfg)), (std::vector<std::string>{"acd", "bcd"}));
  auto k2 = config({4, 4, 2}, ProportionalityMode::jr_party_lists, SpVariant::superset, false);
  EXPECT_EQ(names(allowed_committees(P("ab,ab,cd,cd", 4), k2)),
            (std::vector<std::string>{"ac", "ad", "bc", "bd"}));
  EXPECT_EQ(allowed_committees(P("ab,bc,cd", 4), cfg).size(), 4u);
  EXPECT_THROW(allowed_committees(P("a,a,b", 4), cfg), std::invalid_argument);
}

TEST(AllowedCommittees, WeakEfficiencyOnlyWhenEnoughApproved) {
  auto cfg = base_case();
  EXPECT_EQ(names(allowed_committees(P("ab,bc,ab", 4), cfg)), std::vector<std::string>{"abc"});
  auto k2 = config({4, 2, 2}, ProportionalityMode::hare_singleton, SpVariant::subset, true);
  EXPECT_EQ(allowed_committees(P("a,b", 4), k2).size(), 1u);
}

TEST(Encode, TrivialInstance) {
  const auto enc = encode(config({2, 1, 1}, ProportionalityMode::hare_singleton, SpVariant::subset, false));
  EXPECT_EQ(enc.cnf.num_vars(), 2);
  EXPECT_EQ(enc.cnf.num_clauses(), 2u);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(enc.cnf.clause(i).size(), 1u);
  for (const auto& g : enc.cnf.groups()) EXPECT_NE(g.instance.kind, GroupKind::strategyproofness_pair);
  EXPECT_EQ(to_dimacs(enc.cnf).substr(0, 10), "p cnf 2 2\n");
  const auto res = solve(enc.cnf);
  ASSERT_EQ(res.status, SolveStatus::satisfiable);
  const auto t = decode_model(*res.model, enc.varmap);
  EXPECT_EQ(to_string(t.at(P("a", 2))), "a");
  EXPECT_EQ(to_string(t.at(P("b", 2))), "b");
}

TEST(Encode, BaseCaseGoldenCounts) {
  const auto enc = encode(base_case());
  EXPECT_EQ(enc.varmap.encoded_profiles().size(), 2590u);
  EXPECT_EQ(enc.cnf.num_vars(), 7084);
  EXPECT_EQ(enc.cnf.num_clauses(), 41254u);
  EXPECT_EQ(enc.cnf.groups().size(), 13228u);
  std::map<GroupKind, std::size_t> clauses;
  for (const auto& g : enc.cnf.groups()) clauses[g.instance.kind] += g.num_clauses;
  EXPECT_EQ(clauses[GroupKind::function_totality], 2590u);
  EXPECT_EQ(clauses[GroupKind::function_uniqueness], 8928u);
  EXPECT_EQ(clauses[GroupKind::strategyproofness_pair], 29736u);
}

TEST(Encode, CountsMatchRecount) {
  for (const auto& cfg :
       {base_case(), config({4, 3, 3}, ProportionalityMode::hare_singleton, SpVariant::subset, false),
        config({3, 2, 2}, ProportionalityMode::hare_singleton, SpVariant::subset, true),
        config({3, 3, 1}, ProportionalityMode::jr_party_lists, SpVariant::superset, true),
        config({3, 3, 2}, ProportionalityMode::droop_singleton, SpVariant::superset, false)}) {
    const auto enc = encode(cfg);
    const auto c = recount(cfg);
    EXPECT_EQ(static_cast<std::size_t>(enc.cnf.num_vars()), c.vars) << to_string(cfg.params);
    EXPECT_EQ(enc.cnf.num_clauses(), c.clauses) << to_string(cfg.params);
    EXPECT_EQ(enc.cnf.groups().size(), c.groups) << to_string(cfg.params);
  }
}

TEST(Encode, SpClausesLinkVariantsOfOneVoter) {
  const auto enc = encode(base_case());
  const ProfileSpace space(enc.config.params);
  for (const auto& g : enc.cnf.groups()) {
    if (g.instance.kind != GroupKind::strategyproofness_pair) continue;
    const auto& inst = g.instance;
    EXPECT_NE(inst.profile, inst.variant);
    const auto p = space.unrank(inst.profile), q = space.unrank(inst.variant);
    for (int j = 0; j < enc.config.params.n; ++j)
      if (j != inst.voter) {
        EXPECT_EQ(p[j], q[j]);
      }
    EXPECT_EQ(q[inst.voter].mask & ~p[inst.voter].mask, 0u);
    for (std::uint32_t c = g.first_clause; c < g.first_clause + g.num_clauses; ++c) {
      const auto cl = enc.cnf.clause(c);
      ASSERT_EQ(cl.size(), 2u);
      EXPECT_EQ(enc.varmap.decode(-cl[0]).first, inst.profile);
      EXPECT_EQ(enc.varmap.decode(-cl[1]).first, inst.variant);
    }
  }
}

TEST(Encode, GroupsRederiveTheirClauses) {
  const auto enc = encode(config({3, 3, 2}, ProportionalityMode::hare_singleton, SpVariant::superset, true));
  for (const auto& g : enc.cnf.groups()) {
    auto expect = instance_clauses(enc, g.instance);
    std::vector<std::vector<int>> got;
    for (std::uint32_t c = g.first_clause; c < g.first_clause + g.num_clauses; ++c)
      got.emplace_back(enc.cnf.clause(c).begin(), enc.cnf.clause(c).end());
    for (auto* v : {&expect, &got}) {
      for (auto& cl : *v) std::sort(cl.begin(), cl.end());
      std::sort(v->begin(), v->end());
    }
    EXPECT_EQ(expect, got);
  }
}

TEST(Encode, VarMapIsABijection) {
  const auto enc = encode(base_case());
  const auto& vm = enc.varmap;
  int expected = 1;
  for (ProfileRank r : vm.encoded_profiles()) {
    const auto allowed = vm.allowed(r);
    EXPECT_TRUE(std::is_sorted(allowed.begin(), allowed.end(), committee_lex_less));
    for (Committee w : allowed) {
      EXPECT_EQ(vm.var(r, w), expected);
      const auto [r2, w2] = vm.decode(expected);
      EXPECT_EQ(r2, r);
      EXPECT_EQ(w2, w);
      ++expected;
    }
  }
  EXPECT_EQ(expected - 1, vm.num_vars());
  EXPECT_THROW(vm.decode(0), std::out_of_range);
  EXPECT_THROW(vm.decode(vm.num_vars() + 1), std::out_of_range);
}

TEST(Encode, ModelSoundnessAndCompleteness) {
  for (const ElectionParams e : {ElectionParams{3, 2, 2}, ElectionParams{4, 2, 2}}) {
    const auto cfg = config(e, ProportionalityMode::hare_singleton, SpVariant::subset, true);
    const auto enc = encode(cfg);
    const auto res = solve(enc.cnf);
    ASSERT_EQ(res.status, SolveStatus::satisfiable);
    ASSERT_TRUE(verify_model(enc.cnf, *res.model));
    const auto t = decode_model(*res.model, enc.varmap);
    EXPECT_TRUE(t.covers_admissible_domain());
    for (Axiom a : cfg.axioms()) EXPECT_TRUE(check_axiom(t, a).passed) << to_string(a);

    // Round trip: the decoded table pinned by unit assumptions is satisfiable.
    const auto pinned = table_assumptions(t, enc.varmap);
    ASSERT_TRUE(pinned);
    EXPECT_EQ(solve(enc.cnf, *pinned).status, SolveStatus::satisfiable);

    // Reference rules: the formula accepts them iff the checkers do.
    std::mt19937_64 rng(1);
    for (int i = 0; i < 40; ++i) {
      RuleTable cand = i == 0   ? build_table(NamedRule::av, e)
                       : i == 1 ? build_table(NamedRule::pav, e)
                                : abcsat::testing::mutate(t, rng, 1 + i % 3);
      bool passes = true;
      for (Axiom a : cfg.axioms()) passes = passes && check_axiom(cand, a).passed;
      const auto lits = table_assumptions(cand, enc.varmap);
      const bool sat = lits && solve(enc.cnf, *lits).status == SolveStatus::satisfiable;
      EXPECT_EQ(sat, passes) << "table " << i << " at " << to_string(e);
    }
  }
}

TEST(Encode, SymmetryBreakKeepsBaseCaseUnsat) {
  auto cfg = base_case();
  EXPECT_EQ(solve(encode(cfg).cnf).status, SolveStatus::unsatisfiable);
  cfg.symmetry_break = true;
  const auto enc = encode(cfg);
  EXPECT_EQ(enc.cnf.groups().back().instance.kind, GroupKind::symmetry_assumption);
  EXPECT_EQ(solve(enc.cnf).status, SolveStatus::unsatisfiable);
  cfg.params = {3, 2, 2};
  EXPECT_THROW(encode(cfg), std::invalid_argument);
}

TEST(Encode, CandidateIntervalRestriction) {
  auto cfg = config({4, 3, 2}, ProportionalityMode::hare_singleton, SpVariant::subset, true);
  cfg.ci_order = parse_ordering("abcd", 4);
  const auto enc = encode(cfg);
  const ProfileSpace space(cfg.params);
  std::size_t ci = 0;
  for_each_profile(cfg.params, true, [&](ProfileRank r, const Profile& p) {
    const bool in = is_candidate_interval(p, *cfg.ci_order);
    ci += in;
    EXPECT_EQ(enc.varmap.encoded(r), in) << to_string(p);
  });
  EXPECT_EQ(enc.varmap.encoded_profiles().size(), ci);
  EXPECT_LT(ci, ProfileSpace(cfg.params).size());
}

TEST(Encode, CapIsEnforced) {
  auto cfg = base_case();
  cfg.cap = 1000;
  EXPECT_THROW(encode(cfg), CapExceeded);
}

TEST(Encode, ConfigValidation) {
  auto cfg = base_case();
  cfg.sp = SpVariant::cardinality;
  EXPECT_THROW(encode(cfg), std::invalid_argument);
}

TEST(Dimacs, RoundTripAndComments) {
  const auto enc = encode(config({3, 2, 2}, ProportionalityMode::hare_singleton, SpVariant::subset, true));
  const auto text = to_dimacs(enc.cnf, &enc.varmap);
  EXPECT_EQ(text, to_dimacs(enc.cnf, &enc.varmap));
  const auto parsed = parse_dimacs(text);
  EXPECT_TRUE(parsed.cnf.same_clauses(enc.cnf));
  ASSERT_EQ(parsed.comments.size(), static_cast<std::size_t>(enc.cnf.num_vars()));
  const ProfileSpace space(enc.config.params);
  for (const auto& c : parsed.comments) {
    const auto vc = parse_variable_comment(c);
    ASSERT_TRUE(vc);
    const auto [r, w] = enc.varmap.decode(vc->id);
    EXPECT_EQ(to_string(space.unrank(r)), vc->profile);
    EXPECT_EQ(to_string(w), vc->committee);
  }
  EXPECT_NE(text.find("c x1 = f("), std::string::npos);
}

TEST(Dimacs, ParseErrors) {
  const auto one = parse_dimacs("p cnf 1 1\n1 0\n");
  EXPECT_EQ(one.cnf.num_clauses(), 1u);
  EXPECT_EQ(one.cnf.clause(0)[0], 1);
  EXPECT_THROW(parse_dimacs("p cnf x 1\n1 0\n"), DimacsError);
  EXPECT_THROW(parse_dimacs("p dnf 1 1\n1 0\n"), DimacsError);
  EXPECT_THROW(parse_dimacs("p cnf 1 1\n2 0\n"), DimacsError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 2\n"), DimacsError);
  EXPECT_THROW(parse_dimacs("p cnf 2 2\n1 2 0\n"), DimacsError);
  EXPECT_THROW(parse_dimacs("1 0\n"), DimacsError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 a 0\n"), DimacsError);
  const auto multi = parse_dimacs("c hello\np cnf 3 2\n1 -2\n 3 0 -1 0\n");
  EXPECT_EQ(multi.cnf.num_clauses(), 2u);
  EXPECT_EQ(multi.comments, std::vector<std::string>{"hello"});
}

TEST(Manifest, DescribesVariablesAndGroups) {
  const auto enc = encode(config({3, 2, 2}, ProportionalityMode::hare_singleton, SpVariant::subset, true));
  std::ostringstream os;
  write_manifest(os, enc);
  const auto j = nlohmann::json::parse(os.str());
  EXPECT_EQ(j["num_vars"].get<int>(), enc.cnf.num_vars());
  EXPECT_EQ(j["variables"].size(), static_cast<std::size_t>(enc.cnf.num_vars()));
  EXPECT_EQ(j["groups"].size(), enc.cnf.groups().size());
  EXPECT_EQ(j["variables"][0]["id"].get<int>(), 1);
  EXPECT_EQ(j["config"]["proportionality"], "hare-singleton");
  std::size_t clauses = 0;
  for (const auto& g : j["groups"]) clauses += g["num_clauses"].get<std::size_t>();
  EXPECT_EQ(clauses, enc.cnf.num_clauses());
}

TEST(Decode, RejectsBrokenModels) {
  const auto enc = encode(config({2, 1, 1}, ProportionalityMode::hare_singleton, SpVariant::subset, false));
  EXPECT_THROW(decode_model({false, false, false}, enc.varmap), DecodeError);
  EXPECT_THROW(decode_model({false, true}, enc.varmap), DecodeError);
  const auto enc2 = encode(config({3, 1, 1}, ProportionalityMode::hare_singleton, SpVariant::subset, false));
  std::vector<bool> all(enc2.cnf.num_vars() + 1, true);
  EXPECT_THROW(decode_model(all, enc2.varmap), DecodeError);
}
