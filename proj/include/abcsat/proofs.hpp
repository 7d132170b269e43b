#pragma once

// Executable forms of the hand proofs: the singleton-approver lemma, replay of
// scripted base-case deductions, and the rule transformers used by the
// induction steps.

#include <json.hpp>

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "abcsat/axioms.hpp"
#include "abcsat/base_case_script.hpp"
#include "abcsat/encoder.hpp"
#include "abcsat/rules.hpp"
#include "abcsat/solver.hpp"

namespace abcsat {

// ---------------------------------------------------------------------------
// Singleton-approver lemma (m = k+1)

inline AxiomVerdict check_lemma2(const RuleTable& t, const CheckOptions& opts = {}) {
  const auto& e = t.params();
  if (e.m != e.k + 1)
    throw std::invalid_argument("the singleton-approver lemma needs m = k+1, got " + to_string(e));
  return check_axiom(t, Axiom::lemma2, opts);
}

// True iff {c} is a ballot at least n/k times and nobody else approves c.
inline bool lemma2_applies(const Profile& p, int c, const ElectionParams& e) {
  const Mask single = Mask{1} << c;
  int count = 0;
  for (Ballot b : p) {
    if (b.mask == single) ++count;
    else if (b.contains(c)) return false;
  }
  return count > 0 && count * e.k >= e.n;
}

// The profiles the lemma's argument walks through: every non-{c} voter first
// reports C \ {c}, then voters revert to their true ballots one at a time.
// Consecutive profiles are i-variants; the last one is p.
inline std::vector<Profile> lemma2_chain(const Profile& p, int c, const ElectionParams& e) {
  if (e.m != e.k + 1)
    throw std::invalid_argument("the singleton-approver lemma needs m = k+1, got " + to_string(e));
  if (!lemma2_applies(p, c, e))
    throw std::invalid_argument("the singleton-approver lemma does not apply to candidate " +
                                candidate_name(c) + " at (" + to_string(p) + ")");
  const Mask single = Mask{1} << c;
  const Mask rest = e.all_candidates() & ~single;
  Profile cur = p;
  for (auto& b : cur)
    if (b.mask != single) b.mask = rest;
  std::vector<Profile> chain{cur};
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (cur[i] == p[i]) continue;
    cur[i] = p[i];
    chain.push_back(cur);
  }
  return chain;
}

// ---------------------------------------------------------------------------
// Proof scripts

class ProofScriptError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProofClaim {
  enum class Kind { member_of, equals, contradiction };
  Kind kind = Kind::equals;
  std::vector<Committee> committees;
};

struct Justification {
  enum class Rule { proportionality, lemma2, strategyproofness };
  Rule rule = Rule::proportionality;
  int candidate = -1;     // lemma2
  std::string from;       // strategyproofness: an earlier step id
  int voter = 0;          // strategyproofness: 1-based
};

struct ProofStep {
  std::string id;
  Profile profile;
  ProofClaim claim;
  std::vector<Justification> justification;
  std::optional<Committee> assume;
  std::string assume_reason;
};

struct ProofScript {
  std::string name;
  EncodeConfig config;
  std::vector<ProofStep> steps;
};

inline std::string to_string(const ProofClaim& c, const Profile& p) {
  const auto f = "f(" + to_string(p) + ")";
  switch (c.kind) {
    case ProofClaim::Kind::equals: return f + " = " + to_string(c.committees.front());
    case ProofClaim::Kind::member_of: {
      std::string s = f + " in {";
      for (std::size_t i = 0; i < c.committees.size(); ++i)
        s += (i ? ", " : "") + to_string(c.committees[i]);
      return s + "}";
    }
    case ProofClaim::Kind::contradiction: return "contradiction";
  }
  return "?";
}

inline ProofScript proof_script_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format_version").get<int>() != 1)
      throw ProofScriptError("unsupported proof script format_version");
    ProofScript s;
    s.name = j.value("name", "");
    const auto& pj = j.at("params");
    s.config.params = {pj.at("m").get<int>(), pj.at("n").get<int>(), pj.at("k").get<int>()};
    s.config.params.validate();
    const auto& ej = j.at("encoding");
    s.config.proportionality = parse_proportionality_mode(ej.at("proportionality").get<std::string>());
    s.config.sp = parse_sp_variant(ej.at("sp").get<std::string>());
    s.config.weak_efficiency = ej.value("weak_efficiency", false);
    const auto& e = s.config.params;

    std::set<std::string> seen;
    for (const auto& sj : j.at("steps")) {
      ProofStep step;
      step.id = sj.at("id").get<std::string>();
      if (!seen.insert(step.id).second) throw ProofScriptError("duplicate step id " + step.id);
      step.profile = parse_profile(sj.at("profile").get<std::string>(), e.m);
      if (static_cast<int>(step.profile.size()) != e.n)
        throw ProofScriptError("step " + step.id + ": profile has the wrong number of voters");
      const auto& cj = sj.at("claim");
      if (cj.contains("equals")) {
        step.claim.kind = ProofClaim::Kind::equals;
        step.claim.committees.push_back(parse_committee(cj["equals"].get<std::string>(), e));
      } else if (cj.contains("in")) {
        step.claim.kind = ProofClaim::Kind::member_of;
        for (const auto& w : cj["in"]) step.claim.committees.push_back(parse_committee(w.get<std::string>(), e));
        if (step.claim.committees.empty())
          throw ProofScriptError("step " + step.id + ": empty committee set");
      } else if (cj.value("contradiction", false)) {
        step.claim.kind = ProofClaim::Kind::contradiction;
      } else {
        throw ProofScriptError("step " + step.id + ": unknown claim");
      }
      for (const auto& jj : sj.at("justification")) {
        Justification just;
        const auto rule = jj.at("rule").get<std::string>();
        if (rule == "proportionality") {
          just.rule = Justification::Rule::proportionality;
        } else if (rule == "lemma2") {
          just.rule = Justification::Rule::lemma2;
          const auto c = parse_candidates(jj.at("candidate").get<std::string>(), e.m);
          if (std::popcount(c) != 1) throw ProofScriptError("step " + step.id + ": lemma2 needs one candidate");
          just.candidate = std::countr_zero(c);
        } else if (rule == "strategyproofness") {
          just.rule = Justification::Rule::strategyproofness;
          just.from = jj.at("from").get<std::string>();
          just.voter = jj.at("voter").get<int>();
          if (just.from == step.id || !seen.count(just.from))
            throw ProofScriptError("step " + step.id + " refers to " + just.from +
                                   ", which is not an earlier step");
          if (just.voter < 1 || just.voter > e.n)
            throw ProofScriptError("step " + step.id + ": voter out of range");
        } else {
          throw ProofScriptError("step " + step.id + ": unknown rule '" + rule + "'");
        }
        step.justification.push_back(std::move(just));
      }
      if (sj.contains("assume")) {
        step.assume = parse_committee(sj["assume"].at("equals").get<std::string>(), e);
        step.assume_reason = sj["assume"].value("reason", "");
        if (step.claim.kind != ProofClaim::Kind::member_of ||
            std::find(step.claim.committees.begin(), step.claim.committees.end(), *step.assume) ==
                step.claim.committees.end())
          throw ProofScriptError("step " + step.id + ": assumption must pick a member of the claimed set");
      }
      s.steps.push_back(std::move(step));
    }
    return s;
  } catch (const nlohmann::json::exception& ex) {
    throw ProofScriptError(std::string("malformed proof script: ") + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw ProofScriptError(std::string("malformed proof script: ") + ex.what());
  }
}

inline ProofScript parse_proof_script(std::string_view text) {
  try {
    return proof_script_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& ex) {
    throw ProofScriptError(std::string("malformed proof script: ") + ex.what());
  }
}

inline ProofScript load_proof_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_proof_script(ss.str());
}

inline ProofScript base_case_script() { return parse_proof_script(kBaseCaseScript); }

struct StepReport {
  std::string id;
  std::string profile;
  std::string claim;
  bool verified = false;
  bool consistent = false;  // prior facts and scope are satisfiable without the negated claim
  std::string message;
  std::vector<std::string> scope;
  std::size_t scope_clauses = 0;
  std::size_t facts = 0;
  SolverStats stats;
};

struct ProofReport {
  std::string name;
  std::vector<StepReport> steps;
  bool contradiction = false;
  bool verified = false;

  std::size_t verified_steps() const {
    return static_cast<std::size_t>(
        std::count_if(steps.begin(), steps.end(), [](const StepReport& s) { return s.verified; }));
  }
};

// Checks each step with a solver restricted to the clauses over the step's
// local profiles: the step profile, the profiles of its justifications and,
// for the lemma, the lemma's chain. Earlier conclusions enter as assumptions
// and the step's claim is negated; the step holds iff that is unsatisfiable.
inline ProofReport replay(const ProofScript& script, const SolverOptions& opts = {}) {
  EncodeConfig cfg = script.config;
  cfg.symmetry_break = false;
  const Encoding enc = encode(cfg);
  const auto& e = cfg.params;
  const ProfileSpace space(e);
  const auto& vm = enc.varmap;
  const auto& groups = enc.cnf.groups();

  ProofReport report;
  report.name = script.name;
  std::map<std::string, const ProofStep*> by_id;
  std::vector<int> facts;

  for (const auto& step : script.steps) {
    StepReport sr;
    sr.id = step.id;
    sr.profile = to_string(step.profile);
    sr.claim = to_string(step.claim, step.profile);
    auto fail = [&](std::string msg) {
      sr.message = std::move(msg);
      report.steps.push_back(sr);
    };
    by_id[step.id] = &step;
    if (!is_admissible(step.profile, e.k)) {
      fail("profile is not admissible");
      continue;
    }
    const ProfileRank rank = space.rank(step.profile);

    std::set<ProfileRank> scope{rank};
    std::string problem;
    for (const auto& just : step.justification) {
      if (just.rule == Justification::Rule::lemma2) {
        if (e.m != e.k + 1 || !lemma2_applies(step.profile, just.candidate, e)) {
          problem = "the singleton-approver lemma does not apply for candidate " +
                    candidate_name(just.candidate);
          break;
        }
        for (const auto& q : lemma2_chain(step.profile, just.candidate, e)) scope.insert(space.rank(q));
      } else if (just.rule == Justification::Rule::strategyproofness) {
        const Profile& other = by_id.at(just.from)->profile;
        const int i = just.voter - 1;
        bool variant = true;
        for (int j = 0; j < e.n; ++j)
          if (j != i && other[j] != step.profile[j]) variant = false;
        const Mask a = other[i].mask, b = step.profile[i].mask;
        const bool nested = a != b && ((a & b) == a || (a & b) == b);
        if (!variant || !nested) {
          problem = "(" + to_string(other) + ") is not a voter-" + std::to_string(just.voter) +
                    " variant of (" + sr.profile + ")";
          break;
        }
        scope.insert(space.rank(other));
      }
    }
    if (!problem.empty()) {
      fail(problem);
      continue;
    }
    for (ProfileRank r : scope) sr.scope.push_back(to_string(space.unrank(r)));

    Solver s(opts);
    s.reserve_vars(enc.cnf.num_vars());
    for (const auto& g : groups) {
      const auto& inst = g.instance;
      if (inst.kind == GroupKind::symmetry_assumption || inst.kind == GroupKind::raw_clause) continue;
      if (!scope.count(inst.profile)) continue;
      if (inst.kind == GroupKind::strategyproofness_pair && !scope.count(inst.variant)) continue;
      for (std::uint32_t c = g.first_clause; c < g.first_clause + g.num_clauses; ++c)
        s.add_clause(enc.cnf.clause(c));
      sr.scope_clauses += g.num_clauses;
    }
    if (!vm.encoded(rank)) {
      fail("profile has no variables in the encoding");
      continue;
    }

    std::vector<int> assumptions = facts;
    sr.facts = facts.size();
    const SolverStats before = s.stats();
    if (step.claim.kind != ProofClaim::Kind::contradiction) {
      const auto r = s.solve(assumptions);
      sr.consistent = r.status == SolveStatus::satisfiable;
      for (const Committee w : step.claim.committees)
        if (const int v = vm.var(rank, w)) assumptions.push_back(-v);
    }
    const auto r = s.solve(assumptions);
    const auto& after = s.stats();
    sr.stats.decisions = after.decisions - before.decisions;
    sr.stats.propagations = after.propagations - before.propagations;
    sr.stats.conflicts = after.conflicts - before.conflicts;
    sr.stats.restarts = after.restarts - before.restarts;

    if (r.status != SolveStatus::unsatisfiable) {
      fail(r.status == SolveStatus::aborted ? "solver aborted" : "claim does not follow in scope");
      continue;
    }
    if (step.claim.kind != ProofClaim::Kind::contradiction && !sr.consistent) {
      fail("earlier conclusions are already inconsistent in scope");
      continue;
    }
    if (step.claim.kind == ProofClaim::Kind::equals) {
      const int v = vm.var(rank, step.claim.committees.front());
      if (v == 0) {
        fail("claimed committee is not allowed at the profile");
        continue;
      }
      facts.push_back(v);
    }
    if (step.assume) {
      const int v = vm.var(rank, *step.assume);
      if (v == 0) {
        fail("assumed committee is not allowed at the profile");
        continue;
      }
      facts.push_back(v);
    }
    sr.verified = true;
    if (step.claim.kind == ProofClaim::Kind::contradiction) report.contradiction = true;
    report.steps.push_back(sr);
  }
  report.verified = !report.steps.empty() && report.verified_steps() == report.steps.size() &&
                    report.contradiction &&
                    script.steps.back().claim.kind == ProofClaim::Kind::contradiction;
  return report;
}

inline ProofReport replay_base_case(const SolverOptions& opts = {}) {
  return replay(base_case_script(), opts);
}

inline nlohmann::json to_json(const ProofReport& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["verified"] = r.verified;
  j["contradiction"] = r.contradiction;
  j["verified_steps"] = r.verified_steps();
  j["total_steps"] = r.steps.size();
  auto& steps = j["steps"] = nlohmann::json::array();
  for (const auto& s : r.steps) {
    steps.push_back({{"id", s.id},
                     {"profile", s.profile},
                     {"claim", s.claim},
                     {"verified", s.verified},
                     {"consistent_before_negation", s.consistent},
                     {"message", s.message},
                     {"scope", s.scope},
                     {"scope_clauses", s.scope_clauses},
                     {"facts", s.facts},
                     {"solver", {{"decisions", s.stats.decisions},
                                 {"propagations", s.stats.propagations},
                                 {"conflicts", s.stats.conflicts}}}});
  }
  return j;
}

// ---------------------------------------------------------------------------
// Rule transformers. Profiles outside the input table's domain stay outside
// the output's domain.

class TransformError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// f_k(P) = f_{qk}(qP), where qP repeats the whole profile q times.
inline RuleTable reduce_voters(const RuleTable& t, int q) {
  const auto& e = t.params();
  if (q < 1 || e.n % q != 0 || e.n / q != e.k)
    throw TransformError("reduce_voters needs n = q*k, got " + to_string(e) + " with q=" +
                         std::to_string(q));
  const ElectionParams out_params{e.m, e.k, e.k};
  RuleTable out(out_params);
  Profile big;
  for_each_profile(out_params, true, [&](ProfileRank r, const Profile& p) {
    big.clear();
    for (int j = 0; j < q; ++j) big.insert(big.end(), p.begin(), p.end());
    const ProfileRank br = t.space().rank(big);
    if (t.defined(br)) out.set(r, t.at(br));
  });
  return out;
}

// Restricts a rule on m candidates to profiles that never approve the last
// candidate.
inline RuleTable reduce_alternatives(const RuleTable& t) {
  const auto& e = t.params();
  if (e.m - 1 < e.k) throw TransformError("reduce_alternatives needs m-1 >= k, got " + to_string(e));
  const ElectionParams out_params{e.m - 1, e.n, e.k};
  const int dummy = e.m - 1;
  RuleTable out(out_params);
  std::string error;
  for_each_profile(out_params, true, [&](ProfileRank r, const Profile& p) {
    const ProfileRank br = t.space().rank(p);
    if (!t.defined(br)) return;
    const Committee w = t.at(br);
    if (w.contains(dummy)) {
      if (error.empty())
        error = "input elects never-approved candidate " + candidate_name(dummy) + " at (" +
                to_string(p) + "); it is not weakly efficient";
      return;
    }
    out.set(r, w);
  });
  if (!error.empty()) throw TransformError(error);
  return out;
}

// From k+1 seats, k+1 voters, k+2 candidates to k seats, k voters, k+1
// candidates: append a voter approving only the extra candidate, then drop it.
inline RuleTable reduce_committee_size(const RuleTable& t) {
  const auto& e = t.params();
  if (e.k < 2 || e.n != e.k || e.m != e.k + 1)
    throw TransformError("reduce_committee_size needs n = k and m = k+1 with k >= 2, got " +
                         to_string(e));
  const int k = e.k - 1;
  const ElectionParams out_params{k + 1, k, k};
  const int extra = k + 1;
  RuleTable out(out_params);
  std::string error;
  Profile big;
  for_each_profile(out_params, true, [&](ProfileRank r, const Profile& p) {
    big.assign(p.begin(), p.end());
    big.push_back(Ballot{Mask{1} << extra});
    const ProfileRank br = t.space().rank(big);
    if (!t.defined(br)) return;
    const Committee w = t.at(br);
    if (!w.contains(extra)) {
      if (error.empty())
        error = "input omits " + candidate_name(extra) + " at (" + to_string(big) +
                ") although its voter alone meets the quota";
      return;
    }
    out.set(r, Committee{w.mask & ~(Mask{1} << extra)});
  });
  if (!error.empty()) throw TransformError(error);
  return out;
}

// n/(k+1) < q, compared exactly.
inline bool droop_quota_guard(int n, int k, int q) { return n < q * (k + 1); }

// f_{qk}(A_1..A_qk) = f_n(A_1..A_qk, B_1..B_r) for n = qk + r.
inline RuleTable droop_reduce(const RuleTable& t, const std::vector<Ballot>& fixed) {
  const auto& e = t.params();
  const int r = static_cast<int>(fixed.size());
  const int rest = e.n - r;
  if (rest <= 0 || rest % e.k != 0)
    throw TransformError("droop_reduce needs n - r to be a positive multiple of k, got " +
                         to_string(e) + " with r=" + std::to_string(r));
  const int q = rest / e.k;
  if (!(0 <= r && r < e.k && e.k <= q))
    throw TransformError("droop_reduce needs 0 <= r < k <= q, got r=" + std::to_string(r) +
                         ", k=" + std::to_string(e.k) + ", q=" + std::to_string(q));
  if (!droop_quota_guard(e.n, e.k, q))
    throw TransformError("quota guard n/(k+1) < q fails");
  for (Ballot b : fixed)
    if (!is_valid_ballot(b.mask, e.m)) throw TransformError("invalid fixed ballot " + to_string(b));
  const ElectionParams out_params{e.m, q * e.k, e.k};
  RuleTable out(out_params);
  Profile big;
  for_each_profile(out_params, true, [&](ProfileRank rk, const Profile& p) {
    big.assign(p.begin(), p.end());
    big.insert(big.end(), fixed.begin(), fixed.end());
    const ProfileRank br = t.space().rank(big);
    if (t.defined(br)) out.set(rk, t.at(br));
  });
  return out;
}

}  // namespace abcsat
