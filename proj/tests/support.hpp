#pragma once

// Shared helpers for the test binaries: seeded random tables and small
// independent oracles.

#include <random>
#include <vector>

#include "abcsat/axioms.hpp"
#include "abcsat/decode.hpp"
#include "abcsat/encoder.hpp"
#include "abcsat/rules.hpp"

namespace abcsat::testing {

inline Profile P(const char* text, int m) { return parse_profile(text, m); }

// Per profile, a uniformly random committee among those with no local
// violation of `target` (any committee when none qualifies or no target).
inline RuleTable random_table(const ElectionParams& e, std::mt19937_64& rng,
                              std::optional<Axiom> target = std::nullopt) {
  RuleTable t(e);
  const auto ws = enumerate_committees(e);
  std::vector<Committee> ok;
  for_each_profile(e, true, [&](ProfileRank r, const Profile& p) {
    ok.clear();
    if (target)
      for (Committee w : ws)
        if (!local_violation(*target, p, w, e)) ok.push_back(w);
    const auto& pool = ok.empty() ? ws : ok;
    t.set(r, pool[rng() % pool.size()]);
  });
  return t;
}

// Replaces the committee at `flips` random admissible profiles.
inline RuleTable mutate(RuleTable t, std::mt19937_64& rng, int flips) {
  const auto ws = enumerate_committees(t.params());
  for (int f = 0; f < flips;) {
    const ProfileRank r = rng() % t.size();
    if (!t.defined(r)) continue;
    t.set(r, ws[rng() % ws.size()]);
    ++f;
  }
  return t;
}

// JR by brute force over every voter subset.
inline bool naive_jr_violated(const Profile& p, Committee w, const ElectionParams& e) {
  const int n = static_cast<int>(p.size());
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    Mask inter = e.all_candidates(), uni = 0;
    int size = 0;
    for (int i = 0; i < n; ++i)
      if (s >> i & 1u) {
        inter &= p[i].mask;
        uni |= p[i].mask;
        ++size;
      }
    // |N'| >= n/k, common approval, nobody in N' represented
    if (size * e.k >= n && inter != 0 && (uni & w.mask) == 0) return true;
  }
  return false;
}

// Up to `limit` distinct decoded models, found by blocking each model's true
// variables in turn. Fewer are returned once the formula is exhausted.
inline std::vector<RuleTable> sat_tables(const EncodeConfig& cfg, std::size_t limit) {
  const auto enc = encode(cfg);
  Solver s;
  s.load(enc.cnf);
  std::vector<RuleTable> out;
  std::vector<int> block;
  while (out.size() < limit) {
    const auto res = s.solve();
    if (res.status != SolveStatus::satisfiable) break;
    out.push_back(decode_model(*res.model, enc.varmap));
    block.clear();
    for (int v = 1; v <= enc.cnf.num_vars(); ++v)
      if ((*res.model)[v]) block.push_back(-v);
    if (block.empty() || !s.add_clause(block)) break;
  }
  return out;
}

}  // namespace abcsat::testing
