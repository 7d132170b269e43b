#pragma once

// Propositional encoding of "a committee rule with the chosen axioms exists"
// for fixed (m, n, k). Variable x_{P,W} is true iff f(P) = W; it is only
// introduced for committees W allowed at P.

#include <algorithm>
#include <bit>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "abcsat/axioms.hpp"
#include "abcsat/cnf.hpp"
#include "abcsat/core.hpp"
#include "abcsat/rules.hpp"

namespace abcsat {

enum class ProportionalityMode { hare_singleton, jr_party_lists, droop_singleton };

inline std::string to_string(ProportionalityMode p) {
  switch (p) {
    case ProportionalityMode::hare_singleton: return "hare-singleton";
    case ProportionalityMode::jr_party_lists: return "jr-party-lists";
    case ProportionalityMode::droop_singleton: return "droop-singleton";
  }
  return "?";
}

inline ProportionalityMode parse_proportionality_mode(std::string_view s) {
  if (s == "hare" || s == "hare-singleton") return ProportionalityMode::hare_singleton;
  if (s == "jr-party" || s == "jr-party-lists") return ProportionalityMode::jr_party_lists;
  if (s == "droop" || s == "droop-singleton") return ProportionalityMode::droop_singleton;
  throw std::invalid_argument("unknown proportionality mode '" + std::string(s) + "'");
}

// The axiom checked by the decoded table for each proportionality mode.
inline Axiom proportionality_axiom(ProportionalityMode p) {
  switch (p) {
    case ProportionalityMode::hare_singleton: return Axiom::proportionality;
    case ProportionalityMode::jr_party_lists: return Axiom::jr_party_lists;
    case ProportionalityMode::droop_singleton: return Axiom::droop_proportionality;
  }
  return Axiom::proportionality;
}

struct EncodeConfig {
  ElectionParams params;
  SpVariant sp = SpVariant::subset;  // subset or superset
  ProportionalityMode proportionality = ProportionalityMode::hare_singleton;
  bool weak_efficiency = false;
  bool symmetry_break = false;
  std::optional<std::vector<int>> ci_order;
  std::uint64_t cap = kDefaultProfileCap;

  void validate() const {
    params.validate();
    if (sp != SpVariant::subset && sp != SpVariant::superset)
      throw std::invalid_argument("the encoder supports subset and superset strategyproofness only");
    if (ci_order) validate_ordering(*ci_order, params.m);
    if (enumerate_committees(params).size() > 64)
      throw std::invalid_argument("the encoder supports at most 64 committees");
  }

  // Axioms a decoded table must satisfy.
  std::vector<Axiom> axioms() const {
    std::vector<Axiom> out{proportionality_axiom(proportionality), axiom_of(sp)};
    if (weak_efficiency) out.push_back(Axiom::weak_efficiency);
    return out;
  }
};

// Known relabelling assumptions: the base case fixes f(ab,c,d) = acd and the
// k = 2 instance fixes f(ab,ab,cd,cd) = ac.
struct SymmetryAssumption {
  Profile profile;
  Committee committee;
};

inline SymmetryAssumption symmetry_assumption_for(const ElectionParams& e) {
  if (e == ElectionParams{4, 3, 3})
    return {parse_profile("ab,c,d", 4), parse_committee("acd", e)};
  if (e == ElectionParams{4, 4, 2})
    return {parse_profile("ab,ab,cd,cd", 4), parse_committee("ac", e)};
  throw std::invalid_argument("no symmetry-breaking assumption is known for " + to_string(e));
}

// Committees allowed at profile p under the configured proportionality mode
// and weak efficiency, in lexicographic order.
inline std::vector<Committee> allowed_committees(const Profile& p, const EncodeConfig& cfg) {
  const auto& e = cfg.params;
  require_admissible(p, e);
  const int n = static_cast<int>(p.size());
  std::vector<Committee> out;
  const bool party_list = is_party_list(p);
  const Mask approved = approved_union(p);

  // Singleton candidates and ballots whose support reaches the quota.
  Mask must_contain = 0;
  std::vector<Mask> must_intersect;
  for (int i = 0; i < n; ++i) {
    const Mask a = p[i].mask;
    int support = 0;
    for (int j = 0; j < n; ++j) support += p[j].mask == a;
    switch (cfg.proportionality) {
      case ProportionalityMode::hare_singleton:
        if (party_list && std::popcount(a) == 1 && support * e.k >= e.n) must_contain |= a;
        break;
      case ProportionalityMode::droop_singleton:
        if (std::popcount(a) == 1 && support * (e.k + 1) > e.n) must_contain |= a;
        break;
      case ProportionalityMode::jr_party_lists:
        if (party_list && support * e.k >= e.n) must_intersect.push_back(a);
        break;
    }
  }
  const bool restrict_to_approved = cfg.weak_efficiency && std::popcount(approved) >= e.k;
  for (Committee w : enumerate_committees(e)) {
    if ((w.mask & must_contain) != must_contain) continue;
    if (std::any_of(must_intersect.begin(), must_intersect.end(),
                    [&](Mask a) { return (a & w.mask) == 0; }))
      continue;
    if (restrict_to_approved && (w.mask & ~approved) != 0) continue;
    out.push_back(w);
  }
  return out;
}

// Bijection between variable ids (dense from 1) and allowed (profile, committee)
// pairs. Ids run profile-rank-major, committee-lexicographic-minor.
class VarMap {
 public:
  VarMap() = default;
  explicit VarMap(ElectionParams params)
      : params_(params), committees_(enumerate_committees(params)) {
    ProfileSpace space(params);
    base_.assign(space.size(), 0);
    allowed_.assign(space.size(), 0);
  }

  const ElectionParams& params() const { return params_; }
  const std::vector<Committee>& committees() const { return committees_; }
  int num_vars() const { return num_vars_; }

  // Registers the allowed committees (bitmask over committee indices) of the
  // next profile; ranks must be added in increasing order.
  void add_profile(ProfileRank r, std::uint64_t allowed) {
    if (!encoded_.empty() && r <= encoded_.back())
      throw std::invalid_argument("profiles must be registered in increasing rank order");
    if (allowed == 0) return;
    base_[r] = static_cast<std::uint32_t>(num_vars_ + 1);
    allowed_[r] = allowed;
    encoded_.push_back(r);
    num_vars_ += std::popcount(allowed);
  }

  bool encoded(ProfileRank r) const { return base_[r] != 0; }
  std::uint64_t allowed_mask(ProfileRank r) const { return allowed_[r]; }
  const std::vector<ProfileRank>& encoded_profiles() const { return encoded_; }

  std::vector<Committee> allowed(ProfileRank r) const {
    std::vector<Committee> out;
    for (std::uint64_t a = allowed_[r]; a; a &= a - 1) out.push_back(committees_[std::countr_zero(a)]);
    return out;
  }

  int committee_index(Committee w) const {
    const auto it = std::find(committees_.begin(), committees_.end(), w);
    return it == committees_.end() ? -1 : static_cast<int>(it - committees_.begin());
  }

  // 0 when the pair has no variable.
  int var(ProfileRank r, int committee_idx) const {
    if (!base_[r] || committee_idx < 0 || !((allowed_[r] >> committee_idx) & 1u)) return 0;
    const std::uint64_t below = allowed_[r] & ((std::uint64_t{1} << committee_idx) - 1);
    return static_cast<int>(base_[r]) + std::popcount(below);
  }
  int var(ProfileRank r, Committee w) const { return var(r, committee_index(w)); }

  std::pair<ProfileRank, Committee> decode(int id) const {
    if (id < 1 || id > num_vars_) throw std::out_of_range("variable id out of range");
    auto it = std::upper_bound(encoded_.begin(), encoded_.end(), id,
                               [&](int x, ProfileRank r) { return x < static_cast<int>(base_[r]); });
    const ProfileRank r = *(it - 1);
    int offset = id - static_cast<int>(base_[r]);
    std::uint64_t a = allowed_[r];
    while (offset-- > 0) a &= a - 1;
    return {r, committees_[std::countr_zero(a)]};
  }

 private:
  ElectionParams params_{};
  std::vector<Committee> committees_;
  std::vector<std::uint32_t> base_;
  std::vector<std::uint64_t> allowed_;
  std::vector<ProfileRank> encoded_;
  int num_vars_ = 0;
};

struct Encoding {
  EncodeConfig config;
  Cnf cnf;
  VarMap varmap;
  // First profile whose allowed set is empty; the formula is then trivially
  // unsatisfiable.
  std::optional<ProfileRank> empty_allowed_at;
};

namespace detail {

inline std::uint64_t allowed_mask_of(const std::vector<Committee>& allowed,
                                     const std::vector<Committee>& all) {
  std::uint64_t mask = 0;
  for (Committee w : allowed) {
    const auto it = std::find(all.begin(), all.end(), w);
    mask |= std::uint64_t{1} << (it - all.begin());
  }
  return mask;
}

inline bool in_domain(const Profile& p, const EncodeConfig& cfg) {
  if (!is_admissible(p, cfg.params.k)) return false;
  return !cfg.ci_order || is_candidate_interval(p, *cfg.ci_order);
}

// C' ∩ A ⊋ C ∩ A
inline bool strict_gain(Ballot truthful, Committee before, Committee after) {
  return is_improvement(SpVariant::superset, truthful, before, after);
}

}  // namespace detail

inline Encoding encode(const EncodeConfig& cfg) {
  cfg.validate();
  Encoding enc;
  enc.config = cfg;
  const auto& e = cfg.params;
  const ProfileSpace space(e);
  enforce_cap(space, cfg.cap);
  enc.varmap = VarMap(e);
  auto& vm = enc.varmap;
  const auto& committees = vm.committees();

  for_each_profile(e, true, [&](ProfileRank r, const Profile& p) {
    if (!detail::in_domain(p, cfg)) return;
    const auto allowed = allowed_committees(p, cfg);
    if (allowed.empty()) {
      if (!enc.empty_allowed_at) enc.empty_allowed_at = r;
      return;
    }
    vm.add_profile(r, detail::allowed_mask_of(allowed, committees));
  });

  auto& cnf = enc.cnf;
  cnf.set_num_vars(vm.num_vars());
  const VariantMode mode = variant_mode(cfg.sp);
  std::vector<int> clause;
  std::vector<int> vars_here, idx_here, vars_there, idx_there;
  for (ProfileRank r : vm.encoded_profiles()) {
    const std::uint64_t allowed = vm.allowed_mask(r);
    idx_here.clear();
    vars_here.clear();
    for (std::uint64_t a = allowed; a; a &= a - 1) {
      idx_here.push_back(std::countr_zero(a));
      vars_here.push_back(vm.var(r, idx_here.back()));
    }

    cnf.begin_group({GroupKind::function_totality, r, 0, -1, {}});
    cnf.add_clause(vars_here);
    cnf.end_group();

    cnf.begin_group({GroupKind::function_uniqueness, r, 0, -1, {}});
    for (std::size_t a = 0; a < vars_here.size(); ++a)
      for (std::size_t b = a + 1; b < vars_here.size(); ++b)
        cnf.add_clause({-vars_here[a], -vars_here[b]});
    cnf.end_group();

    for (int i = 0; i < e.n; ++i) {
      const Ballot truthful = space.ballot(r, i);
      for (Ballot dev : variant_ballots(truthful, mode, e.m)) {
        const ProfileRank r2 = space.replace(r, i, truthful, dev);
        if (!vm.encoded(r2)) continue;
        idx_there.clear();
        vars_there.clear();
        for (std::uint64_t a = vm.allowed_mask(r2); a; a &= a - 1) {
          idx_there.push_back(std::countr_zero(a));
          vars_there.push_back(vm.var(r2, idx_there.back()));
        }
        cnf.begin_group({GroupKind::strategyproofness_pair, r, r2, i, {}});
        for (std::size_t a = 0; a < idx_here.size(); ++a)
          for (std::size_t b = 0; b < idx_there.size(); ++b)
            if (detail::strict_gain(truthful, committees[idx_here[a]], committees[idx_there[b]]))
              cnf.add_clause({-vars_here[a], -vars_there[b]});
        cnf.end_group();
      }
    }
  }

  if (cfg.symmetry_break) {
    const auto sym = symmetry_assumption_for(e);
    const ProfileRank r = space.rank(sym.profile);
    const int v = vm.var(r, sym.committee);
    if (v == 0)
      throw std::invalid_argument("symmetry assumption f(" + to_string(sym.profile) + ") = " +
                                  to_string(sym.committee) + " is not an allowed pair");
    cnf.begin_group({GroupKind::symmetry_assumption, r, 0, -1, sym.committee});
    cnf.add_clause({v});
    cnf.end_group();
  }
  return enc;
}

// Recomputes the clauses of one axiom instance from its payload alone.
inline std::vector<std::vector<int>> instance_clauses(const Encoding& enc,
                                                      const AxiomInstance& inst) {
  const auto& e = enc.config.params;
  const ProfileSpace space(e);
  const auto& vm = enc.varmap;
  std::vector<std::vector<int>> out;
  const Profile p = space.unrank(inst.profile);
  const auto here = allowed_committees(p, enc.config);
  switch (inst.kind) {
    case GroupKind::function_totality: {
      std::vector<int> c;
      for (Committee w : here) c.push_back(vm.var(inst.profile, w));
      out.push_back(c);
      break;
    }
    case GroupKind::function_uniqueness:
      for (std::size_t a = 0; a < here.size(); ++a)
        for (std::size_t b = a + 1; b < here.size(); ++b)
          out.push_back({-vm.var(inst.profile, here[a]), -vm.var(inst.profile, here[b])});
      break;
    case GroupKind::strategyproofness_pair: {
      const Profile q = space.unrank(inst.variant);
      const auto there = allowed_committees(q, enc.config);
      const Ballot truthful = p[inst.voter];
      for (Committee w : here)
        for (Committee w2 : there) {
          const Mask before = w.mask & truthful.mask, after = w2.mask & truthful.mask;
          if ((before & after) == before && before != after)
            out.push_back({-vm.var(inst.profile, w), -vm.var(inst.variant, w2)});
        }
      break;
    }
    case GroupKind::symmetry_assumption:
      out.push_back({vm.var(inst.profile, inst.committee)});
      break;
    case GroupKind::raw_clause:
      break;
  }
  return out;
}

// Human-readable description of one clause group.
inline std::string describe(const Encoding& enc, const AxiomInstance& inst) {
  const ProfileSpace space(enc.config.params);
  const auto p = to_string(space.unrank(inst.profile));
  switch (inst.kind) {
    case GroupKind::function_totality: return "f(" + p + ") takes an allowed value";
    case GroupKind::function_uniqueness: return "f(" + p + ") takes at most one value";
    case GroupKind::strategyproofness_pair:
      return "strategyproofness links (" + p + ") and (" +
             to_string(space.unrank(inst.variant)) + ") for voter " +
             std::to_string(inst.voter + 1);
    case GroupKind::symmetry_assumption:
      return "symmetry assumption f(" + p + ") = " + to_string(inst.committee);
    case GroupKind::raw_clause: return "clause";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Manifest: variable and group tables as JSON, written as a stream so large
// encodings do not need an in-memory document.

inline void write_manifest(std::ostream& os, const Encoding& enc) {
  const auto& cfg = enc.config;
  const auto& e = cfg.params;
  const ProfileSpace space(e);
  os << "{\n  \"format_version\": 1,\n";
  os << "  \"params\": {\"m\": " << e.m << ", \"n\": " << e.n << ", \"k\": " << e.k << "},\n";
  os << "  \"config\": {\"proportionality\": \"" << to_string(cfg.proportionality)
     << "\", \"sp\": \"" << to_string(cfg.sp) << "\", \"weak_efficiency\": "
     << (cfg.weak_efficiency ? "true" : "false")
     << ", \"symmetry_break\": " << (cfg.symmetry_break ? "true" : "false") << ", \"ci_order\": ";
  if (cfg.ci_order) {
    os << '"';
    for (int c : *cfg.ci_order) os << candidate_name(c);
    os << '"';
  } else {
    os << "null";
  }
  os << "},\n";
  os << "  \"num_vars\": " << enc.cnf.num_vars() << ",\n";
  os << "  \"num_clauses\": " << enc.cnf.num_clauses() << ",\n";
  os << "  \"variables\": [";
  bool first = true;
  Profile p;
  for (ProfileRank r : enc.varmap.encoded_profiles()) {
    space.unrank(r, p);
    const auto ptxt = to_string(p);
    for (Committee w : enc.varmap.allowed(r)) {
      os << (first ? "\n    " : ",\n    ") << "{\"id\": " << enc.varmap.var(r, w)
         << ", \"profile\": \"" << ptxt << "\", \"committee\": \"" << to_string(w) << "\"}";
      first = false;
    }
  }
  os << "\n  ],\n  \"groups\": [";
  first = true;
  for (std::size_t g = 0; g < enc.cnf.groups().size(); ++g) {
    const auto& grp = enc.cnf.groups()[g];
    const auto& inst = grp.instance;
    os << (first ? "\n    " : ",\n    ") << "{\"id\": " << g << ", \"kind\": \""
       << to_string(inst.kind) << "\", \"first_clause\": " << grp.first_clause
       << ", \"num_clauses\": " << grp.num_clauses;
    if (inst.kind != GroupKind::raw_clause)
      os << ", \"profile\": \"" << to_string(space.unrank(inst.profile)) << "\"";
    if (inst.kind == GroupKind::strategyproofness_pair)
      os << ", \"voter\": " << inst.voter + 1 << ", \"variant\": \""
         << to_string(space.unrank(inst.variant)) << "\"";
    if (inst.kind == GroupKind::symmetry_assumption)
      os << ", \"committee\": \"" << to_string(inst.committee) << "\"";
    os << "}";
    first = false;
  }
  os << "\n  ]\n}\n";
}

}  // namespace abcsat
