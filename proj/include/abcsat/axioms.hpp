#pragma once

// Exhaustive axiom checkers over rule tables. Each returns a verdict that is
// either a pass or a concrete counterexample witness.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "abcsat/core.hpp"
#include "abcsat/rules.hpp"

namespace abcsat {

enum class Axiom {
  weak_efficiency,
  proportionality,
  jr_party_lists,
  jr,
  pjr,
  ejr,
  lower_quota,
  disjoint_diversity,
  droop_proportionality,
  subset_sp,
  superset_sp,
  cardinality_sp,
  hamming_sp,
  lemma2,
};

inline constexpr std::array kAllAxioms = {
    Axiom::weak_efficiency, Axiom::proportionality,      Axiom::jr_party_lists,
    Axiom::jr,              Axiom::pjr,                  Axiom::ejr,
    Axiom::lower_quota,     Axiom::disjoint_diversity,   Axiom::droop_proportionality,
    Axiom::subset_sp,       Axiom::superset_sp,          Axiom::cardinality_sp,
    Axiom::hamming_sp,      Axiom::lemma2,
};

inline std::string to_string(Axiom a) {
  switch (a) {
    case Axiom::weak_efficiency: return "weak-efficiency";
    case Axiom::proportionality: return "proportionality";
    case Axiom::jr_party_lists: return "jr-party-lists";
    case Axiom::jr: return "jr";
    case Axiom::pjr: return "pjr";
    case Axiom::ejr: return "ejr";
    case Axiom::lower_quota: return "lower-quota";
    case Axiom::disjoint_diversity: return "disjoint-diversity";
    case Axiom::droop_proportionality: return "droop-proportionality";
    case Axiom::subset_sp: return "subset-sp";
    case Axiom::superset_sp: return "superset-sp";
    case Axiom::cardinality_sp: return "cardinality-sp";
    case Axiom::hamming_sp: return "hamming-sp";
    case Axiom::lemma2: return "lemma2";
  }
  return "?";
}

inline Axiom parse_axiom(std::string_view name) {
  for (Axiom a : kAllAxioms)
    if (to_string(a) == name) return a;
  if (name == "droop") return Axiom::droop_proportionality;
  if (name == "hare" || name == "proportional") return Axiom::proportionality;
  if (name == "jr-party") return Axiom::jr_party_lists;
  throw std::invalid_argument("unknown axiom '" + std::string(name) + "'");
}

inline bool is_strategyproofness(Axiom a) {
  return a == Axiom::subset_sp || a == Axiom::superset_sp || a == Axiom::cardinality_sp ||
         a == Axiom::hamming_sp;
}

enum class SpVariant { subset, superset, cardinality, hamming };

inline std::string to_string(SpVariant v) {
  switch (v) {
    case SpVariant::subset: return "subset";
    case SpVariant::superset: return "superset";
    case SpVariant::cardinality: return "cardinality";
    case SpVariant::hamming: return "hamming";
  }
  return "?";
}

inline SpVariant parse_sp_variant(std::string_view name) {
  for (auto v : {SpVariant::subset, SpVariant::superset, SpVariant::cardinality,
                 SpVariant::hamming})
    if (to_string(v) == name) return v;
  throw std::invalid_argument("unknown strategyproofness variant '" + std::string(name) + "'");
}

inline Axiom axiom_of(SpVariant v) {
  switch (v) {
    case SpVariant::subset: return Axiom::subset_sp;
    case SpVariant::superset: return Axiom::superset_sp;
    case SpVariant::cardinality: return Axiom::cardinality_sp;
    case SpVariant::hamming: return Axiom::hamming_sp;
  }
  return Axiom::subset_sp;
}

inline SpVariant sp_variant_of(Axiom a) {
  switch (a) {
    case Axiom::subset_sp: return SpVariant::subset;
    case Axiom::superset_sp: return SpVariant::superset;
    case Axiom::cardinality_sp: return SpVariant::cardinality;
    case Axiom::hamming_sp: return SpVariant::hamming;
    default: throw std::invalid_argument(to_string(a) + " is not a strategyproofness axiom");
  }
}

inline VariantMode variant_mode(SpVariant v) {
  return v == SpVariant::subset ? VariantMode::proper_subset : VariantMode::arbitrary;
}

// Counterexample data. Voter indices are zero-based internally.
struct Witness {
  Profile profile;
  Committee committee;
  std::optional<int> voter;
  std::optional<Profile> variant;
  std::optional<Committee> variant_committee;
  std::vector<int> group;
  std::optional<int> candidate;
  std::optional<Ballot> party;
  int ell = 0;
  int required_seats = 0;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct AxiomVerdict {
  Axiom axiom{};
  bool passed = true;
  std::optional<Witness> witness;
  std::vector<Witness> all;  // only filled in collect-all mode
};

struct CheckOptions {
  bool collect_all = false;
  std::size_t max_witnesses = 1000;
  unsigned threads = 1;
};

// ---------------------------------------------------------------------------
// Per-profile predicates

namespace detail {

inline int count_ballot(std::span<const Ballot> p, Mask mask) {
  return static_cast<int>(std::count_if(p.begin(), p.end(), [&](Ballot b) { return b.mask == mask; }));
}

inline std::vector<int> voters_with_ballot(std::span<const Ballot> p, Mask mask) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(p.size()); ++i)
    if (p[i].mask == mask) out.push_back(i);
  return out;
}

inline std::vector<Mask> distinct_ballots(std::span<const Ballot> p) {
  std::vector<Mask> out;
  for (auto b : p)
    if (std::find(out.begin(), out.end(), b.mask) == out.end()) out.push_back(b.mask);
  std::sort(out.begin(), out.end());
  return out;
}

inline Witness base_witness(std::span<const Ballot> p, Committee w) {
  Witness out;
  out.profile.assign(p.begin(), p.end());
  out.committee = w;
  return out;
}

// Hare quota n/k compared exactly: count >= ell * n / k.
inline bool meets_hare(int count, int ell, const ElectionParams& e) {
  return static_cast<long long>(count) * e.k >= static_cast<long long>(ell) * e.n;
}

// Droop: count > n / (k + 1).
inline bool exceeds_droop(int count, const ElectionParams& e) {
  return static_cast<long long>(count) * (e.k + 1) > e.n;
}

inline std::optional<Witness> weak_efficiency_at(std::span<const Ballot> p, Committee w,
                                                 const ElectionParams& e) {
  const Mask u = approved_union(p);
  if (popcount(u) < e.k) return std::nullopt;
  const Mask bad = w.mask & ~u;
  if (!bad) return std::nullopt;
  auto out = base_witness(p, w);
  out.candidate = std::countr_zero(bad);
  return out;
}

inline std::optional<Witness> singleton_quota_at(std::span<const Ballot> p, Committee w,
                                                 const ElectionParams& e, bool droop) {
  if (!droop && !is_party_list(p)) return std::nullopt;
  for (int c = 0; c < e.m; ++c) {
    if (w.contains(c)) continue;
    const Mask single = Mask{1} << c;
    const int count = count_ballot(p, single);
    if (count == 0) continue;
    if (droop ? exceeds_droop(count, e) : meets_hare(count, 1, e)) {
      auto out = base_witness(p, w);
      out.candidate = c;
      out.group = voters_with_ballot(p, single);
      return out;
    }
  }
  return std::nullopt;
}

inline std::optional<Witness> jr_party_lists_at(std::span<const Ballot> p, Committee w,
                                                const ElectionParams& e) {
  if (!is_party_list(p)) return std::nullopt;
  for (Mask a : distinct_ballots(p)) {
    if (a & w.mask) continue;
    if (meets_hare(count_ballot(p, a), 1, e)) {
      auto out = base_witness(p, w);
      out.party = Ballot{a};
      out.group = voters_with_ballot(p, a);
      return out;
    }
  }
  return std::nullopt;
}

// A violating JR group can be taken as all voters who approve some c but no
// committee member.
inline std::optional<Witness> jr_at(std::span<const Ballot> p, Committee w,
                                    const ElectionParams& e) {
  for (int c = 0; c < e.m; ++c) {
    std::vector<int> group;
    for (int i = 0; i < static_cast<int>(p.size()); ++i)
      if (p[i].contains(c) && (p[i].mask & w.mask) == 0) group.push_back(i);
    if (!group.empty() && meets_hare(static_cast<int>(group.size()), 1, e)) {
      auto out = base_witness(p, w);
      out.group = std::move(group);
      out.candidate = c;
      out.ell = 1;
      return out;
    }
  }
  return std::nullopt;
}

// PJR is not monotone in the group (the union grows), so search all subsets.
inline std::optional<Witness> pjr_at(std::span<const Ballot> p, Committee w,
                                     const ElectionParams& e) {
  const int n = static_cast<int>(p.size());
  if (n > 24) throw std::invalid_argument("PJR subset search supports at most 24 voters");
  for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s) {
    Mask inter = ~Mask{0}, uni = 0;
    for (int i = 0; i < n; ++i)
      if ((s >> i) & 1u) {
        inter &= p[i].mask;
        uni |= p[i].mask;
      }
    const int size = std::popcount(s);
    const int max_ell = std::min(e.k, popcount(inter));
    const int covered = popcount(w.mask & uni);
    for (int ell = 1; ell <= max_ell; ++ell) {
      if (meets_hare(size, ell, e) && covered < ell) {
        auto out = base_witness(p, w);
        for (int i = 0; i < n; ++i)
          if ((s >> i) & 1u) out.group.push_back(i);
        out.ell = ell;
        return out;
      }
    }
  }
  return std::nullopt;
}

// For EJR, given a commonly approved set T of size ell, the largest violating
// group is every voter approving T with fewer than ell committee members.
inline std::optional<Witness> ejr_at(std::span<const Ballot> p, Committee w,
                                     const ElectionParams& e) {
  for (int ell = 1; ell <= e.k; ++ell) {
    for (Committee t : enumerate_committees(e.m, ell)) {
      std::vector<int> group;
      for (int i = 0; i < static_cast<int>(p.size()); ++i)
        if ((p[i].mask & t.mask) == t.mask && popcount(p[i].mask & w.mask) < ell)
          group.push_back(i);
      if (!group.empty() && meets_hare(static_cast<int>(group.size()), ell, e)) {
        auto out = base_witness(p, w);
        out.group = std::move(group);
        out.ell = ell;
        return out;
      }
    }
  }
  return std::nullopt;
}

inline std::optional<Witness> lower_quota_at(std::span<const Ballot> p, Committee w,
                                             const ElectionParams& e) {
  if (!is_party_list(p)) return std::nullopt;
  for (Mask a : distinct_ballots(p)) {
    const int count = count_ballot(p, a);
    const int required = static_cast<int>((static_cast<long long>(count) * e.k) / e.n);
    if (popcount(w.mask & a) < required) {
      auto out = base_witness(p, w);
      out.party = Ballot{a};
      out.group = voters_with_ballot(p, a);
      out.required_seats = required;
      return out;
    }
  }
  return std::nullopt;
}

inline std::optional<Witness> disjoint_diversity_at(std::span<const Ballot> p, Committee w,
                                                    const ElectionParams& e) {
  if (!is_party_list(p)) return std::nullopt;
  const auto parties = distinct_ballots(p);
  if (static_cast<int>(parties.size()) > e.k) return std::nullopt;
  for (Mask a : parties) {
    if ((a & w.mask) == 0) {
      auto out = base_witness(p, w);
      out.party = Ballot{a};
      out.group = voters_with_ballot(p, a);
      return out;
    }
  }
  return std::nullopt;
}

// Singleton {c} with at least n/k supporters and nobody else approving c.
inline std::optional<Witness> lemma2_at(std::span<const Ballot> p, Committee w,
                                        const ElectionParams& e) {
  for (int c = 0; c < e.m; ++c) {
    if (w.contains(c)) continue;
    const Mask single = Mask{1} << c;
    int count = 0;
    bool others = false;
    for (auto b : p) {
      if (b.mask == single) ++count;
      else if (b.contains(c)) others = true;
    }
    if (count > 0 && !others && meets_hare(count, 1, e)) {
      auto out = base_witness(p, w);
      out.candidate = c;
      out.group = voters_with_ballot(p, single);
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Violation of a profile-local axiom by committee w at profile p, if any.
inline std::optional<Witness> local_violation(Axiom a, std::span<const Ballot> p, Committee w,
                                              const ElectionParams& e) {
  switch (a) {
    case Axiom::weak_efficiency: return detail::weak_efficiency_at(p, w, e);
    case Axiom::proportionality: return detail::singleton_quota_at(p, w, e, false);
    case Axiom::droop_proportionality: return detail::singleton_quota_at(p, w, e, true);
    case Axiom::jr_party_lists: return detail::jr_party_lists_at(p, w, e);
    case Axiom::jr: return detail::jr_at(p, w, e);
    case Axiom::pjr: return detail::pjr_at(p, w, e);
    case Axiom::ejr: return detail::ejr_at(p, w, e);
    case Axiom::lower_quota: return detail::lower_quota_at(p, w, e);
    case Axiom::disjoint_diversity: return detail::disjoint_diversity_at(p, w, e);
    case Axiom::lemma2: return detail::lemma2_at(p, w, e);
    default:
      throw std::invalid_argument(to_string(a) + " is not a profile-local axiom");
  }
}

// f(P') ∩ A ⊋ f(P) ∩ A, |f(P') ∩ A| > |f(P) ∩ A|, or H(f(P'), A) < H(f(P), A).
inline bool is_improvement(SpVariant v, Ballot truthful, Committee before, Committee after) {
  const Mask a = truthful.mask;
  switch (v) {
    case SpVariant::subset:
    case SpVariant::superset: {
      const Mask old_hit = before.mask & a, new_hit = after.mask & a;
      return (old_hit & ~new_hit) == 0 && old_hit != new_hit;
    }
    case SpVariant::cardinality:
      return popcount(after.mask & a) > popcount(before.mask & a);
    case SpVariant::hamming:
      return hamming(after.mask, a) < hamming(before.mask, a);
  }
  return false;
}

namespace detail {

struct ScanResult {
  std::optional<Witness> first;
  std::vector<Witness> all;
};

inline void scan_sp_profile(const RuleTable& t, ProfileRank r, SpVariant v,
                            std::optional<int> only_voter, bool collect_all, std::size_t limit,
                            ScanResult& out) {
  const auto& space = t.space();
  const auto& e = t.params();
  const Committee w = t.at(r);
  for (int i = 0; i < e.n; ++i) {
    if (only_voter && *only_voter != i) continue;
    const Ballot truthful = space.ballot(r, i);
    for (Ballot b : variant_ballots(truthful, variant_mode(v), e.m)) {
      const ProfileRank r2 = space.replace(r, i, truthful, b);
      if (!t.defined(r2)) continue;
      const Committee w2 = t.at(r2);
      if (!is_improvement(v, truthful, w, w2)) continue;
      Witness wit;
      wit.profile = space.unrank(r);
      wit.committee = w;
      wit.voter = i;
      wit.variant = space.unrank(r2);
      wit.variant_committee = w2;
      if (!out.first) out.first = wit;
      if (!collect_all) return;
      if (out.all.size() < limit) out.all.push_back(std::move(wit));
    }
  }
}

inline ScanResult scan_range(const RuleTable& t, Axiom a, ProfileRank begin, ProfileRank end,
                             bool collect_all, std::size_t limit) {
  ScanResult out;
  const auto& space = t.space();
  Profile p;
  for (ProfileRank r = begin; r < end; ++r) {
    if (!t.defined(r)) continue;
    if (is_strategyproofness(a)) {
      scan_sp_profile(t, r, sp_variant_of(a), std::nullopt, collect_all, limit, out);
    } else {
      space.unrank(r, p);
      if (auto wit = local_violation(a, p, t.at(r), t.params())) {
        if (!out.first) out.first = *wit;
        if (collect_all && out.all.size() < limit) out.all.push_back(std::move(*wit));
      }
    }
    if (out.first && !collect_all) break;
  }
  return out;
}

}  // namespace detail

// Runs one axiom over every profile of the table's domain. Variant pairs are
// only compared when both profiles are in the domain. With several threads the
// rank space is split into contiguous chunks and the lowest-rank witness wins.
inline AxiomVerdict check_axiom(const RuleTable& t, Axiom a, const CheckOptions& opts = {}) {
  AxiomVerdict verdict;
  verdict.axiom = a;
  const ProfileRank total = t.size();
  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, 64));
  std::vector<detail::ScanResult> parts(threads);
  if (threads == 1) {
    parts[0] = detail::scan_range(t, a, 0, total, opts.collect_all, opts.max_witnesses);
  } else {
    std::vector<std::thread> pool;
    const ProfileRank chunk = (total + threads - 1) / threads;
    for (unsigned j = 0; j < threads; ++j) {
      const ProfileRank b = std::min<ProfileRank>(total, j * chunk);
      const ProfileRank e = std::min<ProfileRank>(total, b + chunk);
      pool.emplace_back([&, j, b, e] {
        parts[j] = detail::scan_range(t, a, b, e, opts.collect_all, opts.max_witnesses);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (auto& part : parts) {
    if (part.first && !verdict.witness) verdict.witness = part.first;
    for (auto& w : part.all)
      if (verdict.all.size() < opts.max_witnesses) verdict.all.push_back(std::move(w));
  }
  verdict.passed = !verdict.witness.has_value();
  return verdict;
}

inline AxiomVerdict check_weak_efficiency(const RuleTable& t, const CheckOptions& o = {}) {
  return check_axiom(t, Axiom::weak_efficiency, o);
}
inline AxiomVerdict check_proportionality(const RuleTable& t, const CheckOptions& o = {}) {
  return check_axiom(t, Axiom::proportionality, o);
}
inline AxiomVerdict check_jr_party_lists(const RuleTable& t, const CheckOptions& o = {}) {
  return check_axiom(t, Axiom::jr_party_lists, o);
}
inline AxiomVerdict check_jr(const RuleTable& t, const CheckOptions& o = {}) {
  return check_axiom(t, Axiom::jr, o);
}
inline AxiomVerdict check_pjr(const RuleTable& t, const CheckOptions& o = {}) {
  return check_axiom(t, Axiom::pjr, o);
}
inline AxiomVerdict check_ejr(const RuleTable& t, const CheckOptions& o = {}) {
  return check_axiom(t, Axiom::ejr, o);
}
inline AxiomVerdict check_lower_quota(const RuleTable& t, const CheckOptions& o = {}) {
  return check_axiom(t, Axiom::lower_quota, o);
}
inline AxiomVerdict check_disjoint_diversity(const RuleTable& t, const CheckOptions& o = {}) {
  return check_axiom(t, Axiom::disjoint_diversity, o);
}
inline AxiomVerdict check_droop_proportionality(const RuleTable& t, const CheckOptions& o = {}) {
  return check_axiom(t, Axiom::droop_proportionality, o);
}
inline AxiomVerdict check_strategyproofness(const RuleTable& t, SpVariant v,
                                            const CheckOptions& o = {}) {
  return check_axiom(t, axiom_of(v), o);
}

// First successful manipulation from profile p: voters ascending, deviating
// ballots in ascending mask order. `only_voter` restricts the search to one
// (zero-based) voter.
inline std::optional<Witness> find_manipulation(const RuleTable& t, const Profile& p,
                                                SpVariant v,
                                                std::optional<int> only_voter = std::nullopt) {
  require_admissible(p, t.params());
  if (only_voter && (*only_voter < 0 || *only_voter >= t.params().n))
    throw std::out_of_range("voter index out of range");
  const ProfileRank r = t.space().rank(p);
  if (!t.defined(r)) throw std::invalid_argument("profile " + to_string(p) + " is not in the table");
  detail::ScanResult out;
  detail::scan_sp_profile(t, r, v, only_voter, false, 0, out);
  return out.first;
}

// Re-checks a witness against the axiom's definition, using only the witness
// data and the table's values at the profiles it names.
inline bool witness_is_violation(const RuleTable& t, Axiom a, const Witness& w) {
  const auto& e = t.params();
  const auto& p = w.profile;
  if (static_cast<int>(p.size()) != e.n) return false;
  const ProfileRank r = t.space().rank(p);
  if (!t.defined(r) || t.at(r) != w.committee) return false;
  const Mask win = w.committee.mask;
  auto group_ok = [&] {
    if (w.group.empty()) return false;
    return std::all_of(w.group.begin(), w.group.end(), [&](int i) { return i >= 0 && i < e.n; });
  };
  auto count_of = [&](Mask m) {
    return static_cast<int>(std::count_if(p.begin(), p.end(), [&](Ballot b) { return b.mask == m; }));
  };
  auto hare = [&](long long count, long long ell) { return count * e.k >= ell * e.n; };
  Mask inter = ~Mask{0}, uni = 0;
  for (int i : w.group) {
    inter &= p[i].mask;
    uni |= p[i].mask;
  }
  switch (a) {
    case Axiom::weak_efficiency:
      return w.candidate && popcount(approved_union(p)) >= e.k && w.committee.contains(*w.candidate) &&
             !(approved_union(p) >> *w.candidate & 1u);
    case Axiom::proportionality:
      return w.candidate && is_party_list(p) && !w.committee.contains(*w.candidate) &&
             hare(count_of(Mask{1} << *w.candidate), 1);
    case Axiom::droop_proportionality:
      return w.candidate && !w.committee.contains(*w.candidate) &&
             static_cast<long long>(count_of(Mask{1} << *w.candidate)) * (e.k + 1) > e.n;
    case Axiom::lemma2: {
      if (!w.candidate || w.committee.contains(*w.candidate)) return false;
      const Mask single = Mask{1} << *w.candidate;
      for (auto b : p)
        if (b.mask != single && (b.mask & single)) return false;
      return hare(count_of(single), 1);
    }
    case Axiom::jr_party_lists:
      return w.party && is_party_list(p) && hare(count_of(w.party->mask), 1) &&
             (w.party->mask & win) == 0;
    case Axiom::jr:
      return group_ok() && inter != 0 && hare(static_cast<long long>(w.group.size()), 1) &&
             (uni & win) == 0;
    case Axiom::pjr:
      return group_ok() && w.ell >= 1 && w.ell <= e.k &&
             hare(static_cast<long long>(w.group.size()), w.ell) && popcount(inter) >= w.ell &&
             popcount(uni & win) < w.ell;
    case Axiom::ejr:
      return group_ok() && w.ell >= 1 && w.ell <= e.k &&
             hare(static_cast<long long>(w.group.size()), w.ell) && popcount(inter) >= w.ell &&
             std::all_of(w.group.begin(), w.group.end(),
                         [&](int i) { return popcount(p[i].mask & win) < w.ell; });
    case Axiom::lower_quota:
      return w.party && is_party_list(p) &&
             popcount(w.party->mask & win) <
                 static_cast<long long>(count_of(w.party->mask)) * e.k / e.n;
    case Axiom::disjoint_diversity:
      return w.party && is_party_list(p) && count_of(w.party->mask) > 0 &&
             static_cast<int>(detail::distinct_ballots(p).size()) <= e.k &&
             (w.party->mask & win) == 0;
    case Axiom::subset_sp:
    case Axiom::superset_sp:
    case Axiom::cardinality_sp:
    case Axiom::hamming_sp: {
      if (!w.voter || !w.variant || !w.variant_committee) return false;
      const int i = *w.voter;
      const auto& q = *w.variant;
      if (i < 0 || i >= e.n || static_cast<int>(q.size()) != e.n) return false;
      for (int j = 0; j < e.n; ++j)
        if (j != i && p[j] != q[j]) return false;
      if (p[i] == q[i]) return false;
      if (a == Axiom::subset_sp && (q[i].mask & ~p[i].mask) != 0) return false;
      const ProfileRank r2 = t.space().rank(q);
      if (!t.defined(r2) || t.at(r2) != *w.variant_committee) return false;
      const Mask before = win & p[i].mask, after = w.variant_committee->mask & p[i].mask;
      switch (a) {
        case Axiom::cardinality_sp: return popcount(after) > popcount(before);
        case Axiom::hamming_sp:
          return popcount(w.variant_committee->mask ^ p[i].mask) < popcount(win ^ p[i].mask);
        default: return (before & ~after) == 0 && before != after;
      }
    }
  }
  return false;
}

}  // namespace abcsat
