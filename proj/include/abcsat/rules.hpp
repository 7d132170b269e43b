#pragma once

// Reference committee rules (AV, PAV) and explicit rule tables.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdlib>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "abcsat/core.hpp"

namespace abcsat {

inline constexpr std::uint64_t kDefaultProfileCap = 100'000'000;

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Profile-count cap, overridable via ABCSAT_PROFILE_CAP.
struct ProfileCap {
  std::uint64_t limit = kDefaultProfileCap;
  bool from_environment = false;

  static ProfileCap from_env() {
    ProfileCap cap;
    if (const char* env = std::getenv("ABCSAT_PROFILE_CAP")) {
      char* end = nullptr;
      const auto value = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && value > 0) {
        cap.limit = value;
        cap.from_environment = true;
      }
    }
    return cap;
  }
};

inline void enforce_cap(const ProfileSpace& space, std::uint64_t cap) {
  if (space.size() > cap)
    throw CapExceeded("enumeration of " + std::to_string(space.size()) + " profiles for " +
                      to_string(space.params()) + " exceeds the profile cap of " +
                      std::to_string(cap) + " (m and n are responsible)");
}

// An explicit rule: a committee for every profile rank in its domain.
// A zero mask marks a profile outside the domain.
class RuleTable {
 public:
  RuleTable() = default;
  explicit RuleTable(ElectionParams params, std::uint64_t cap = kDefaultProfileCap)
      : params_(params), space_(params) {
    enforce_cap(space_, cap);
    entries_.assign(space_.size(), 0);
  }

  const ElectionParams& params() const { return params_; }
  const ProfileSpace& space() const { return space_; }
  std::uint64_t size() const { return entries_.size(); }

  bool defined(ProfileRank r) const { return entries_[r] != 0; }
  Committee at(ProfileRank r) const { return Committee{entries_[r]}; }
  Committee at(const Profile& p) const { return at(space_.rank(p)); }

  void set(ProfileRank r, Committee w) {
    if (w.size() != params_.k || (w.mask & ~params_.all_candidates()) != 0)
      throw std::invalid_argument("committee " + to_string(w) + " is not a valid size-" +
                                  std::to_string(params_.k) + " committee");
    entries_[r] = w.mask;
  }
  void set(const Profile& p, Committee w) { set(space_.rank(p), w); }
  void erase(ProfileRank r) { entries_[r] = 0; }

  std::uint64_t defined_count() const {
    return static_cast<std::uint64_t>(
        std::count_if(entries_.begin(), entries_.end(), [](Mask x) { return x != 0; }));
  }

  // True iff the domain is exactly the admissible profiles.
  bool covers_admissible_domain() const {
    for (ProfileRank r = 0; r < entries_.size(); ++r)
      if (defined(r) != space_.admissible(r)) return false;
    return true;
  }

  const std::vector<Mask>& raw() const { return entries_; }

  friend bool operator==(const RuleTable& a, const RuleTable& b) {
    return a.params_ == b.params_ && a.entries_ == b.entries_;
  }

 private:
  ElectionParams params_{};
  ProfileSpace space_{ElectionParams{1, 1, 1}};
  std::vector<Mask> entries_;
};

// ---------------------------------------------------------------------------
// Approval Voting

inline std::vector<int> approval_scores(std::span<const Ballot> p, int m) {
  std::vector<int> score(m, 0);
  for (const auto& b : p)
    for (int c = 0; c < m; ++c) score[c] += b.contains(c);
  return score;
}

inline void require_admissible(std::span<const Ballot> p, const ElectionParams& params) {
  if (!is_admissible(p, params.k))
    throw std::invalid_argument("profile approves fewer than k=" + std::to_string(params.k) +
                                " candidates");
}

// The k highest approval scores; ties go to the lower candidate index.
inline Committee av(std::span<const Ballot> p, const ElectionParams& params) {
  require_admissible(p, params);
  const auto score = approval_scores(p, params.m);
  std::vector<int> order(params.m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return score[a] > score[b]; });
  Mask w = 0;
  for (int i = 0; i < params.k; ++i) w |= Mask{1} << order[i];
  return Committee{w};
}

// ---------------------------------------------------------------------------
// Proportional Approval Voting

using Rational = boost::multiprecision::cpp_rational;

struct PavScore {
  Rational value;
  friend bool operator==(const PavScore&, const PavScore&) = default;
  friend bool operator<(const PavScore& a, const PavScore& b) { return a.value < b.value; }
};

inline Rational harmonic(int r) {
  Rational h = 0;
  for (int j = 1; j <= r; ++j) h += Rational(1, j);
  return h;
}

inline PavScore pav_score(std::span<const Ballot> p, Committee w) {
  Rational total = 0;
  for (const auto& b : p) total += harmonic(popcount(b.mask & w.mask));
  return PavScore{total};
}

namespace detail {

// Harmonic prefixes scaled by lcm(1..k) so scores compare exactly as integers.
struct ScaledHarmonics {
  std::vector<std::uint64_t> values;

  explicit ScaledHarmonics(int k) {
    std::uint64_t l = 1;
    for (int j = 1; j <= k; ++j) l = std::lcm(l, static_cast<std::uint64_t>(j));
    values.assign(k + 1, 0);
    for (int j = 1; j <= k; ++j) values[j] = values[j - 1] + l / j;
  }
};

}  // namespace detail

// Lexicographically first committee maximising the PAV score.
inline Committee pav(std::span<const Ballot> p, const ElectionParams& params,
                     const std::vector<Committee>& committees) {
  require_admissible(p, params);
  static thread_local std::vector<detail::ScaledHarmonics> cache;
  if (cache.size() <= static_cast<std::size_t>(params.k)) cache.clear();
  while (cache.size() <= static_cast<std::size_t>(params.k))
    cache.emplace_back(static_cast<int>(cache.size()));
  const auto& h = cache[params.k].values;

  Committee best{};
  std::uint64_t best_score = 0;
  bool first = true;
  for (Committee w : committees) {  // lexicographic order
    std::uint64_t s = 0;
    for (const auto& b : p) s += h[popcount(b.mask & w.mask)];
    if (first || s > best_score) {
      best = w;
      best_score = s;
      first = false;
    }
  }
  return best;
}

inline Committee pav(std::span<const Ballot> p, const ElectionParams& params) {
  return pav(p, params, enumerate_committees(params));
}

// ---------------------------------------------------------------------------
// Tables

enum class NamedRule { av, pav };

inline std::string to_string(NamedRule r) { return r == NamedRule::av ? "av" : "pav"; }

using RuleFn = std::function<Committee(const Profile&, const ElectionParams&)>;

inline RuleTable build_table(const RuleFn& rule, const ElectionParams& params,
                             std::uint64_t cap = kDefaultProfileCap) {
  RuleTable t(params, cap);
  for_each_profile(params, true,
                   [&](ProfileRank r, const Profile& p) { t.set(r, rule(p, params)); });
  return t;
}

inline RuleTable build_table(NamedRule rule, const ElectionParams& params,
                             std::uint64_t cap = kDefaultProfileCap) {
  if (rule == NamedRule::av)
    return build_table([](const Profile& p, const ElectionParams& e) { return av(p, e); },
                       params, cap);
  const auto committees = enumerate_committees(params);
  return build_table(
      [&](const Profile& p, const ElectionParams& e) { return pav(p, e, committees); }, params,
      cap);
}

}  // namespace abcsat
