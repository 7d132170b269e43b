#pragma once

// Candidates, ballots, profiles and committees for approval-based committee
// elections, plus the enumeration machinery everything else is built on.
//
// Candidates are indices 0..m-1, rendered as letters a, b, c, ... A ballot or
// committee is a bitmask with candidate 0 in the least significant bit.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace abcsat {

using Mask = std::uint32_t;
using ProfileRank = std::uint64_t;

inline constexpr int kMaxCandidates = 26;

inline int popcount(Mask x) { return std::popcount(x); }

struct ElectionParams {
  int m = 0;  // candidates
  int n = 0;  // voters
  int k = 0;  // committee size

  friend bool operator==(const ElectionParams&, const ElectionParams&) = default;

  void validate() const {
    if (m < 1 || m > kMaxCandidates)
      throw std::invalid_argument("number of candidates must be in 1.." +
                                  std::to_string(kMaxCandidates));
    if (n < 1) throw std::invalid_argument("number of voters must be at least 1");
    if (k < 1 || k > m)
      throw std::invalid_argument("committee size must satisfy 1 <= k <= m");
  }

  Mask all_candidates() const { return m >= 32 ? ~Mask{0} : ((Mask{1} << m) - 1); }
  int num_ballots() const { return (1 << m) - 2; }
};

inline std::string to_string(const ElectionParams& p) {
  return "m=" + std::to_string(p.m) + ", n=" + std::to_string(p.n) +
         ", k=" + std::to_string(p.k);
}

// A nonempty proper subset of the candidates.
struct Ballot {
  Mask mask = 0;

  bool contains(int c) const { return (mask >> c) & 1u; }
  int size() const { return popcount(mask); }
  friend auto operator<=>(const Ballot&, const Ballot&) = default;
};

// A set of exactly k candidates.
struct Committee {
  Mask mask = 0;

  bool contains(int c) const { return (mask >> c) & 1u; }
  int size() const { return popcount(mask); }
  explicit operator bool() const { return mask != 0; }
  friend auto operator<=>(const Committee&, const Committee&) = default;
};

using Profile = std::vector<Ballot>;

inline bool is_valid_ballot(Mask mask, int m) {
  const Mask full = (m >= 32) ? ~Mask{0} : ((Mask{1} << m) - 1);
  return mask != 0 && (mask & ~full) == 0 && mask != full;
}

// ---------------------------------------------------------------------------
// Text forms

inline std::string candidate_name(int c) { return std::string(1, static_cast<char>('a' + c)); }

inline std::string mask_to_string(Mask mask) {
  std::string out;
  for (int c = 0; mask >> c; ++c)
    if ((mask >> c) & 1u) out.push_back(static_cast<char>('a' + c));
  return out;
}

inline std::string to_string(Ballot b) { return mask_to_string(b.mask); }
inline std::string to_string(Committee w) { return mask_to_string(w.mask); }

inline std::string to_string(const Profile& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out.push_back(',');
    out += to_string(p[i]);
  }
  return out;
}

inline Mask parse_candidates(std::string_view text, int m) {
  Mask mask = 0;
  for (char ch : text) {
    if (ch == ' ' || ch == '{' || ch == '}') continue;
    if (ch < 'a' || ch > 'z')
      throw std::invalid_argument("invalid candidate letter '" + std::string(1, ch) + "'");
    const int c = ch - 'a';
    if (c >= m)
      throw std::invalid_argument("candidate '" + std::string(1, ch) + "' out of range for m=" +
                                  std::to_string(m));
    if ((mask >> c) & 1u)
      throw std::invalid_argument("candidate '" + std::string(1, ch) + "' repeated");
    mask |= Mask{1} << c;
  }
  return mask;
}

inline Ballot parse_ballot(std::string_view text, int m) {
  const Mask mask = parse_candidates(text, m);
  if (!is_valid_ballot(mask, m))
    throw std::invalid_argument("ballot '" + std::string(text) +
                                "' must be a nonempty proper subset of the candidates");
  return Ballot{mask};
}

inline Committee parse_committee(std::string_view text, const ElectionParams& params) {
  const Mask mask = parse_candidates(text, params.m);
  if (popcount(mask) != params.k)
    throw std::invalid_argument("committee '" + std::string(text) + "' must have exactly " +
                                std::to_string(params.k) + " members");
  return Committee{mask};
}

// Parses the comma-separated form used throughout, e.g. "ab,c,d".
inline Profile parse_profile(std::string_view text, int m) {
  Profile out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto token = text.substr(start, comma == std::string_view::npos ? text.size() - start
                                                                          : comma - start);
    out.push_back(parse_ballot(token, m));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Elementary predicates

inline Mask approved_union(std::span<const Ballot> p) {
  Mask u = 0;
  for (const auto& b : p) u |= b.mask;
  return u;
}

inline bool is_admissible(std::span<const Ballot> p, int k) {
  return popcount(approved_union(p)) >= k;
}

inline bool is_party_list(std::span<const Ballot> p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i].mask != p[j].mask && (p[i].mask & p[j].mask) != 0) return false;
  return true;
}

// |A Δ B|
inline int hamming(Mask a, Mask b) { return popcount(a ^ b); }
inline int hamming(Ballot a, Ballot b) { return hamming(a.mask, b.mask); }
inline int hamming(Committee a, Ballot b) { return hamming(a.mask, b.mask); }
inline int hamming(Ballot a, Committee b) { return hamming(a.mask, b.mask); }
inline int hamming(Committee a, Committee b) { return hamming(a.mask, b.mask); }

// Checks that `ordering` lists every candidate 0..m-1 exactly once.
inline void validate_ordering(std::span<const int> ordering, int m) {
  if (static_cast<int>(ordering.size()) != m)
    throw std::invalid_argument("candidate ordering must list all " + std::to_string(m) +
                                " candidates");
  Mask seen = 0;
  for (int c : ordering) {
    if (c < 0 || c >= m) throw std::invalid_argument("candidate ordering entry out of range");
    if ((seen >> c) & 1u) throw std::invalid_argument("candidate ordering repeats a candidate");
    seen |= Mask{1} << c;
  }
}

inline std::vector<int> parse_ordering(std::string_view text, int m) {
  std::vector<int> out;
  for (char ch : text) {
    if (ch < 'a' || ch > 'z') throw std::invalid_argument("invalid candidate ordering");
    out.push_back(ch - 'a');
  }
  validate_ordering(out, m);
  return out;
}

// A ballot is an interval under `ordering` iff its positions are contiguous.
inline bool is_interval(Ballot b, std::span<const int> ordering) {
  int first = -1, last = -1, count = 0;
  for (int pos = 0; pos < static_cast<int>(ordering.size()); ++pos) {
    if (b.contains(ordering[pos])) {
      if (first < 0) first = pos;
      last = pos;
      ++count;
    }
  }
  return count > 0 && last - first + 1 == count;
}

inline bool is_candidate_interval(std::span<const Ballot> p, std::span<const int> ordering) {
  int m = static_cast<int>(ordering.size());
  validate_ordering(ordering, m);
  return std::all_of(p.begin(), p.end(), [&](Ballot b) { return is_interval(b, ordering); });
}

// ---------------------------------------------------------------------------
// Enumeration

// All nonempty proper subsets in ascending mask order.
inline std::vector<Ballot> enumerate_ballots(const ElectionParams& params) {
  if (params.m < 1 || params.m > kMaxCandidates)
    throw std::invalid_argument("enumerate_ballots requires 1 <= m <= " +
                                std::to_string(kMaxCandidates));
  std::vector<Ballot> out;
  const Mask full = params.all_candidates();
  for (Mask x = 1; x < full; ++x) out.push_back(Ballot{x});
  return out;
}

// All size-k subsets of m candidates, ordered lexicographically by their
// ascending member sequences (abc < abd < acd < bcd).
inline std::vector<Committee> enumerate_committees(int m, int k) {
  std::vector<Committee> out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k > m || k < 0) return out;
  while (true) {
    Mask mask = 0;
    for (int c : idx) mask |= Mask{1} << c;
    out.push_back(Committee{mask});
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

inline std::vector<Committee> enumerate_committees(const ElectionParams& params) {
  return enumerate_committees(params.m, params.k);
}

// Lexicographic comparison of committees as ascending member sequences.
inline bool committee_lex_less(Committee a, Committee b) {
  Mask x = a.mask, y = b.mask;
  while (x && y) {
    const int cx = std::countr_zero(x), cy = std::countr_zero(y);
    if (cx != cy) return cx < cy;
    x &= x - 1;
    y &= y - 1;
  }
  return x == 0 && y != 0;
}

// Mixed-radix index space over profiles. Voter 0 is the most significant
// digit, so ranks follow lexicographic order of ballot indices. Ballot index
// b corresponds to mask b + 1.
class ProfileSpace {
 public:
  explicit ProfileSpace(ElectionParams params) : params_(params) {
    params_.validate();
    radix_ = static_cast<std::uint64_t>(params_.num_ballots());
    place_.assign(params_.n, 1);
    std::uint64_t total = 1;
    for (int i = params_.n - 1; i >= 0; --i) {
      place_[i] = total;
      if (radix_ != 0 && total > std::numeric_limits<std::uint64_t>::max() / radix_)
        throw std::overflow_error("profile count overflows 64 bits for " + to_string(params_));
      total *= radix_;
    }
    size_ = radix_ == 0 ? 0 : total;
  }

  const ElectionParams& params() const { return params_; }
  std::uint64_t size() const { return size_; }
  std::uint64_t num_ballots() const { return radix_; }
  std::uint64_t place(int voter) const { return place_[voter]; }

  static Mask index_to_mask(std::uint64_t idx) { return static_cast<Mask>(idx + 1); }
  static std::uint64_t mask_to_index(Mask mask) { return mask - 1; }

  Ballot ballot(ProfileRank rank, int voter) const {
    return Ballot{index_to_mask((rank / place_[voter]) % radix_)};
  }

  Profile unrank(ProfileRank rank) const {
    Profile p(params_.n);
    for (int i = 0; i < params_.n; ++i) p[i] = ballot(rank, i);
    return p;
  }

  void unrank(ProfileRank rank, Profile& out) const {
    out.resize(params_.n);
    for (int i = 0; i < params_.n; ++i) out[i] = ballot(rank, i);
  }

  ProfileRank rank(std::span<const Ballot> p) const {
    if (static_cast<int>(p.size()) != params_.n)
      throw std::invalid_argument("profile has " + std::to_string(p.size()) +
                                  " ballots, expected " + std::to_string(params_.n));
    ProfileRank r = 0;
    for (int i = 0; i < params_.n; ++i) {
      if (!is_valid_ballot(p[i].mask, params_.m))
        throw std::invalid_argument("invalid ballot in profile");
      r += mask_to_index(p[i].mask) * place_[i];
    }
    return r;
  }

  // Rank of the profile that equals `rank` except voter `voter` casts `b`.
  ProfileRank replace(ProfileRank rank, int voter, Ballot old_ballot, Ballot b) const {
    return rank - mask_to_index(old_ballot.mask) * place_[voter] +
           mask_to_index(b.mask) * place_[voter];
  }

  bool admissible(ProfileRank rank) const {
    Mask u = 0;
    for (int i = 0; i < params_.n; ++i) u |= ballot(rank, i).mask;
    return popcount(u) >= params_.k;
  }

 private:
  ElectionParams params_;
  std::uint64_t radix_ = 0;
  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> place_;
};

// Streaming odometer over profiles in rank order. Holds one profile at a time.
class ProfileStream {
 public:
  ProfileStream(ElectionParams params, bool admissible_only)
      : space_(params), admissible_only_(admissible_only), digits_(params.n, 0),
        current_(params.n, Ballot{1}) {}

  // Advances to the next profile; returns false when exhausted.
  bool next() {
    while (advance()) {
      if (!admissible_only_ || is_admissible(current_, space_.params().k)) return true;
    }
    return false;
  }

  const Profile& profile() const { return current_; }
  ProfileRank rank() const { return rank_; }

 private:
  bool advance() {
    if (space_.size() == 0) return false;
    if (!started_) {
      started_ = true;
      rank_ = 0;
      return true;
    }
    const auto radix = space_.num_ballots();
    for (int i = space_.params().n - 1; i >= 0; --i) {
      if (++digits_[i] < radix) {
        current_[i] = Ballot{ProfileSpace::index_to_mask(digits_[i])};
        ++rank_;
        return true;
      }
      digits_[i] = 0;
      current_[i] = Ballot{1};
    }
    return false;
  }

  ProfileSpace space_;
  bool admissible_only_;
  bool started_ = false;
  std::vector<std::uint64_t> digits_;
  Profile current_;
  ProfileRank rank_ = 0;
};

template <class Fn>
void for_each_profile(const ElectionParams& params, bool admissible_only, Fn&& fn) {
  ProfileStream stream(params, admissible_only);
  while (stream.next()) fn(stream.rank(), stream.profile());
}

inline std::vector<Profile> enumerate_profiles(const ElectionParams& params, bool admissible_only) {
  std::vector<Profile> out;
  for_each_profile(params, admissible_only,
                   [&](ProfileRank, const Profile& p) { out.push_back(p); });
  return out;
}

enum class VariantMode { proper_subset, arbitrary };

// Ballots voter i may switch to: nonempty proper subsets of `truthful` or
// every other ballot, in ascending mask order.
inline std::vector<Ballot> variant_ballots(Ballot truthful, VariantMode mode, int m) {
  std::vector<Ballot> out;
  if (mode == VariantMode::proper_subset) {
    // ascending iteration over submasks
    const Mask a = truthful.mask;
    for (Mask s = (0 - a) & a; s != 0 && s != a; s = (s - a) & a) out.push_back(Ballot{s});
  } else {
    const Mask full = (m >= 32) ? ~Mask{0} : ((Mask{1} << m) - 1);
    for (Mask x = 1; x < full; ++x)
      if (x != truthful.mask) out.push_back(Ballot{x});
  }
  return out;
}

inline std::vector<Profile> i_variants(const Profile& p, int voter, VariantMode mode, int m) {
  if (voter < 0 || voter >= static_cast<int>(p.size()))
    throw std::out_of_range("voter index " + std::to_string(voter) + " out of range");
  std::vector<Profile> out;
  for (Ballot b : variant_ballots(p[voter], mode, m)) {
    Profile q = p;
    q[voter] = b;
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace abcsat
