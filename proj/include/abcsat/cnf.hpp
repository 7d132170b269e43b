#pragma once

// Flat CNF storage with clause groups. Each group records the axiom instance
// its clauses were generated from, so clauses can be traced back to election
// semantics.

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "abcsat/core.hpp"

namespace abcsat {

enum class GroupKind {
  function_totality,
  function_uniqueness,
  strategyproofness_pair,
  symmetry_assumption,
  raw_clause,
};

inline std::string to_string(GroupKind k) {
  switch (k) {
    case GroupKind::function_totality: return "function-totality";
    case GroupKind::function_uniqueness: return "function-uniqueness";
    case GroupKind::strategyproofness_pair: return "strategyproofness-pair";
    case GroupKind::symmetry_assumption: return "symmetry-assumption";
    case GroupKind::raw_clause: return "raw-clause";
  }
  return "?";
}

inline GroupKind parse_group_kind(std::string_view s) {
  for (auto k : {GroupKind::function_totality, GroupKind::function_uniqueness,
                 GroupKind::strategyproofness_pair, GroupKind::symmetry_assumption,
                 GroupKind::raw_clause})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown group kind '" + std::string(s) + "'");
}

// What a clause group constrains. `profile` is the (truthful) profile rank;
// strategyproofness pairs also carry the voter and the deviating profile.
struct AxiomInstance {
  GroupKind kind = GroupKind::raw_clause;
  ProfileRank profile = 0;
  ProfileRank variant = 0;
  int voter = -1;
  Committee committee{};

  friend bool operator==(const AxiomInstance&, const AxiomInstance&) = default;
};

struct ClauseGroup {
  AxiomInstance instance;
  std::uint32_t first_clause = 0;
  std::uint32_t num_clauses = 0;
};

class Cnf {
 public:
  int num_vars() const { return num_vars_; }
  void set_num_vars(int n) { num_vars_ = n; }
  std::size_t num_clauses() const { return starts_.size() - 1; }
  std::size_t num_literals() const { return lits_.size(); }

  std::span<const int> clause(std::size_t i) const {
    return {lits_.data() + starts_[i], lits_.data() + starts_[i + 1]};
  }

  void add_clause(std::span<const int> lits) {
    if (lits.empty()) throw std::invalid_argument("empty clause");
    for (int l : lits)
      if (l == 0 || std::abs(l) > num_vars_)
        throw std::invalid_argument("literal " + std::to_string(l) + " out of range");
    lits_.insert(lits_.end(), lits.begin(), lits.end());
    if (lits_.size() > std::numeric_limits<std::uint32_t>::max())
      throw std::length_error("CNF exceeds 2^32 literals");
    starts_.push_back(static_cast<std::uint32_t>(lits_.size()));
    if (open_group_) ++groups_.back().num_clauses;
  }
  void add_clause(std::initializer_list<int> lits) {
    add_clause(std::span<const int>(lits.begin(), lits.size()));
  }

  // Clauses added between begin_group and end_group belong to the group.
  void begin_group(const AxiomInstance& inst) {
    groups_.push_back(ClauseGroup{inst, static_cast<std::uint32_t>(num_clauses()), 0});
    open_group_ = true;
  }
  void end_group() {
    open_group_ = false;
    if (!groups_.empty() && groups_.back().num_clauses == 0) groups_.pop_back();
  }

  const std::vector<ClauseGroup>& groups() const { return groups_; }
  void set_groups(std::vector<ClauseGroup> g) { groups_ = std::move(g); }

  // Puts every ungrouped clause into its own raw group.
  void group_each_clause() {
    groups_.clear();
    for (std::size_t i = 0; i < num_clauses(); ++i)
      groups_.push_back(ClauseGroup{AxiomInstance{}, static_cast<std::uint32_t>(i), 1});
  }

  void reserve(std::size_t clauses, std::size_t literals) {
    starts_.reserve(clauses + 1);
    lits_.reserve(literals);
  }

  bool same_clauses(const Cnf& other) const {
    return num_vars_ == other.num_vars_ && lits_ == other.lits_ && starts_ == other.starts_;
  }

 private:
  int num_vars_ = 0;
  std::vector<int> lits_;
  std::vector<std::uint32_t> starts_{0};
  std::vector<ClauseGroup> groups_;
  bool open_group_ = false;
};

}  // namespace abcsat
