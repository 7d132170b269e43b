#pragma once

// Deletion-based minimal unsatisfiable subsets at clause-group granularity.

#include <json.hpp>

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "abcsat/cnf.hpp"
#include "abcsat/encoder.hpp"
#include "abcsat/solver.hpp"

namespace abcsat {

class MusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MusOptions {
  // Totality and uniqueness groups define "is a rule" and are kept as hard
  // background instead of being deletion candidates.
  bool hard_background = true;
  SolverOptions solver{};
};

struct MusResult {
  std::vector<std::size_t> groups;      // retained deletable groups, ascending
  std::vector<std::size_t> background;  // hard groups of referenced profiles, ascending
  std::vector<ProfileRank> profiles;    // distinct profiles referenced, ascending
  std::size_t solver_calls = 0;
  bool hard_background = true;

  std::vector<std::size_t> all_groups() const {
    std::vector<std::size_t> out = groups;
    out.insert(out.end(), background.begin(), background.end());
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline bool is_background_kind(GroupKind k) {
  return k == GroupKind::function_totality || k == GroupKind::function_uniqueness;
}

namespace detail {

inline void referenced_profiles(const AxiomInstance& inst, std::set<ProfileRank>& out) {
  if (inst.kind == GroupKind::raw_clause) return;
  out.insert(inst.profile);
  if (inst.kind == GroupKind::strategyproofness_pair) out.insert(inst.variant);
}

inline void add_group(Solver& s, const Cnf& cnf, const ClauseGroup& g, int selector,
                      std::vector<int>& buf) {
  for (std::uint32_t c = g.first_clause; c < g.first_clause + g.num_clauses; ++c) {
    const auto cl = cnf.clause(c);
    buf.assign(cl.begin(), cl.end());
    if (selector) buf.push_back(-selector);
    s.add_clause(buf);
  }
}

// Fresh solver over the given groups; true iff they are unsatisfiable.
inline bool groups_unsat(const Cnf& cnf, const std::vector<std::size_t>& groups,
                         const SolverOptions& opts) {
  Solver s(opts);
  s.reserve_vars(cnf.num_vars());
  std::vector<int> buf;
  for (std::size_t g : groups) add_group(s, cnf, cnf.groups()[g], 0, buf);
  const auto r = s.solve();
  if (r.status == SolveStatus::aborted) throw MusError("solver aborted during MUS verification");
  return r.status == SolveStatus::unsatisfiable;
}

}  // namespace detail

inline MusResult extract_mus(const Cnf& cnf, const MusOptions& opts = {}) {
  const auto& groups = cnf.groups();
  std::vector<char> grouped(cnf.num_clauses(), 0);
  for (const auto& g : groups)
    std::fill(grouped.begin() + g.first_clause, grouped.begin() + g.first_clause + g.num_clauses, 1);

  Solver s(opts.solver);
  s.reserve_vars(cnf.num_vars());
  std::vector<int> buf;
  for (std::size_t c = 0; c < cnf.num_clauses(); ++c)
    if (!grouped[c]) s.add_clause(cnf.clause(c));

  std::vector<std::size_t> deletable;
  std::map<int, std::size_t> group_of_selector;
  std::vector<int> selector(groups.size(), 0);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (opts.hard_background && is_background_kind(groups[g].instance.kind)) {
      detail::add_group(s, cnf, groups[g], 0, buf);
    } else {
      selector[g] = cnf.num_vars() + 1 + static_cast<int>(deletable.size());
      group_of_selector[selector[g]] = g;
      deletable.push_back(g);
    }
  }
  s.reserve_vars(cnf.num_vars() + static_cast<int>(deletable.size()));
  for (std::size_t g : deletable) detail::add_group(s, cnf, groups[g], selector[g], buf);

  MusResult res;
  res.hard_background = opts.hard_background;
  auto run = [&](const std::set<std::size_t>& active) {
    std::vector<int> assumptions;
    for (std::size_t g : active) assumptions.push_back(selector[g]);
    ++res.solver_calls;
    auto r = s.solve(assumptions);
    if (r.status == SolveStatus::aborted) throw MusError("solver aborted during MUS extraction");
    return r;
  };
  auto failed_groups = [&](const SolveResult& r) {
    std::set<std::size_t> out;
    for (int l : *r.failed_assumptions) out.insert(group_of_selector.at(l));
    return out;
  };

  std::set<std::size_t> current(deletable.begin(), deletable.end());
  const auto first = run(current);
  if (first.status == SolveStatus::satisfiable) throw MusError("formula is satisfiable");
  current = failed_groups(first);

  std::set<std::size_t> necessary;
  while (true) {
    // Highest-numbered group not yet known to be necessary.
    auto it = std::find_if(current.rbegin(), current.rend(),
                           [&](std::size_t g) { return !necessary.count(g); });
    if (it == current.rend()) break;
    const std::size_t g = *it;
    std::set<std::size_t> trial = current;
    trial.erase(g);
    const auto r = run(trial);
    if (r.status == SolveStatus::unsatisfiable) {
      current = failed_groups(r);
    } else {
      necessary.insert(g);
    }
  }

  res.groups.assign(current.begin(), current.end());
  std::set<ProfileRank> profiles;
  for (std::size_t g : res.groups) detail::referenced_profiles(groups[g].instance, profiles);
  if (opts.hard_background) {
    for (std::size_t g = 0; g < groups.size(); ++g)
      if (is_background_kind(groups[g].instance.kind) && profiles.count(groups[g].instance.profile))
        res.background.push_back(g);
  }
  res.profiles.assign(profiles.begin(), profiles.end());
  return res;
}

struct MusVerification {
  bool unsatisfiable = false;
  bool group_minimal = false;
  std::size_t solver_calls = 0;
};

// Re-checks a core with fresh solvers: the retained groups plus background
// are unsatisfiable, and dropping any single retained group (against the
// full background) is satisfiable.
inline MusVerification verify_mus(const Cnf& cnf, const MusResult& mus,
                                  const SolverOptions& opts = {}) {
  MusVerification v;
  std::vector<std::size_t> hard;
  if (mus.hard_background)
    for (std::size_t g = 0; g < cnf.groups().size(); ++g)
      if (is_background_kind(cnf.groups()[g].instance.kind)) hard.push_back(g);

  v.unsatisfiable = detail::groups_unsat(cnf, mus.all_groups(), opts);
  ++v.solver_calls;
  v.group_minimal = true;
  for (std::size_t drop : mus.groups) {
    std::vector<std::size_t> trial = hard;
    for (std::size_t g : mus.groups)
      if (g != drop) trial.push_back(g);
    ++v.solver_calls;
    if (detail::groups_unsat(cnf, trial, opts)) {
      v.group_minimal = false;
      break;
    }
  }
  return v;
}

// The core as a standalone grouped formula (groups keep their order).
inline Cnf core_cnf(const Cnf& cnf, const MusResult& mus) {
  Cnf out;
  out.set_num_vars(cnf.num_vars());
  for (std::size_t g : mus.all_groups()) {
    const auto& grp = cnf.groups()[g];
    out.begin_group(grp.instance);
    for (std::uint32_t c = grp.first_clause; c < grp.first_clause + grp.num_clauses; ++c)
      out.add_clause(cnf.clause(c));
    out.end_group();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

struct MusLine {
  std::size_t group = 0;
  ProfileRank profile = 0;
  std::string text;
};

namespace detail {

inline std::string committee_set(const std::vector<Committee>& ws) {
  std::string s = "{";
  for (std::size_t i = 0; i < ws.size(); ++i) s += (i ? ", " : "") + to_string(ws[i]);
  return s + "}";
}

// Which axiom shrinks the allowed set at a profile.
inline std::string restriction_label(const Profile& p, const EncodeConfig& cfg,
                                     std::size_t allowed_count) {
  const std::size_t all = enumerate_committees(cfg.params).size();
  if (allowed_count == all) return "";
  EncodeConfig no_we = cfg;
  no_we.weak_efficiency = false;
  const bool prop = allowed_committees(p, no_we).size() < all;
  std::string name = to_string(proportionality_axiom(cfg.proportionality));
  if (cfg.proportionality == ProportionalityMode::hare_singleton) name = "proportionality";
  if (prop && cfg.weak_efficiency && allowed_committees(p, no_we).size() != allowed_count)
    return name + " and weak efficiency";
  return prop ? name : "weak efficiency";
}

}  // namespace detail

// One line per retained instance, ordered by profile rank. Uniqueness groups
// are listed only when they were deletion candidates.
inline std::vector<MusLine> render_mus(const MusResult& mus, const Encoding& enc) {
  const ProfileSpace space(enc.config.params);
  const auto& groups = enc.cnf.groups();
  std::vector<MusLine> lines;
  for (std::size_t g : mus.all_groups()) {
    if (g >= groups.size()) throw MusError("group " + std::to_string(g) + " is not in the encoding");
    const auto& inst = groups[g].instance;
    const Profile p = space.unrank(inst.profile);
    const auto ptxt = to_string(p);
    std::string text;
    switch (inst.kind) {
      case GroupKind::function_totality: {
        const auto allowed = enc.varmap.allowed(inst.profile);
        const auto label = detail::restriction_label(p, enc.config, allowed.size());
        text = label.empty() ? "f(" + ptxt + ") is some committee"
                             : label + " at profile (" + ptxt + ") forces " +
                                   detail::committee_set(allowed);
        break;
      }
      case GroupKind::function_uniqueness:
        if (mus.hard_background) continue;
        text = "f(" + ptxt + ") takes at most one value";
        break;
      case GroupKind::strategyproofness_pair:
        text = "strategyproofness links (" + ptxt + ") and (" +
               to_string(space.unrank(inst.variant)) + ") for voter " +
               std::to_string(inst.voter + 1);
        break;
      case GroupKind::symmetry_assumption:
        text = "without loss of generality f(" + ptxt + ") = " + to_string(inst.committee);
        break;
      case GroupKind::raw_clause:
        text = "clause group " + std::to_string(g);
        break;
    }
    lines.push_back({g, inst.profile, std::move(text)});
  }
  std::stable_sort(lines.begin(), lines.end(),
                   [](const MusLine& a, const MusLine& b) { return a.profile < b.profile; });
  return lines;
}

inline void print_mus(std::ostream& os, const MusResult& mus, const Encoding& enc) {
  os << "minimal unsatisfiable core: " << mus.groups.size() << " axiom instances, "
     << mus.background.size() << " background groups, " << mus.profiles.size() << " profiles\n";
  for (const auto& l : render_mus(mus, enc)) os << "  " << l.text << '\n';
}

// Re-derives each retained group's clauses from its instance and compares
// them with the stored clauses.
inline bool mus_round_trip(const MusResult& mus, const Encoding& enc) {
  auto sorted = [](std::vector<std::vector<int>> v) {
    for (auto& c : v) std::sort(c.begin(), c.end());
    std::sort(v.begin(), v.end());
    return v;
  };
  for (std::size_t g : mus.all_groups()) {
    const auto& grp = enc.cnf.groups()[g];
    std::vector<std::vector<int>> stored;
    for (std::uint32_t c = grp.first_clause; c < grp.first_clause + grp.num_clauses; ++c) {
      const auto cl = enc.cnf.clause(c);
      stored.emplace_back(cl.begin(), cl.end());
    }
    if (sorted(stored) != sorted(instance_clauses(enc, grp.instance))) return false;
  }
  return true;
}

inline nlohmann::json mus_to_json(const MusResult& mus, const Encoding& enc) {
  const ProfileSpace space(enc.config.params);
  nlohmann::json j;
  j["num_groups"] = mus.groups.size();
  j["num_background_groups"] = mus.background.size();
  j["hard_background"] = mus.hard_background;
  j["solver_calls"] = mus.solver_calls;
  auto& profiles = j["profiles"] = nlohmann::json::array();
  for (ProfileRank r : mus.profiles) profiles.push_back(to_string(space.unrank(r)));
  auto& lines = j["instances"] = nlohmann::json::array();
  for (const auto& l : render_mus(mus, enc)) {
    const auto& grp = enc.cnf.groups()[l.group];
    nlohmann::json clauses = nlohmann::json::array();
    for (std::uint32_t c = grp.first_clause; c < grp.first_clause + grp.num_clauses; ++c) {
      const auto cl = enc.cnf.clause(c);
      clauses.push_back(std::vector<int>(cl.begin(), cl.end()));
    }
    lines.push_back({{"group", l.group},
                     {"kind", to_string(grp.instance.kind)},
                     {"profile", to_string(space.unrank(l.profile))},
                     {"text", l.text},
                     {"clauses", clauses}});
  }
  return j;
}

// Grouped DIMACS for external group-MUS tools: group {0} is hard.
inline void emit_gcnf(std::ostream& os, const Cnf& cnf, bool hard_background = true) {
  const auto& groups = cnf.groups();
  std::vector<std::size_t> label(cnf.num_clauses(), 0);
  std::size_t next = 0;
  for (const auto& g : groups) {
    const std::size_t id = hard_background && is_background_kind(g.instance.kind) ? 0 : ++next;
    for (std::uint32_t c = g.first_clause; c < g.first_clause + g.num_clauses; ++c) label[c] = id;
  }
  os << "p gcnf " << cnf.num_vars() << ' ' << cnf.num_clauses() << ' ' << next << '\n';
  for (std::size_t c = 0; c < cnf.num_clauses(); ++c) {
    os << '{' << label[c] << '}';
    for (int l : cnf.clause(c)) os << ' ' << l;
    os << " 0\n";
  }
}

}  // namespace abcsat
