#pragma once

// A conflict-driven clause-learning SAT solver with two-watched literals,
// dedicated binary implication lists, VSIDS, phase saving, Luby restarts and
// assumption literals. Fully deterministic: no randomness anywhere.
//
// Literals use DIMACS conventions at the interface (nonzero ints, negative =
// negated). Internally variable v (1-based) maps to literals 2(v-1) and
// 2(v-1)+1 for the positive and negative phase.

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <optional>
#include <span>
#include <vector>

#include "abcsat/cnf.hpp"

namespace abcsat {

enum class SolveStatus { satisfiable, unsatisfiable, aborted };

inline std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::satisfiable: return "SAT";
    case SolveStatus::unsatisfiable: return "UNSAT";
    case SolveStatus::aborted: return "ABORTED";
  }
  return "?";
}

struct SolverStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t restarts = 0;
  std::uint64_t learnts_deleted = 0;
};

struct SolverOptions {
  bool restarts = true;
  bool reduce_learnts = true;
  std::uint64_t conflict_limit = 0;  // per solve call, 0 = unlimited
  int restart_base = 100;
  double var_decay = 0.95;
  double clause_decay = 0.999;
};

struct SolveResult {
  SolveStatus status = SolveStatus::aborted;
  // model[v] for v in 1..num_vars; index 0 unused.
  std::optional<std::vector<bool>> model;
  // Subset of the assumptions that is already unsatisfiable with the formula.
  std::optional<std::vector<int>> failed_assumptions;
  SolverStats stats;
};

class Solver {
 public:
  explicit Solver(SolverOptions opts = {}) : opts_(opts) {}

  int num_vars() const { return static_cast<int>(assigns_.size()); }
  std::size_t num_clauses() const { return num_original_; }
  const SolverStats& stats() const { return stats_; }
  bool okay() const { return ok_; }

  void reserve_vars(int n) {
    while (num_vars() < n) new_var();
  }

  int new_var() {
    const int v = num_vars();
    assigns_.push_back(0);
    level_.push_back(0);
    reason_.push_back(Reason{});
    polarity_.push_back(1);
    activity_.push_back(0.0);
    seen_.push_back(0);
    heap_index_.push_back(-1);
    watches_.emplace_back();
    watches_.emplace_back();
    bins_.emplace_back();
    bins_.emplace_back();
    heap_insert(v);
    return v + 1;
  }

  // Returns false if the formula became trivially unsatisfiable.
  bool add_clause(std::span<const int> dimacs) {
    if (!ok_) return false;
    cancel_until(0);
    tmp_.clear();
    for (int d : dimacs) {
      assert(d != 0);
      reserve_vars(std::abs(d));
      tmp_.push_back(from_dimacs(d));
    }
    std::sort(tmp_.begin(), tmp_.end());
    std::size_t j = 0;
    Lit prev = kUndefLit;
    for (Lit l : tmp_) {
      if (value(l) == kTrue || l == neg(prev)) return true;  // satisfied or tautology
      if (value(l) != kFalse && l != prev) tmp_[j++] = prev = l;
    }
    tmp_.resize(j);
    ++num_original_;
    if (tmp_.empty()) return ok_ = false;
    if (tmp_.size() == 1) {
      enqueue(tmp_[0], Reason{});
      if (propagate().any()) ok_ = false;
      return ok_;
    }
    if (tmp_.size() == 2) {
      add_binary(tmp_[0], tmp_[1]);
      return true;
    }
    attach(alloc_clause(tmp_, false));
    return true;
  }

  bool add_clause(std::initializer_list<int> lits) {
    return add_clause(std::span<const int>(lits.begin(), lits.size()));
  }

  void load(const Cnf& cnf) {
    reserve_vars(cnf.num_vars());
    for (std::size_t i = 0; i < cnf.num_clauses() && ok_; ++i) add_clause(cnf.clause(i));
  }

  SolveResult solve(std::span<const int> assumptions = {}) {
    SolveResult result;
    const SolverStats before = stats_;
    assumptions_.clear();
    for (int d : assumptions) {
      reserve_vars(std::abs(d));
      assumptions_.push_back(from_dimacs(d));
    }
    conflict_out_.clear();
    cancel_until(0);
    Status status = ok_ ? Status::undef : Status::unsat;
    const std::uint64_t budget_start = stats_.conflicts;
    int restart_count = 0;
    while (status == Status::undef) {
      const double luby_factor = luby(2.0, restart_count++);
      const std::uint64_t limit =
          opts_.restarts ? static_cast<std::uint64_t>(luby_factor * opts_.restart_base)
                         : std::numeric_limits<std::uint64_t>::max();
      status = search(limit, budget_start);
      if (status == Status::undef) {
        ++stats_.restarts;
        if (opts_.conflict_limit && stats_.conflicts - budget_start >= opts_.conflict_limit) {
          status = Status::aborted;
          break;
        }
        if (opts_.reduce_learnts && learnts_.size() >= max_learnts_ + trail_.size()) reduce_db();
      }
    }

    if (status == Status::sat) {
      result.status = SolveStatus::satisfiable;
      std::vector<bool> model(num_vars() + 1, false);
      for (int v = 0; v < num_vars(); ++v) model[v + 1] = assigns_[v] == kTrue;
      result.model = std::move(model);
    } else if (status == Status::unsat) {
      result.status = SolveStatus::unsatisfiable;
      std::vector<int> failed;
      for (Lit l : conflict_out_) failed.push_back(to_dimacs(neg(l)));
      std::sort(failed.begin(), failed.end(),
                [](int a, int b) { return std::abs(a) < std::abs(b) || (std::abs(a) == std::abs(b) && a < b); });
      failed.erase(std::unique(failed.begin(), failed.end()), failed.end());
      result.failed_assumptions = std::move(failed);
    } else {
      result.status = SolveStatus::aborted;
    }
    cancel_until(0);
    result.stats.decisions = stats_.decisions - before.decisions;
    result.stats.propagations = stats_.propagations - before.propagations;
    result.stats.conflicts = stats_.conflicts - before.conflicts;
    result.stats.restarts = stats_.restarts - before.restarts;
    result.stats.learnts_deleted = stats_.learnts_deleted - before.learnts_deleted;
    return result;
  }

 private:
  using Lit = std::uint32_t;
  using CRef = std::uint32_t;
  static constexpr Lit kUndefLit = 0xFFFFFFFFu;
  static constexpr CRef kNoClause = 0xFFFFFFFFu;
  static constexpr CRef kBinaryReason = 0xFFFFFFFEu;
  static constexpr std::int8_t kTrue = 1, kFalse = -1, kUndef = 0;

  enum class Status { undef, sat, unsat, aborted };

  struct Reason {
    CRef cref = kNoClause;
    Lit other = kUndefLit;  // the false literal of a binary reason clause
  };

  struct Watcher {
    CRef cref;
    Lit blocker;
  };

  // A conflicting clause: either an arena clause or a binary pair.
  struct Conflict {
    CRef cref = kNoClause;
    Lit a = kUndefLit, b = kUndefLit;
    bool any() const { return cref != kNoClause || a != kUndefLit; }
  };

  static Lit from_dimacs(int d) {
    return static_cast<Lit>(2 * (std::abs(d) - 1) + (d < 0 ? 1 : 0));
  }
  static int to_dimacs(Lit l) {
    const int v = static_cast<int>(l >> 1) + 1;
    return (l & 1u) ? -v : v;
  }
  static Lit neg(Lit l) { return l ^ 1u; }
  static int var(Lit l) { return static_cast<int>(l >> 1); }

  std::int8_t value(Lit l) const {
    const std::int8_t a = assigns_[var(l)];
    return (l & 1u) ? static_cast<std::int8_t>(-a) : a;
  }

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  // Clause arena layout: [header][lbd][activity][lits...], header = size << 2
  // | deleted << 1 | learnt.
  std::uint32_t clause_size(CRef c) const { return arena_[c] >> 2; }
  bool clause_learnt(CRef c) const { return arena_[c] & 1u; }
  bool clause_deleted(CRef c) const { return (arena_[c] >> 1) & 1u; }
  Lit* clause_lits(CRef c) { return arena_.data() + c + 3; }
  const Lit* clause_lits(CRef c) const { return arena_.data() + c + 3; }
  float clause_activity(CRef c) const { return std::bit_cast<float>(arena_[c + 2]); }
  void set_clause_activity(CRef c, float a) { arena_[c + 2] = std::bit_cast<std::uint32_t>(a); }

  CRef alloc_clause(const std::vector<Lit>& lits, bool learnt) {
    const CRef c = static_cast<CRef>(arena_.size());
    arena_.push_back(static_cast<std::uint32_t>(lits.size() << 2) | (learnt ? 1u : 0u));
    arena_.push_back(0);
    arena_.push_back(0);
    arena_.insert(arena_.end(), lits.begin(), lits.end());
    (learnt ? learnts_ : clauses_).push_back(c);
    return c;
  }

  void attach(CRef c) {
    const Lit* l = clause_lits(c);
    watches_[neg(l[0])].push_back(Watcher{c, l[1]});
    watches_[neg(l[1])].push_back(Watcher{c, l[0]});
  }

  void add_binary(Lit a, Lit b) {
    bins_[neg(a)].push_back(b);
    bins_[neg(b)].push_back(a);
  }

  void enqueue(Lit l, Reason r) {
    const int v = var(l);
    assigns_[v] = (l & 1u) ? kFalse : kTrue;
    level_[v] = decision_level();
    reason_[v] = r;
    trail_.push_back(l);
  }

  Conflict propagate() {
    Conflict confl;
    while (qhead_ < trail_.size()) {
      const Lit p = trail_[qhead_++];
      ++stats_.propagations;
      for (Lit q : bins_[p]) {
        const auto v = value(q);
        if (v == kFalse) {
          confl.a = q;
          confl.b = neg(p);
          qhead_ = trail_.size();
          return confl;
        }
        if (v == kUndef) enqueue(q, Reason{kBinaryReason, neg(p)});
      }
      auto& ws = watches_[p];
      const Lit false_lit = neg(p);
      std::size_t i = 0, j = 0;
      const std::size_t end = ws.size();
      while (i < end) {
        const Watcher w = ws[i];
        if (value(w.blocker) == kTrue) {
          ws[j++] = ws[i++];
          continue;
        }
        Lit* c = clause_lits(w.cref);
        if (c[0] == false_lit) std::swap(c[0], c[1]);
        ++i;
        const Lit first = c[0];
        const Watcher nw{w.cref, first};
        if (first != w.blocker && value(first) == kTrue) {
          ws[j++] = nw;
          continue;
        }
        const std::uint32_t size = clause_size(w.cref);
        bool moved = false;
        for (std::uint32_t k = 2; k < size; ++k) {
          if (value(c[k]) != kFalse) {
            std::swap(c[1], c[k]);
            watches_[neg(c[1])].push_back(nw);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = nw;
        if (value(first) == kFalse) {
          confl.cref = w.cref;
          qhead_ = trail_.size();
          while (i < end) ws[j++] = ws[i++];
        } else {
          enqueue(first, Reason{w.cref, kUndefLit});
        }
      }
      ws.resize(j);
      if (confl.any()) return confl;
    }
    return confl;
  }

  // Calls fn on every literal of the reason clause other than the implied one.
  template <class Fn>
  void for_each_antecedent(int v, Fn&& fn) {
    const Reason& r = reason_[v];
    if (r.cref == kBinaryReason) {
      fn(r.other);
    } else {
      const Lit* c = clause_lits(r.cref);
      const std::uint32_t size = clause_size(r.cref);
      for (std::uint32_t k = 1; k < size; ++k) fn(c[k]);
    }
  }

  void bump_var(int v) {
    if ((activity_[v] += var_inc_) > 1e100) {
      for (auto& a : activity_) a *= 1e-100;
      var_inc_ *= 1e-100;
    }
    if (heap_index_[v] >= 0) heap_up(heap_index_[v]);
  }

  void bump_clause(CRef c) {
    set_clause_activity(c, clause_activity(c) + static_cast<float>(cla_inc_));
    if (clause_activity(c) > 1e20f) {
      for (CRef l : learnts_) set_clause_activity(l, clause_activity(l) * 1e-20f);
      cla_inc_ *= 1e-20;
    }
  }

  std::uint32_t abstract_level(int v) const { return 1u << (level_[v] & 31); }

  void analyze(const Conflict& confl, std::vector<Lit>& out, int& out_level) {
    int path = 0;
    Lit p = kUndefLit;
    out.clear();
    out.push_back(kUndefLit);
    std::size_t index = trail_.size();

    auto visit = [&](Lit q) {
      const int v = var(q);
      if (!seen_[v] && level_[v] > 0) {
        bump_var(v);
        seen_[v] = 1;
        if (level_[v] >= decision_level()) ++path;
        else out.push_back(q);
      }
    };

    if (confl.cref != kNoClause) {
      if (clause_learnt(confl.cref)) bump_clause(confl.cref);
      const Lit* c = clause_lits(confl.cref);
      for (std::uint32_t k = 0; k < clause_size(confl.cref); ++k) visit(c[k]);
    } else {
      visit(confl.a);
      visit(confl.b);
    }
    while (true) {
      while (!seen_[var(trail_[--index])]) {
      }
      p = trail_[index];
      const int v = var(p);
      seen_[v] = 0;
      if (--path == 0) break;
      const Reason& r = reason_[v];
      if (r.cref != kBinaryReason && clause_learnt(r.cref)) bump_clause(r.cref);
      for_each_antecedent(v, visit);
    }
    out[0] = neg(p);

    // Recursive minimisation.
    analyze_toclear_.assign(out.begin(), out.end());
    std::uint32_t levels = 0;
    for (std::size_t i = 1; i < out.size(); ++i) levels |= abstract_level(var(out[i]));
    std::size_t j = 1;
    for (std::size_t i = 1; i < out.size(); ++i) {
      const int v = var(out[i]);
      if (reason_[v].cref == kNoClause || !lit_redundant(out[i], levels)) out[j++] = out[i];
    }
    out.resize(j);

    out_level = 0;
    if (out.size() > 1) {
      std::size_t max_i = 1;
      for (std::size_t i = 2; i < out.size(); ++i)
        if (level_[var(out[i])] > level_[var(out[max_i])]) max_i = i;
      std::swap(out[1], out[max_i]);
      out_level = level_[var(out[1])];
    }
    for (Lit l : analyze_toclear_) seen_[var(l)] = 0;
  }

  bool lit_redundant(Lit p, std::uint32_t levels) {
    analyze_stack_.clear();
    analyze_stack_.push_back(p);
    const std::size_t top = analyze_toclear_.size();
    while (!analyze_stack_.empty()) {
      const int v = var(analyze_stack_.back());
      analyze_stack_.pop_back();
      bool fail = false;
      for_each_antecedent(v, [&](Lit q) {
        if (fail) return;
        const int u = var(q);
        if (!seen_[u] && level_[u] > 0) {
          if (reason_[u].cref != kNoClause && (abstract_level(u) & levels) != 0) {
            seen_[u] = 1;
            analyze_stack_.push_back(q);
            analyze_toclear_.push_back(q);
          } else {
            fail = true;
          }
        }
      });
      if (fail) {
        for (std::size_t k = top; k < analyze_toclear_.size(); ++k)
          seen_[var(analyze_toclear_[k])] = 0;
        analyze_toclear_.resize(top);
        return false;
      }
    }
    return true;
  }

  // Expresses the falsity of assumption-literal negation `p` in terms of
  // assumptions; fills conflict_out_ with negated assumption literals.
  void analyze_final(Lit p) {
    conflict_out_.clear();
    conflict_out_.push_back(p);
    if (decision_level() == 0) return;
    seen_[var(p)] = 1;
    for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[0]);) {
      const int v = var(trail_[i]);
      if (!seen_[v]) continue;
      if (reason_[v].cref == kNoClause) {
        if (level_[v] > 0) conflict_out_.push_back(neg(trail_[i]));
      } else {
        for_each_antecedent(v, [&](Lit q) {
          if (level_[var(q)] > 0) seen_[var(q)] = 1;
        });
      }
      seen_[v] = 0;
    }
    seen_[var(p)] = 0;
  }

  void cancel_until(int lvl) {
    if (decision_level() <= lvl) return;
    for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[lvl]);) {
      const int v = var(trail_[i]);
      assigns_[v] = kUndef;
      polarity_[v] = trail_[i] & 1u;
      if (heap_index_[v] < 0) heap_insert(v);
    }
    trail_.resize(trail_lim_[lvl]);
    trail_lim_.resize(lvl);
    qhead_ = trail_.size();
  }

  Lit pick_branch() {
    while (!heap_.empty()) {
      const int v = heap_pop();
      if (assigns_[v] == kUndef) return static_cast<Lit>(2 * v + polarity_[v]);
    }
    return kUndefLit;
  }

  std::uint32_t compute_lbd(const std::vector<Lit>& lits) {
    ++lbd_stamp_;
    if (lbd_seen_.size() < assigns_.size() + 2) lbd_seen_.resize(assigns_.size() + 2, 0);
    std::uint32_t n = 0;
    for (Lit l : lits) {
      const int lv = level_[var(l)];
      if (lbd_seen_[lv] != lbd_stamp_) {
        lbd_seen_[lv] = lbd_stamp_;
        ++n;
      }
    }
    return n;
  }

  Status search(std::uint64_t nof_conflicts, std::uint64_t budget_start) {
    std::uint64_t conflicts_here = 0;
    std::vector<Lit> learnt;
    while (true) {
      const Conflict confl = propagate();
      if (confl.any()) {
        ++stats_.conflicts;
        ++conflicts_here;
        if (decision_level() == 0) {
          ok_ = false;
          return Status::unsat;
        }
        int bt = 0;
        analyze(confl, learnt, bt);
        cancel_until(bt);
        if (learnt.size() == 1) {
          enqueue(learnt[0], Reason{});
        } else if (learnt.size() == 2) {
          add_binary(learnt[0], learnt[1]);
          enqueue(learnt[0], Reason{kBinaryReason, learnt[1]});
        } else {
          const CRef c = alloc_clause(learnt, true);
          arena_[c + 1] = compute_lbd(learnt);
          attach(c);
          bump_clause(c);
          enqueue(learnt[0], Reason{c, kUndefLit});
        }
        var_inc_ /= opts_.var_decay;
        cla_inc_ /= opts_.clause_decay;
        if (opts_.conflict_limit && stats_.conflicts - budget_start >= opts_.conflict_limit) {
          cancel_until(0);
          return Status::aborted;
        }
      } else {
        if (conflicts_here >= nof_conflicts) {
          cancel_until(0);
          return Status::undef;
        }
        Lit next = kUndefLit;
        while (decision_level() < static_cast<int>(assumptions_.size())) {
          const Lit a = assumptions_[decision_level()];
          if (value(a) == kTrue) {
            trail_lim_.push_back(static_cast<int>(trail_.size()));
          } else if (value(a) == kFalse) {
            analyze_final(neg(a));
            return Status::unsat;
          } else {
            next = a;
            break;
          }
        }
        if (next == kUndefLit) {
          ++stats_.decisions;
          next = pick_branch();
          if (next == kUndefLit) return Status::sat;
        }
        trail_lim_.push_back(static_cast<int>(trail_.size()));
        enqueue(next, Reason{});
      }
    }
  }

  // Only called at decision level 0, where reasons are never inspected.
  void reduce_db() {
    for (Lit l : trail_) reason_[var(l)] = Reason{};
    std::vector<CRef> sorted = learnts_;
    std::stable_sort(sorted.begin(), sorted.end(), [&](CRef a, CRef b) {
      const auto la = arena_[a + 1], lb = arena_[b + 1];
      if (la != lb) return la > lb;
      return clause_activity(a) < clause_activity(b);
    });
    const std::size_t remove = sorted.size() / 2;
    std::size_t removed = 0;
    for (CRef c : sorted) {
      if (removed >= remove) break;
      if (arena_[c + 1] <= 2) continue;
      arena_[c] |= 2u;
      ++removed;
    }
    stats_.learnts_deleted += removed;
    max_learnts_ = static_cast<std::size_t>(max_learnts_ * 1.1);
    compact();
  }

  void compact() {
    std::vector<std::uint32_t> fresh;
    fresh.reserve(arena_.size());
    auto move_all = [&](std::vector<CRef>& list) {
      std::size_t j = 0;
      for (CRef c : list) {
        if (clause_deleted(c)) continue;
        const CRef nc = static_cast<CRef>(fresh.size());
        const std::uint32_t words = 3 + clause_size(c);
        fresh.insert(fresh.end(), arena_.begin() + c, arena_.begin() + c + words);
        list[j++] = nc;
      }
      list.resize(j);
    };
    move_all(clauses_);
    move_all(learnts_);
    arena_ = std::move(fresh);
    for (auto& w : watches_) w.clear();
    for (CRef c : clauses_) attach(c);
    for (CRef c : learnts_) attach(c);
  }

  static double luby(double y, int x) {
    int size = 1, seq = 0;
    while (size < x + 1) {
      ++seq;
      size = 2 * size + 1;
    }
    while (size - 1 != x) {
      size = (size - 1) >> 1;
      --seq;
      x = x % size;
    }
    return std::pow(y, seq);
  }

  // Max-heap on activity; ties favour the lower variable index.
  bool heap_less(int a, int b) const {
    return activity_[a] > activity_[b] || (activity_[a] == activity_[b] && a < b);
  }
  void heap_insert(int v) {
    heap_index_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_up(heap_index_[v]);
  }
  void heap_up(int i) {
    const int v = heap_[i];
    while (i > 0) {
      const int parent = (i - 1) >> 1;
      if (!heap_less(v, heap_[parent])) break;
      heap_[i] = heap_[parent];
      heap_index_[heap_[i]] = i;
      i = parent;
    }
    heap_[i] = v;
    heap_index_[v] = i;
  }
  void heap_down(int i) {
    const int v = heap_[i];
    const int n = static_cast<int>(heap_.size());
    while (2 * i + 1 < n) {
      int child = 2 * i + 1;
      if (child + 1 < n && heap_less(heap_[child + 1], heap_[child])) ++child;
      if (!heap_less(heap_[child], v)) break;
      heap_[i] = heap_[child];
      heap_index_[heap_[i]] = i;
      i = child;
    }
    heap_[i] = v;
    heap_index_[v] = i;
  }
  int heap_pop() {
    const int top = heap_[0];
    heap_index_[top] = -1;
    const int last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      heap_[0] = last;
      heap_index_[last] = 0;
      heap_down(0);
    }
    return top;
  }

  SolverOptions opts_;
  SolverStats stats_;
  bool ok_ = true;
  std::size_t num_original_ = 0;

  std::vector<std::int8_t> assigns_;
  std::vector<int> level_;
  std::vector<Reason> reason_;
  std::vector<std::uint8_t> polarity_;  // 1 = negative phase
  std::vector<double> activity_;
  std::vector<std::uint8_t> seen_;
  std::vector<int> heap_;
  std::vector<int> heap_index_;

  std::vector<std::vector<Watcher>> watches_;
  std::vector<std::vector<Lit>> bins_;
  std::vector<std::uint32_t> arena_;
  std::vector<CRef> clauses_;
  std::vector<CRef> learnts_;
  std::size_t max_learnts_ = 20000;

  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<Lit> assumptions_;
  std::vector<Lit> conflict_out_;

  std::vector<Lit> tmp_;
  std::vector<Lit> analyze_stack_;
  std::vector<Lit> analyze_toclear_;
  std::vector<std::uint32_t> lbd_seen_;
  std::uint32_t lbd_stamp_ = 0;

  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
};

// One-shot convenience wrapper.
inline SolveResult solve(const Cnf& cnf, std::span<const int> assumptions = {},
                         SolverOptions opts = {}) {
  Solver s(opts);
  s.load(cnf);
  return s.solve(assumptions);
}

// Checks a total assignment against every clause, independently of any solver
// state.
inline bool verify_model(const Cnf& cnf, const std::vector<bool>& model) {
  if (model.size() < static_cast<std::size_t>(cnf.num_vars()) + 1)
    throw std::invalid_argument("model assigns fewer variables than the formula declares");
  for (std::size_t i = 0; i < cnf.num_clauses(); ++i) {
    bool sat = false;
    for (int l : cnf.clause(i)) {
      if (model[std::abs(l)] == (l > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

}  // namespace abcsat
