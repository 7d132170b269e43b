#pragma once

// Turning satisfying assignments into rule tables and back.

#include <vector>

#include "abcsat/encoder.hpp"
#include "abcsat/rules.hpp"
#include "abcsat/solver.hpp"

namespace abcsat {

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// `model` is 1-based as returned by the solver.
inline RuleTable decode_model(const std::vector<bool>& model, const VarMap& varmap,
                              std::uint64_t cap = kDefaultProfileCap) {
  if (static_cast<int>(model.size()) < varmap.num_vars() + 1)
    throw DecodeError("model assigns fewer variables than the encoding declares");
  RuleTable table(varmap.params(), cap);
  const ProfileSpace& space = table.space();
  for (ProfileRank r : varmap.encoded_profiles()) {
    int count = 0;
    Committee chosen{};
    for (Committee w : varmap.allowed(r)) {
      if (model[varmap.var(r, w)]) {
        ++count;
        chosen = w;
      }
    }
    if (count != 1)
      throw DecodeError("profile (" + to_string(space.unrank(r)) + ") has " +
                        std::to_string(count) + " true committee variables");
    table.set(r, chosen);
  }
  return table;
}

// Unit assumptions pinning the encoding to the given table. Returns nullopt
// if the table picks a committee with no variable at some encoded profile.
inline std::optional<std::vector<int>> table_assumptions(const RuleTable& table,
                                                         const VarMap& varmap) {
  std::vector<int> lits;
  for (ProfileRank r : varmap.encoded_profiles()) {
    if (!table.defined(r)) return std::nullopt;
    const int v = varmap.var(r, table.at(r));
    if (v == 0) return std::nullopt;
    lits.push_back(v);
  }
  return lits;
}

}  // namespace abcsat
