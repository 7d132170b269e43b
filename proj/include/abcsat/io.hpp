#pragma once

// JSON forms of rule tables and axiom verdicts.

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

#include "abcsat/axioms.hpp"
#include "abcsat/rules.hpp"

namespace abcsat {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Committees are listed in rank order of the admissible profiles; "" marks a
// profile outside the table's domain.
inline nlohmann::json table_to_json(const RuleTable& t) {
  const auto& e = t.params();
  nlohmann::json j;
  j["format_version"] = 1;
  j["m"] = e.m;
  j["n"] = e.n;
  j["k"] = e.k;
  j["defined"] = t.defined_count();
  auto& cs = j["committees"] = nlohmann::json::array();
  for (ProfileRank r = 0; r < t.size(); ++r) {
    if (!t.space().admissible(r)) continue;
    cs.push_back(t.defined(r) ? to_string(t.at(r)) : std::string());
  }
  return j;
}

inline RuleTable table_from_json(const nlohmann::json& j, std::uint64_t cap = kDefaultProfileCap) {
  try {
    if (j.at("format_version").get<int>() != 1) throw FormatError("unsupported table format_version");
    const ElectionParams e{j.at("m").get<int>(), j.at("n").get<int>(), j.at("k").get<int>()};
    e.validate();
    RuleTable t(e, cap);
    const auto& cs = j.at("committees");
    std::size_t i = 0;
    for (ProfileRank r = 0; r < t.size(); ++r) {
      if (!t.space().admissible(r)) continue;
      if (i >= cs.size()) throw FormatError("table lists too few committees");
      const auto s = cs[i++].get<std::string>();
      if (!s.empty()) t.set(r, parse_committee(s, e));
    }
    if (i != cs.size()) throw FormatError("table lists too many committees");
    return t;
  } catch (const nlohmann::json::exception& ex) {
    throw FormatError(std::string("malformed table: ") + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw FormatError(std::string("malformed table: ") + ex.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  out << text;
  if (!out) throw std::ios_base::failure("cannot write " + path);
}

inline RuleTable load_table(const std::string& path, std::uint64_t cap = kDefaultProfileCap) {
  const auto text = read_file(path);
  try {
    return table_from_json(nlohmann::json::parse(text), cap);
  } catch (const nlohmann::json::parse_error& ex) {
    throw FormatError(path + ": " + ex.what());
  }
}

// Voter indices are 1-based in JSON.
inline nlohmann::json witness_to_json(const Witness& w) {
  nlohmann::json j;
  j["profile"] = to_string(w.profile);
  j["committee"] = to_string(w.committee);
  if (w.voter) j["voter"] = *w.voter + 1;
  if (w.variant) j["variant"] = to_string(*w.variant);
  if (w.variant_committee) j["variant_committee"] = to_string(*w.variant_committee);
  if (!w.group.empty()) {
    auto& g = j["group"] = nlohmann::json::array();
    for (int i : w.group) g.push_back(i + 1);
  }
  if (w.candidate) j["candidate"] = candidate_name(*w.candidate);
  if (w.party) j["party"] = to_string(*w.party);
  if (w.ell) j["ell"] = w.ell;
  if (w.required_seats) j["required_seats"] = w.required_seats;
  return j;
}

inline nlohmann::json verdict_to_json(const AxiomVerdict& v) {
  nlohmann::json j;
  j["axiom"] = to_string(v.axiom);
  j["passed"] = v.passed;
  j["witness"] = v.witness ? witness_to_json(*v.witness) : nlohmann::json(nullptr);
  if (!v.all.empty()) {
    auto& all = j["witnesses"] = nlohmann::json::array();
    for (const auto& w : v.all) all.push_back(witness_to_json(w));
  }
  return j;
}

inline std::string describe(const Witness& w, Axiom a) {
  std::string s = "profile (" + to_string(w.profile) + ") -> " + to_string(w.committee);
  if (is_strategyproofness(a) && w.voter && w.variant) {
    s += "; voter " + std::to_string(*w.voter + 1) + " reports " +
         to_string(w.variant->at(*w.voter)) + " and gets " +
         (w.variant_committee ? to_string(*w.variant_committee) : std::string("?"));
  } else if (w.candidate) {
    s += "; candidate " + candidate_name(*w.candidate);
    if (!w.group.empty()) {
      s += " for voters";
      for (int i : w.group) s += " " + std::to_string(i + 1);
    }
  } else if (!w.group.empty()) {
    s += "; voters";
    for (int i : w.group) s += " " + std::to_string(i + 1);
    if (w.ell) s += " deserve " + std::to_string(w.ell);
  } else if (w.party) {
    s += "; party " + to_string(*w.party) + " needs " + std::to_string(w.required_seats) + " seats";
  }
  return s;
}

}  // namespace abcsat
