// Command-line driver: encode, solve, check rules, extract cores, replay the
// base-case proof and run the rule transformers.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "abcsat/decode.hpp"
#include "abcsat/dimacs.hpp"
#include "abcsat/io.hpp"
#include "abcsat/mus.hpp"
#include "abcsat/proofs.hpp"

using namespace abcsat;
using nlohmann::json;

namespace {

enum Exit : int {
  kOk = 0,
  kIo = 1,
  kUsage = 2,
  kCap = 3,
  kFailed = 4,
  kPrecondition = 5,
  kSat = 10,
  kUnsat = 20,
  kAborted = 30,
};

// Human-readable output; moves to stderr when a JSON report goes to stdout.
std::ostream* g_text = &std::cout;
std::ostream& text() { return *g_text; }

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t cap = 0;
  unsigned threads = 1;
};

ProfileCap effective_cap(const Common& c) {
  ProfileCap cap = ProfileCap::from_env();
  if (c.cap) {
    cap.limit = c.cap;
    cap.from_environment = false;
  }
  return cap;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

// Everything non-reproducible lives under "metadata".
json metadata(const ProfileCap& cap) {
  return {{"tool", "abcsat"},
          {"timestamp", timestamp()},
          {"profile_cap", cap.limit},
          {"profile_cap_source", cap.from_environment ? "ABCSAT_PROFILE_CAP" : "default"}};
}

void write_json(const std::string& path, const json& j) {
  if (path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  write_file(path, j.dump(2) + "\n");
}

struct EncodeArgs {
  int m = 0, n = 0, k = 0;
  std::string prop = "hare";
  std::string sp = "subset";
  bool weak_eff = false;
  bool symmetry = false;
  std::string ci_order;

  void add(CLI::App* app, bool required) {
    auto* om = app->add_option("-m", m, "number of candidates");
    auto* on = app->add_option("-n", n, "number of voters");
    auto* ok = app->add_option("-k", k, "committee size");
    if (required) {
      om->required();
      on->required();
      ok->required();
    }
    app->add_option("--prop", prop, "proportionality mode: hare, jr-party or droop")
        ->check(CLI::IsMember({"hare", "hare-singleton", "jr-party", "jr-party-lists", "droop",
                               "droop-singleton"}));
    app->add_option("--sp", sp, "strategyproofness variant: subset or superset")
        ->check(CLI::IsMember({"subset", "superset"}));
    app->add_flag("--weak-eff", weak_eff, "require weak efficiency");
    app->add_flag("--symmetry-break", symmetry, "fix a committee at a known profile");
    app->add_option("--ci-order", ci_order, "restrict to candidate-interval profiles, e.g. abcd");
  }

  bool given() const { return m || n || k; }

  EncodeConfig config(const ProfileCap& cap) const {
    EncodeConfig cfg;
    cfg.params = {m, n, k};
    try {
      cfg.params.validate();
      cfg.proportionality = parse_proportionality_mode(prop);
      cfg.sp = parse_sp_variant(sp);
      if (!ci_order.empty()) cfg.ci_order = parse_ordering(ci_order, m);
      cfg.validate();
    } catch (const std::invalid_argument& ex) {
      throw UsageError(ex.what());
    }
    cfg.weak_efficiency = weak_eff;
    cfg.symmetry_break = symmetry;
    cfg.cap = cap.limit;
    return cfg;
  }
};

json config_json(const EncodeConfig& cfg) {
  return {{"m", cfg.params.m},
          {"n", cfg.params.n},
          {"k", cfg.params.k},
          {"proportionality", to_string(cfg.proportionality)},
          {"sp", to_string(cfg.sp)},
          {"weak_efficiency", cfg.weak_efficiency},
          {"symmetry_break", cfg.symmetry_break},
          {"ci_order", cfg.ci_order ? json(std::string(cfg.ci_order->begin(), cfg.ci_order->end()))
                                    : json(nullptr)}};
}

EncodeConfig config_from_manifest(const json& j, std::uint64_t cap) {
  EncodeConfig cfg;
  const auto& p = j.at("params");
  cfg.params = {p.at("m").get<int>(), p.at("n").get<int>(), p.at("k").get<int>()};
  const auto& c = j.at("config");
  cfg.proportionality = parse_proportionality_mode(c.at("proportionality").get<std::string>());
  cfg.sp = parse_sp_variant(c.at("sp").get<std::string>());
  cfg.weak_efficiency = c.at("weak_efficiency").get<bool>();
  cfg.symmetry_break = c.at("symmetry_break").get<bool>();
  if (!c.at("ci_order").is_null())
    cfg.ci_order = parse_ordering(c.at("ci_order").get<std::string>(), cfg.params.m);
  cfg.cap = cap;
  return cfg;
}

std::string manifest_path_for(const std::string& cnf_path) { return cnf_path + ".manifest.json"; }

// ---------------------------------------------------------------------------

int cmd_encode(const Common& common, const EncodeArgs& args, const std::string& out,
               std::string manifest) {
  const auto cap = effective_cap(common);
  const auto cfg = args.config(cap);
  const Encoding enc = encode(cfg);
  if (manifest.empty()) manifest = manifest_path_for(out);
  {
    std::ofstream os(out, std::ios::binary);
    if (!os) throw std::ios_base::failure("cannot write " + out);
    emit_dimacs(os, enc);
  }
  {
    std::ofstream os(manifest, std::ios::binary);
    if (!os) throw std::ios_base::failure("cannot write " + manifest);
    write_manifest(os, enc);
    if (!os) throw std::ios_base::failure("cannot write " + manifest);
  }
  text() << "encoded " << to_string(cfg.params) << ": " << enc.varmap.encoded_profiles().size()
            << " profiles, " << enc.cnf.num_vars() << " variables, " << enc.cnf.num_clauses()
            << " clauses, " << enc.cnf.groups().size() << " groups\n";
  if (enc.empty_allowed_at)
    text() << "no committee is allowed at profile ("
              << to_string(ProfileSpace(cfg.params).unrank(*enc.empty_allowed_at))
              << "): trivially unsatisfiable\n";
  text() << "wrote " << out << " and " << manifest << '\n';
  return kOk;
}

int status_exit(SolveStatus s) {
  switch (s) {
    case SolveStatus::satisfiable: return kSat;
    case SolveStatus::unsatisfiable: return kUnsat;
    case SolveStatus::aborted: return kAborted;
  }
  return kAborted;
}

json stats_json(const SolverStats& s) {
  return {{"decisions", s.decisions},
          {"propagations", s.propagations},
          {"conflicts", s.conflicts},
          {"restarts", s.restarts}};
}

int cmd_solve(const Common& common, const EncodeArgs& args, const std::string& cnf_path,
              const std::string& table_out, const std::string& report_out,
              std::uint64_t conflicts) {
  const auto cap = effective_cap(common);
  SolverOptions opts;
  opts.conflict_limit = conflicts;
  json report;
  if (!cnf_path.empty()) {
    if (args.given()) throw UsageError("give either a CNF file or -m/-n/-k, not both");
    std::ifstream in(cnf_path);
    if (!in) throw std::ios_base::failure("cannot open " + cnf_path);
    const auto parsed = parse_dimacs(in);
    const auto res = solve(parsed.cnf, {}, opts);
    text() << to_string(res.status) << '\n';
    report["status"] = to_string(res.status);
    report["solver"] = stats_json(res.stats);
    if (res.model) {
      if (!verify_model(parsed.cnf, *res.model)) throw std::logic_error("model failed verification");
      std::string line = "v";
      std::vector<int> lits;
      for (int v = 1; v <= parsed.cnf.num_vars(); ++v) {
        lits.push_back((*res.model)[v] ? v : -v);
        line += ' ' + std::to_string(lits.back());
      }
      text() << line << " 0\n";
      report["model"] = lits;
    }
    report["metadata"] = metadata(cap);
    if (!report_out.empty()) write_json(report_out, report);
    return status_exit(res.status);
  }
  if (!args.given()) throw UsageError("solve needs a CNF file or -m/-n/-k");
  const auto cfg = args.config(cap);
  const Encoding enc = encode(cfg);
  report["config"] = config_json(cfg);
  report["num_vars"] = enc.cnf.num_vars();
  report["num_clauses"] = enc.cnf.num_clauses();
  SolveResult res;
  if (enc.empty_allowed_at) {
    res.status = SolveStatus::unsatisfiable;
    report["empty_allowed_at"] = to_string(ProfileSpace(cfg.params).unrank(*enc.empty_allowed_at));
  } else {
    res = solve(enc.cnf, {}, opts);
  }
  text() << to_string(res.status) << '\n';
  report["status"] = to_string(res.status);
  report["solver"] = stats_json(res.stats);
  int code = status_exit(res.status);
  if (res.model) {
    if (!verify_model(enc.cnf, *res.model)) throw std::logic_error("model failed verification");
    const RuleTable table = decode_model(*res.model, enc.varmap, cap.limit);
    json verdicts = json::array();
    bool all = true;
    CheckOptions co;
    co.threads = common.threads;
    for (Axiom a : cfg.axioms()) {
      auto v = check_axiom(table, a, co);
      all = all && v.passed;
      verdicts.push_back(verdict_to_json(v));
      text() << "  " << to_string(a) << ": " << (v.passed ? "pass" : "FAIL") << '\n';
    }
    report["decoded_table_checks"] = verdicts;
    const std::string path = table_out.empty() ? "table.json" : table_out;
    write_json(path, table_to_json(table));
    text() << "wrote table to " << path << '\n';
    if (!all) code = kFailed;
  }
  report["metadata"] = metadata(cap);
  if (!report_out.empty()) write_json(report_out, report);
  return code;
}

std::vector<Axiom> parse_axiom_list(const std::string& text) {
  std::vector<Axiom> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(parse_axiom(item));
    } catch (const std::invalid_argument& ex) {
      throw UsageError(ex.what());
    }
  }
  if (out.empty()) throw UsageError("no axioms given");
  return out;
}

RuleTable rule_table(const std::string& rule, int m, int n, int k, const ProfileCap& cap) {
  if (rule.rfind("table:", 0) == 0) return load_table(rule.substr(6), cap.limit);
  if (rule != "av" && rule != "pav") throw UsageError("unknown rule '" + rule + "'");
  const ElectionParams e{m, n, k};
  try {
    e.validate();
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  return build_table(rule == "av" ? NamedRule::av : NamedRule::pav, e, cap.limit);
}

int cmd_check_rule(const Common& common, const std::string& rule, int m, int n, int k,
                   const std::string& axioms, bool all, std::size_t max_witnesses,
                   bool as_json, const std::string& report_out) {
  const auto cap = effective_cap(common);
  const auto list = parse_axiom_list(axioms);
  const RuleTable t = rule_table(rule, m, n, k, cap);
  CheckOptions co;
  co.collect_all = all;
  co.max_witnesses = max_witnesses;
  co.threads = common.threads;
  json verdicts = json::array();
  bool passed = true;
  for (Axiom a : list) {
    const auto v = check_axiom(t, a, co);
    passed = passed && v.passed;
    verdicts.push_back(verdict_to_json(v));
    if (!as_json) {
      text() << to_string(a) << ": " << (v.passed ? "pass" : "FAIL");
      if (v.witness) text() << " (" << describe(*v.witness, a) << ")";
      text() << '\n';
    }
  }
  if (as_json) std::cout << verdicts.dump(2) << '\n';
  if (!report_out.empty()) {
    json report{{"rule", rule},
                {"params", {{"m", t.params().m}, {"n", t.params().n}, {"k", t.params().k}}},
                {"verdicts", verdicts},
                {"metadata", metadata(cap)}};
    write_json(report_out, report);
  }
  return passed ? kOk : kFailed;
}

int cmd_extract_mus(const Common& common, const EncodeArgs& args, const std::string& cnf_path,
                    bool full, const std::string& report_out, const std::string& gcnf_out) {
  const auto cap = effective_cap(common);
  std::optional<Encoding> enc;
  Cnf raw;
  if (!cnf_path.empty()) {
    std::ifstream in(cnf_path);
    if (!in) throw std::ios_base::failure("cannot open " + cnf_path);
    auto parsed = parse_dimacs(in);
    const auto manifest = manifest_path_for(cnf_path);
    if (std::filesystem::exists(manifest)) {
      const auto cfg = config_from_manifest(json::parse(read_file(manifest)), cap.limit);
      enc = encode(cfg);
      if (!enc->cnf.same_clauses(parsed.cnf))
        throw FormatError(cnf_path + " does not match the encoding described by " + manifest);
    } else {
      raw = std::move(parsed.cnf);
      raw.group_each_clause();
    }
  } else {
    if (!args.given()) throw UsageError("extract-mus needs a CNF file or -m/-n/-k");
    enc = encode(args.config(cap));
  }
  const Cnf& cnf = enc ? enc->cnf : raw;
  MusOptions mo;
  mo.hard_background = !full;
  const MusResult mus = extract_mus(cnf, mo);
  const auto ver = verify_mus(cnf, mus);
  json report;
  if (enc) {
    print_mus(text(), mus, *enc);
    report = mus_to_json(mus, *enc);
    report["round_trip"] = mus_round_trip(mus, *enc);
  } else {
    text() << "minimal unsatisfiable core: " << mus.groups.size() << " clauses\n";
    json clauses = json::array();
    for (std::size_t g : mus.groups) {
      const auto cl = cnf.clause(cnf.groups()[g].first_clause);
      clauses.push_back(std::vector<int>(cl.begin(), cl.end()));
      text() << "  clause " << cnf.groups()[g].first_clause + 1 << ":";
      for (int l : cl) text() << ' ' << l;
      text() << '\n';
    }
    report["num_groups"] = mus.groups.size();
    report["clauses"] = clauses;
  }
  text() << "verified: unsatisfiable=" << (ver.unsatisfiable ? "yes" : "no")
            << " group-minimal=" << (ver.group_minimal ? "yes" : "no") << '\n';
  report["verification"] = {{"unsatisfiable", ver.unsatisfiable},
                            {"group_minimal", ver.group_minimal},
                            {"solver_calls", ver.solver_calls}};
  report["metadata"] = metadata(cap);
  if (!report_out.empty()) write_json(report_out, report);
  if (!gcnf_out.empty()) {
    std::ofstream os(gcnf_out);
    if (!os) throw std::ios_base::failure("cannot write " + gcnf_out);
    emit_gcnf(os, cnf, !full);
  }
  const bool ok = ver.unsatisfiable && ver.group_minimal &&
                  (!enc || report["round_trip"].get<bool>());
  return ok ? kOk : kFailed;
}

int cmd_replay(const Common& common, const std::string& script_path, const std::string& report_out) {
  const auto cap = effective_cap(common);
  const ProofScript script = script_path.empty() ? base_case_script() : load_proof_script(script_path);
  const ProofReport report = replay(script);
  for (const auto& s : report.steps) {
    text() << (s.verified ? "  ok    " : "  FAIL  ") << s.id << ": " << s.claim;
    if (!s.message.empty()) text() << " (" << s.message << ")";
    text() << '\n';
  }
  text() << report.verified_steps() << "/" << report.steps.size() << " steps verified"
            << (report.contradiction ? ", contradiction reached" : "") << '\n';
  if (!report_out.empty()) {
    json j = to_json(report);
    j["metadata"] = metadata(cap);
    write_json(report_out, j);
  }
  return report.verified ? kOk : kFailed;
}

std::vector<Axiom> default_transfer_axioms(const std::string& mode) {
  if (mode == "alternatives")
    return {Axiom::weak_efficiency, Axiom::proportionality, Axiom::subset_sp};
  return {Axiom::proportionality, Axiom::subset_sp};
}

int cmd_reduce(const Common& common, const std::string& mode, const std::string& in_path,
               int q, const std::string& fixed, const std::string& out_path,
               const std::string& axioms, const std::string& report_out) {
  const auto cap = effective_cap(common);
  const RuleTable in = load_table(in_path, cap.limit);
  RuleTable out;
  try {
    if (mode == "voters") {
      out = reduce_voters(in, q);
    } else if (mode == "alternatives") {
      out = reduce_alternatives(in);
    } else if (mode == "committee") {
      out = reduce_committee_size(in);
    } else {
      std::vector<Ballot> ballots;
      if (!fixed.empty()) {
        try {
          ballots = parse_profile(fixed, in.params().m);
        } catch (const std::invalid_argument& ex) {
          throw UsageError(ex.what());
        }
      }
      out = droop_reduce(in, ballots);
    }
  } catch (const std::invalid_argument& ex) {
    throw TransformError(ex.what());
  }
  const auto list = axioms.empty() ? default_transfer_axioms(mode) : parse_axiom_list(axioms);
  CheckOptions co;
  co.threads = common.threads;
  json premises = json::array(), conclusions = json::array();
  bool ok = true;
  text() << "reduced " << to_string(in.params()) << " to " << to_string(out.params()) << " ("
            << out.defined_count() << " profiles defined)\n";
  for (Axiom a : list) {
    const auto vin = check_axiom(in, a, co);
    const auto vout = check_axiom(out, a, co);
    premises.push_back(verdict_to_json(vin));
    conclusions.push_back(verdict_to_json(vout));
    text() << "  " << to_string(a) << ": input " << (vin.passed ? "pass" : "fail")
              << ", output " << (vout.passed ? "pass" : "FAIL") << '\n';
    if (vin.passed && !vout.passed) ok = false;
  }
  if (!out_path.empty()) write_json(out_path, table_to_json(out));
  if (!report_out.empty())
    write_json(report_out, {{"mode", mode},
                            {"input_params", to_string(in.params())},
                            {"output_params", to_string(out.params())},
                            {"input_checks", premises},
                            {"output_checks", conclusions},
                            {"metadata", metadata(cap)}});
  return ok ? kOk : kFailed;
}

// Random CNFs checked against a truth table.
int cmd_fuzz(std::uint64_t seed, int count, int max_vars) {
  if (max_vars < 1 || max_vars > 16) throw UsageError("--vars must be between 1 and 16");
  std::mt19937_64 rng(seed);
  int disagreements = 0;
  for (int f = 0; f < count; ++f) {
    const int nv = std::uniform_int_distribution<int>(1, max_vars)(rng);
    const int nc = std::uniform_int_distribution<int>(1, 5 * nv)(rng);
    Cnf cnf;
    cnf.set_num_vars(nv);
    for (int c = 0; c < nc; ++c) {
      const int len = std::uniform_int_distribution<int>(1, 4)(rng);
      std::vector<int> cl;
      for (int i = 0; i < len; ++i) {
        const int v = std::uniform_int_distribution<int>(1, nv)(rng);
        cl.push_back(rng() & 1 ? v : -v);
      }
      cnf.add_clause(cl);
    }
    bool truth = false;
    for (std::uint32_t a = 0; a < (1u << nv) && !truth; ++a) {
      std::vector<bool> model(nv + 1);
      for (int v = 1; v <= nv; ++v) model[v] = (a >> (v - 1)) & 1u;
      truth = verify_model(cnf, model);
    }
    const auto res = solve(cnf);
    const bool sat = res.status == SolveStatus::satisfiable;
    if (sat != truth || (sat && !verify_model(cnf, *res.model))) ++disagreements;
  }
  text() << count << " formulas, " << disagreements << " disagreements (seed " << seed << ")\n";
  return disagreements ? kFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SAT-based verification of proportional, strategyproof committee rules"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "worker threads for axiom checkers")
      ->check(CLI::Range(1u, 64u));
  app.add_option("--cap", common.cap, "profile-count cap (default 1e8 or ABCSAT_PROFILE_CAP)");

  auto* enc_cmd = app.add_subcommand("encode", "write the DIMACS encoding and its manifest");
  EncodeArgs enc_args;
  enc_args.add(enc_cmd, true);
  std::string enc_out = "encoding.cnf", enc_manifest;
  enc_cmd->add_option("-o,--out", enc_out, "DIMACS output path");
  enc_cmd->add_option("--manifest", enc_manifest, "manifest path (default <out>.manifest.json)");

  auto* solve_cmd = app.add_subcommand("solve", "solve a DIMACS file or an encoding");
  EncodeArgs solve_args;
  solve_args.add(solve_cmd, false);
  std::string solve_cnf, solve_table, solve_report;
  std::uint64_t conflicts = 0;
  solve_cmd->add_option("cnf", solve_cnf, "DIMACS file");
  solve_cmd->add_option("--table", solve_table, "decoded table output (default table.json)");
  solve_cmd->add_option("--report", solve_report, "JSON report path, - for stdout");
  solve_cmd->add_option("--conflicts", conflicts, "conflict budget, 0 for none");

  auto* check_cmd = app.add_subcommand("check-rule", "check axioms on av, pav or table:<path>");
  std::string rule, axiom_list, check_report;
  int cm = 0, cn = 0, ck = 0;
  bool check_all = false, check_json = false;
  std::size_t max_witnesses = 1000;
  check_cmd->add_option("rule", rule, "av, pav or table:<path>")->required();
  check_cmd->add_option("-m", cm, "number of candidates");
  check_cmd->add_option("-n", cn, "number of voters");
  check_cmd->add_option("-k", ck, "committee size");
  check_cmd->add_option("--axioms", axiom_list, "comma-separated axiom names")->required();
  check_cmd->add_flag("--all", check_all, "collect every witness");
  check_cmd->add_option("--max-witnesses", max_witnesses, "witness limit per axiom with --all");
  check_cmd->add_flag("--json", check_json, "print the verdict array as JSON");
  check_cmd->add_option("--report", check_report, "JSON report path, - for stdout");

  auto* mus_cmd = app.add_subcommand("extract-mus", "minimal unsatisfiable core of an encoding");
  EncodeArgs mus_args;
  mus_args.add(mus_cmd, false);
  std::string mus_cnf, mus_report, mus_gcnf;
  bool mus_full = false;
  mus_cmd->add_option("cnf", mus_cnf, "DIMACS file written by encode");
  mus_cmd->add_flag("--full-clauses", mus_full, "let totality and uniqueness groups be deleted too");
  mus_cmd->add_option("--report", mus_report, "JSON report path, - for stdout");
  mus_cmd->add_option("--gcnf", mus_gcnf, "grouped DIMACS export path");

  auto* replay_cmd = app.add_subcommand("replay-proof", "replay a scripted proof");
  std::string script_path, replay_report;
  replay_cmd->add_option("--script", script_path, "proof script (default: built-in base case)");
  replay_cmd->add_option("--report", replay_report, "JSON report path, - for stdout");

  auto* reduce_cmd = app.add_subcommand("reduce", "apply a rule transformer to a table");
  std::string mode, in_path, out_path, fixed, reduce_axioms, reduce_report;
  int q = 1;
  reduce_cmd->add_option("mode", mode, "voters, alternatives, committee or droop")
      ->required()
      ->check(CLI::IsMember({"voters", "alternatives", "committee", "droop"}));
  reduce_cmd->add_option("--in", in_path, "input table JSON")->required();
  reduce_cmd->add_option("--q", q, "copies per voter (voters)");
  reduce_cmd->add_option("--fixed", fixed, "fixed ballots, e.g. a,bc (droop)");
  reduce_cmd->add_option("--out", out_path, "output table JSON");
  reduce_cmd->add_option("--axioms", reduce_axioms, "axioms checked on input and output");
  reduce_cmd->add_option("--report", reduce_report, "JSON report path, - for stdout");

  auto* fuzz_cmd = app.add_subcommand("fuzz-solver", "compare the solver with a truth table");
  std::uint64_t seed = 1;
  int fuzz_count = 10000, fuzz_vars = 12;
  fuzz_cmd->add_option("--seed", seed, "random seed");
  fuzz_cmd->add_option("--count", fuzz_count, "number of formulas");
  fuzz_cmd->add_option("--vars", fuzz_vars, "maximum number of variables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  for (const auto* r : {&solve_report, &check_report, &mus_report, &replay_report, &reduce_report})
    if (*r == "-") g_text = &std::cerr;
  if (check_json) g_text = &std::cerr;

  try {
    if (*enc_cmd) return cmd_encode(common, enc_args, enc_out, enc_manifest);
    if (*solve_cmd)
      return cmd_solve(common, solve_args, solve_cnf, solve_table, solve_report, conflicts);
    if (*check_cmd)
      return cmd_check_rule(common, rule, cm, cn, ck, axiom_list, check_all, max_witnesses,
                            check_json, check_report);
    if (*mus_cmd) return cmd_extract_mus(common, mus_args, mus_cnf, mus_full, mus_report, mus_gcnf);
    if (*replay_cmd) return cmd_replay(common, script_path, replay_report);
    if (*reduce_cmd)
      return cmd_reduce(common, mode, in_path, q, fixed, out_path, reduce_axioms, reduce_report);
    if (*fuzz_cmd) return cmd_fuzz(seed, fuzz_count, fuzz_vars);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCap;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const DimacsError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ProofScriptError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const TransformError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const MusError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const DecodeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPrecondition;
  }
  return kUsage;
}
