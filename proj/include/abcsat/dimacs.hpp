#pragma once

// DIMACS CNF reading and writing.

#include <charconv>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "abcsat/cnf.hpp"
#include "abcsat/encoder.hpp"

namespace abcsat {

class DimacsError : public std::runtime_error {
 public:
  DimacsError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Writes `p cnf V C` and the clauses. With a VarMap, one comment line per
// variable precedes the header.
inline void emit_dimacs(std::ostream& os, const Cnf& cnf, const VarMap* varmap = nullptr) {
  if (varmap) {
    const ProfileSpace space(varmap->params());
    Profile p;
    for (int v = 1; v <= varmap->num_vars(); ++v) {
      const auto [r, w] = varmap->decode(v);
      space.unrank(r, p);
      os << "c x" << v << " = f(" << to_string(p) << ") == " << to_string(w) << '\n';
    }
  }
  os << "p cnf " << cnf.num_vars() << ' ' << cnf.num_clauses() << '\n';
  std::string line;
  for (std::size_t i = 0; i < cnf.num_clauses(); ++i) {
    line.clear();
    for (int l : cnf.clause(i)) {
      line += std::to_string(l);
      line += ' ';
    }
    line += "0\n";
    os << line;
  }
  if (!os) throw std::runtime_error("failed to write DIMACS output");
}

inline void emit_dimacs(std::ostream& os, const Encoding& enc) {
  emit_dimacs(os, enc.cnf, &enc.varmap);
}

inline std::string to_dimacs(const Cnf& cnf, const VarMap* varmap = nullptr) {
  std::ostringstream os;
  emit_dimacs(os, cnf, varmap);
  return os.str();
}

struct ParsedDimacs {
  Cnf cnf;
  std::vector<std::string> comments;  // without the leading "c "
};

namespace detail {

inline bool parse_int(std::string_view tok, long long& out) {
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t j = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > j) out.push_back(s.substr(j, i - j));
  }
  return out;
}

}  // namespace detail

inline ParsedDimacs parse_dimacs(std::istream& is) {
  ParsedDimacs out;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  long long declared_clauses = 0;
  std::vector<int> pending;
  std::size_t pending_line = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string_view sv(line);
    const auto first = sv.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    if (sv[first] == 'c') {
      auto body = sv.substr(first + 1);
      if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      out.comments.emplace_back(body);
      continue;
    }
    if (sv[first] == '%') break;
    const auto toks = detail::split_ws(sv);
    if (toks[0] == "p") {
      long long v = 0, c = 0;
      if (have_header) throw DimacsError(lineno, "duplicate header");
      if (toks.size() != 4 || toks[1] != "cnf" || !detail::parse_int(toks[2], v) ||
          !detail::parse_int(toks[3], c) || v < 0 || c < 0 || v > std::numeric_limits<int>::max())
        throw DimacsError(lineno, "malformed header, expected 'p cnf <vars> <clauses>'");
      out.cnf.set_num_vars(static_cast<int>(v));
      declared_clauses = c;
      have_header = true;
      continue;
    }
    if (!have_header) throw DimacsError(lineno, "clause before 'p cnf' header");
    for (auto tok : toks) {
      long long lit = 0;
      if (!detail::parse_int(tok, lit))
        throw DimacsError(lineno, "invalid literal '" + std::string(tok) + "'");
      if (lit == 0) {
        if (pending.empty()) throw DimacsError(lineno, "empty clause");
        out.cnf.add_clause(pending);
        pending.clear();
        continue;
      }
      if (lit > out.cnf.num_vars() || -lit > out.cnf.num_vars())
        throw DimacsError(lineno, "literal " + std::string(tok) + " out of range");
      if (pending.empty()) pending_line = lineno;
      pending.push_back(static_cast<int>(lit));
    }
  }
  if (!have_header) throw DimacsError(lineno, "missing 'p cnf' header");
  if (!pending.empty()) throw DimacsError(pending_line, "unterminated clause");
  if (static_cast<long long>(out.cnf.num_clauses()) != declared_clauses)
    throw DimacsError(lineno, "header declares " + std::to_string(declared_clauses) +
                                  " clauses but " + std::to_string(out.cnf.num_clauses()) +
                                  " were read");
  return out;
}

inline ParsedDimacs parse_dimacs(std::string_view text) {
  std::istringstream is{std::string(text)};
  return parse_dimacs(is);
}

// A `x<id> = f(<profile>) == <committee>` comment.
struct VariableComment {
  int id = 0;
  std::string profile;
  std::string committee;
};

inline std::optional<VariableComment> parse_variable_comment(std::string_view s) {
  if (s.size() < 2 || s[0] != 'x') return std::nullopt;
  const auto eq = s.find(" = f(");
  const auto close = s.rfind(") == ");
  if (eq == std::string_view::npos || close == std::string_view::npos || close < eq)
    return std::nullopt;
  long long id = 0;
  if (!detail::parse_int(s.substr(1, eq - 1), id) || id <= 0) return std::nullopt;
  return VariableComment{static_cast<int>(id), std::string(s.substr(eq + 5, close - eq - 5)),
                         std::string(s.substr(close + 5))};
}

}  // namespace abcsat
