#pragma once

#include <cctype>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wmvipd/linalg.hpp"
#include "wmvipd/solvers.hpp"

namespace wmvipd {

/// Regression dataset: one row of B and one entry of b per sample.
struct Dataset {
  DenseMatrix B;
  DVec b;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline double parse_double_token(std::string_view tok, std::size_t line_no, const char* what) {
  try {
    std::size_t used = 0;
    const std::string str(tok);
    const double v = std::stod(str, &used);
    if (used != str.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) + ": malformed " + what + " '" + std::string(tok) + "'");
  }
}

}  // namespace detail

/// LIBSVM text format: "label idx:val idx:val ..." with 1-based, strictly
/// increasing indices. Blank lines and lines starting with '#' are skipped.
/// Missing features are zero-filled; the column count is the maximum index
/// seen unless `expected_cols` (> 0) pins it.
inline Dataset parse_libsvm(std::istream& in, std::size_t expected_cols = 0) {
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;
  DVec labels;
  std::size_t max_index = 0;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    if (line[begin] == '#') continue;

    std::istringstream ls(line.substr(begin));
    std::string tok;
    ls >> tok;
    labels.push_back(detail::parse_double_token(tok, line_no, "label"));

    std::vector<std::pair<std::size_t, double>> entries;
    std::size_t prev_index = 0;
    while (ls >> tok) {
      const std::size_t colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 >= tok.size())
        throw ParseError("line " + std::to_string(line_no) + ": malformed token '" + tok + "'");
      std::size_t idx = 0;
      const auto* first = tok.data();
      const auto* last = tok.data() + colon;
      const auto rc = std::from_chars(first, last, idx);
      if (rc.ec != std::errc() || rc.ptr != last)
        throw ParseError("line " + std::to_string(line_no) + ": malformed index in '" + tok + "'");
      if (idx < 1) throw ParseError("line " + std::to_string(line_no) + ": index " + std::to_string(idx) + " < 1");
      if (idx <= prev_index)
        throw ParseError("line " + std::to_string(line_no) + ": non-increasing index " + std::to_string(idx));
      prev_index = idx;
      max_index = std::max(max_index, idx);
      const double val = detail::parse_double_token(std::string_view(tok).substr(colon + 1), line_no, "value");
      entries.emplace_back(idx, val);
    }
    if (expected_cols != 0 && prev_index > expected_cols)
      throw ParseError("line " + std::to_string(line_no) + ": index " + std::to_string(prev_index) + " exceeds expected width " + std::to_string(expected_cols));
    rows.push_back(std::move(entries));
  }

  if (rows.empty()) throw ParseError("no rows");
  const std::size_t cols = expected_cols != 0 ? expected_cols : max_index;

  Dataset d;
  d.B = DenseMatrix(rows.size(), cols);
  d.b = std::move(labels);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [idx, val] : rows[i]) d.B(i, idx - 1) = val;
  return d;
}

namespace detail {

inline std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

/// CSV schema: optional "# key=value" comment lines, the fixed header, one
/// row per record (floats at 17 significant digits), then "# status=...".
inline void write_trace_csv(const Trace& t, std::ostream& out) {
  for (const auto& [k, v] : t.metadata) out << "# " << k << "=" << v << "\n";
  out << "iteration,prox_evals,kkt,elapsed_seconds\n";
  for (const auto& r : t.records)
    out << r.iteration << "," << r.prox_evals << "," << detail::format_g17(r.kkt) << ","
        << detail::format_g17(r.elapsed_seconds) << "\n";
  out << "# status=" << to_string(t.status) << "\n";
  if (!out) throw std::runtime_error("write_trace_csv: sink write failure");
}

inline Trace read_trace_csv(std::istream& in) {
  Trace t;
  std::string line;
  bool header_seen = false;
  bool status_seen = false;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0 || line.rfind("#", 0) == 0) {
      std::string body = line.substr(line.find('#') + 1);
      if (!body.empty() && body.front() == ' ') body.erase(0, 1);
      const std::size_t eq = body.find('=');
      if (body.rfind("status=", 0) == 0) {
        t.status = status_from_string(body.substr(7));
        status_seen = true;
      } else if (eq != std::string::npos) {
        t.metadata.emplace_back(body.substr(0, eq), body.substr(eq + 1));
      }
      continue;
    }
    if (!header_seen) {
      if (line != "iteration,prox_evals,kkt,elapsed_seconds")
        throw ParseError("line " + std::to_string(line_no) + ": header mismatch: '" + line + "'");
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      fields.push_back(line.substr(pos, comma == std::string::npos ? comma : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (fields.size() != 4) throw ParseError("line " + std::to_string(line_no) + ": expected 4 fields, got " + std::to_string(fields.size()));
    TraceRow r{};
    r.iteration = std::stoull(fields[0]);
    r.prox_evals = std::stoull(fields[1]);
    r.kkt = detail::parse_double_token(fields[2], line_no, "kkt");
    r.elapsed_seconds = detail::parse_double_token(fields[3], line_no, "elapsed_seconds");
    t.records.push_back(r);
  }
  if (!header_seen) throw ParseError("missing header");
  if (!status_seen) throw ParseError("missing status line");
  return t;
}

}  // namespace wmvipd
