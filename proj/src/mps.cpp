#include "gdpmpc/mps.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gdpmpc {

namespace {

std::string numbered(char prefix, std::size_t i) {
  std::string digits = std::to_string(i + 1);
  if (digits.size() < 7) digits.insert(0, 7 - digits.size(), '0');
  return prefix + digits;
}

std::string number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Fields start at columns 2, 5, 15, 25, 40 and 50.
void line(std::ostream& out, std::string_view code, std::string_view name1, std::string_view name2 = {},
          std::string_view value = {}) {
  std::string s = " ";
  s += code;
  s.resize(4, ' ');
  s += name1;
  if (!name2.empty() || !value.empty()) {
    if (s.size() < 14) s.resize(14, ' ');
    else s += ' ';
    s += name2;
    if (s.size() < 24) s.resize(24, ' ');
    else s += ' ';
    s += value;
  }
  out << s << '\n';
}

bool is_binary(const MilpProblem& p, std::size_t j) {
  return p.integer[j] && p.lower[j] == 0.0 && p.upper[j] == 1.0;
}

}  // namespace

void write_mps(std::ostream& out, const MilpProblem& problem, std::string_view name) {
  const std::size_t n = problem.num_columns();

  // Column-wise view of the rows.
  std::vector<std::vector<RowEntry>> by_column(n);
  for (std::size_t i = 0; i < problem.num_rows(); ++i) {
    for (const RowEntry& e : problem.rows[i].entries) {
      if (e.value != 0.0) by_column[e.col].push_back({i, e.value});
    }
  }

  out << "NAME          " << name << '\n';
  out << "ROWS\n";
  line(out, "N", "OBJ");
  for (std::size_t i = 0; i < problem.num_rows(); ++i) {
    line(out, problem.rows[i].sense == RowSense::EQ ? "E" : "L", numbered('R', i));
  }

  out << "COLUMNS\n";
  bool in_marker = false;
  const auto toggle_marker = [&](bool open) {
    line(out, "", "MARKER", "'MARKER'", open ? "'INTORG'" : "'INTEND'");
    in_marker = open;
  };
  for (std::size_t j = 0; j < n; ++j) {
    const bool general_integer = problem.integer[j] && !is_binary(problem, j);
    if (general_integer != in_marker) toggle_marker(general_integer);
    const std::string col = numbered('C', j);
    if (problem.objective[j] != 0.0 || by_column[j].empty()) line(out, "", col, "OBJ", number(problem.objective[j]));
    for (const RowEntry& e : by_column[j]) line(out, "", col, numbered('R', e.col), number(e.value));
  }
  if (in_marker) toggle_marker(false);

  out << "RHS\n";
  if (problem.objective_constant != 0.0) line(out, "", "RHS", "OBJ", number(-problem.objective_constant));
  for (std::size_t i = 0; i < problem.num_rows(); ++i) {
    if (problem.rows[i].rhs != 0.0) line(out, "", "RHS", numbered('R', i), number(problem.rows[i].rhs));
  }

  out << "RANGES\n";

  out << "BOUNDS\n";
  for (std::size_t j = 0; j < n; ++j) {
    const std::string col = numbered('C', j);
    const double lo = problem.lower[j];
    const double hi = problem.upper[j];
    if (is_binary(problem, j)) {
      line(out, "BV", "BND", col);
    } else if (lo == hi) {
      line(out, "FX", "BND", col, number(lo));
    } else if (lo == -kInf && hi == kInf) {
      line(out, "FR", "BND", col);
    } else {
      if (lo == -kInf) {
        line(out, "MI", "BND", col);
      } else if (lo != 0.0 || hi < 0.0) {
        line(out, "LO", "BND", col, number(lo));
      }
      if (hi != kInf) {
        line(out, "UP", "BND", col, number(hi));
      } else if (problem.integer[j]) {
        line(out, "PL", "BND", col);  // some readers default marked integers to [0, 1]
      }
    }
  }
  out << "ENDATA\n";
}

void export_mps(const MilpProblem& problem, const std::filesystem::path& destination, std::string_view name) {
  std::ofstream out(destination);
  if (!out) throw std::runtime_error("export_mps: cannot open '" + destination.string() + "' for writing");
  write_mps(out, problem, name);
  out.flush();
  if (!out) throw std::runtime_error("export_mps: write to '" + destination.string() + "' failed");
}

}  // namespace gdpmpc
