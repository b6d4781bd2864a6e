#include <doctest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gdpmpc/milp_bnb.hpp"
#include "gdpmpc/mps.hpp"
#include "gdpmpc/reformulate.hpp"
#include "gdpmpc/selftest.hpp"
#include "gdpmpc/thermostat.hpp"

using namespace gdpmpc;

namespace {

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::runtime_error("bad number " + s);
  return v;
}

// Minimal free-form reader for what write_mps produces.
MilpProblem read_mps(std::istream& in) {
  MilpProblem p;
  std::map<std::string, std::size_t> rows;
  std::map<std::string, std::size_t> cols;
  std::string section;
  bool integer_block = false;
  std::string text;
  const auto column = [&](const std::string& name) {
    const auto it = cols.find(name);
    if (it != cols.end()) return it->second;
    const std::size_t j = p.add_column(0.0, kInf, 0.0, integer_block, {});
    cols.emplace(name, j);
    return j;
  };
  while (std::getline(in, text)) {
    if (text.empty()) continue;
    std::istringstream ls(text);
    std::vector<std::string> f;
    for (std::string w; ls >> w;) f.push_back(w);
    if (text[0] != ' ') {
      section = f[0];
      continue;
    }
    if (section == "ROWS") {
      if (f[0] == "N") continue;
      rows.emplace(f[1], p.rows.size());
      p.rows.push_back({{}, f[0] == "E" ? RowSense::EQ : RowSense::LE, 0.0, ""});
      if (f[0] != "E" && f[0] != "L") throw std::runtime_error("unexpected row type " + f[0]);
    } else if (section == "COLUMNS") {
      if (f[1] == "'MARKER'") {
        integer_block = f[2] == "'INTORG'";
        continue;
      }
      const std::size_t j = column(f[0]);
      for (std::size_t k = 1; k + 1 < f.size(); k += 2) {
        const double v = parse_double(f[k + 1]);
        if (f[k] == "OBJ") {
          p.objective[j] = v;
        } else {
          p.rows.at(rows.at(f[k])).entries.push_back({j, v});
        }
      }
    } else if (section == "RHS") {
      const double v = parse_double(f[2]);
      if (f[1] == "OBJ") {
        p.objective_constant = -v;
      } else {
        p.rows.at(rows.at(f[1])).rhs = v;
      }
    } else if (section == "RANGES") {
      throw std::runtime_error("ranges are not expected");
    } else if (section == "BOUNDS") {
      const std::size_t j = cols.at(f[2]);
      if (f[0] == "BV") {
        p.lower[j] = 0.0;
        p.upper[j] = 1.0;
        p.integer[j] = 1;
      } else if (f[0] == "FX") {
        p.lower[j] = p.upper[j] = parse_double(f[3]);
      } else if (f[0] == "FR") {
        p.lower[j] = -kInf;
      } else if (f[0] == "MI") {
        p.lower[j] = -kInf;
      } else if (f[0] == "LO") {
        p.lower[j] = parse_double(f[3]);
      } else if (f[0] == "UP") {
        p.upper[j] = parse_double(f[3]);
      } else if (f[0] != "PL") {
        throw std::runtime_error("unexpected bound " + f[0]);
      }
    }
  }
  return p;
}

std::string to_text(const MilpProblem& p) {
  std::ostringstream out;
  write_mps(out, p);
  return out.str();
}

std::size_t section_lines(const std::string& text, const std::string& section) {
  std::istringstream in(text);
  std::string line;
  bool inside = false;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != ' ') {
      inside = line == section;
      continue;
    }
    if (inside) ++count;
  }
  return count;
}

void check_same(const MilpProblem& a, const MilpProblem& b) {
  REQUIRE(a.num_columns() == b.num_columns());
  REQUIRE(a.num_rows() == b.num_rows());
  CHECK(a.objective == b.objective);
  CHECK(a.objective_constant == b.objective_constant);
  CHECK(a.lower == b.lower);
  CHECK(a.upper == b.upper);
  CHECK(a.integer == b.integer);
  for (std::size_t i = 0; i < a.num_rows(); ++i) {
    CHECK(a.rows[i].sense == b.rows[i].sense);
    CHECK(a.rows[i].rhs == b.rows[i].rhs);
    // The reader sees entries column by column; compare as dense rows.
    std::vector<double> da(a.num_columns()), db(b.num_columns());
    for (const RowEntry& e : a.rows[i].entries) da[e.col] += e.value;
    for (const RowEntry& e : b.rows[i].entries) db[e.col] += e.value;
    CHECK(da == db);
  }
}

}  // namespace

TEST_CASE("toy problem has four COLUMNS entries") {
  MilpProblem p;
  p.add_column(0.0, 1.0, -1.0, true, {});
  p.add_column(0.0, 1.0, -1.0, true, {});
  p.add_row({{{0, 1.0}, {1, 1.0}}, RowSense::LE, 1.5, ""});
  const std::string text = to_text(p);
  CHECK(section_lines(text, "COLUMNS") == 4);
  CHECK(section_lines(text, "ROWS") == 2);
  CHECK(section_lines(text, "BOUNDS") == 2);
  CHECK(text.find(" BV BND       C0000001") != std::string::npos);
  CHECK(text.rfind("ENDATA\n") == text.size() - 7);
  check_same(p, [&] {
    std::istringstream in(text);
    return read_mps(in);
  }());
}

TEST_CASE("empty problem writes every section header") {
  const std::string text = to_text(MilpProblem{});
  for (const char* s : {"NAME", "ROWS", "COLUMNS", "RHS", "RANGES", "BOUNDS", "ENDATA"})
    CHECK(text.find(s) != std::string::npos);
  CHECK(section_lines(text, "ROWS") == 1);  // the objective row
  std::istringstream in(text);
  const MilpProblem back = read_mps(in);
  CHECK(back.num_columns() == 0);
  CHECK(back.num_rows() == 0);
}

TEST_CASE("bound kinds, general integers and the objective constant round-trip") {
  MilpProblem p;
  p.add_column(-kInf, kInf, 1.0, false, {});
  p.add_column(-kInf, 3.0, 0.0, false, {});
  p.add_column(-2.0, -1.0, 0.0, false, {});
  p.add_column(0.1 + 0.2, 0.1 + 0.2, 0.0, false, {});
  p.add_column(0.0, kInf, 2.0, true, {});
  p.add_column(-3.0, 7.0, 0.0, true, {});
  p.add_column(0.0, 1.0, 0.0, true, {});
  p.objective_constant = 1.0 / 3.0;
  p.add_row({{{0, 1.0}, {4, -1e-17}, {5, 12345.678901234567}}, RowSense::EQ, -2.5, ""});
  p.add_row({{{1, 1.0}, {2, 1.0}, {6, 4.0}}, RowSense::LE, 0.0, ""});
  const std::string text = to_text(p);
  CHECK(text.find("'INTORG'") != std::string::npos);
  CHECK(text.find(" PL BND") != std::string::npos);
  std::istringstream in(text);
  check_same(p, read_mps(in));
}

TEST_CASE("reformulated models round-trip exactly") {
  for (std::uint64_t seed = 10; seed < 40; ++seed) {
    const GdpModel m = random_gdp(seed);
    for (const MilpProblem& p : {to_hull(m), to_bigm(m, BigMStrategy::fixed(1e4))}) {
      std::istringstream in(to_text(p));
      const MilpProblem back = read_mps(in);
      check_same(p, back);
    }
  }
  const MilpProblem t = build_thermostat_mpc({21.0, 21.0, 21.0, 21.0}, Relay::kOff, 10, ThermostatParams{},
                                             ThermostatVariant::gdp_hull());
  std::istringstream in(to_text(t));
  const MilpProblem back = read_mps(in);
  check_same(t, back);
  SolveOptions o;
  o.rel_gap_tol = 1e-9;
  CHECK(solve(back, o).objective == doctest::Approx(solve(t, o).objective).epsilon(1e-9));
}

TEST_CASE("export_mps writes a file and reports unwritable destinations") {
  const auto dir = std::filesystem::temp_directory_path() / "gdpmpc_test_mps";
  std::filesystem::create_directories(dir);
  const auto path = dir / "toy.mps";
  MilpProblem p;
  p.add_column(0.0, 4.0, 1.0, false, {});
  export_mps(p, path);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == to_text(p));
  CHECK_THROWS_AS(export_mps(p, dir / "missing" / "toy.mps"), std::runtime_error);
  std::filesystem::remove_all(dir);
}
