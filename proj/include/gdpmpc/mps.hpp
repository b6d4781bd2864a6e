#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "gdpmpc/milp_problem.hpp"

namespace gdpmpc {

// Fixed-format MPS. Columns are named C0000001.., rows R0000001.., the
// objective row OBJ. Values are written in shortest round-trip form, so a
// whitespace-splitting reader recovers every double exactly; long values may
// run past the classic 12-character field. Binary columns are declared by BV
// bounds, other integer columns by MARKER lines. The objective constant c0 is
// written as RHS -c0 on the objective row.
void write_mps(std::ostream& out, const MilpProblem& problem, std::string_view name = "GDPMPC");

// Throws std::runtime_error when the destination cannot be written.
void export_mps(const MilpProblem& problem, const std::filesystem::path& destination,
                std::string_view name = "GDPMPC");

}  // namespace gdpmpc
