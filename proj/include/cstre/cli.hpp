#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cstre::cli {

// Exit statuses shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNoSignChange = 2;

// Runs one CLI invocation. args excludes the program name. Tables and
// curves go to files named by --out, everything else to `out`; diagnostics
// go to `err` as single lines.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cstre::cli
