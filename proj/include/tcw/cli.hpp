// tcw — theory-combination workbench
#pragma once

#include <string>
#include <vector>

namespace tcw {

// Command-line front end.  Subcommands: parse, sat, minmod, witness, check,
// profile, operator, verify-catalog.  Exit codes: 0 positive verdict/success,
// 1 negative verdict (unsat / refuted), 2 unknown at the bound, 3 input
// error, 4 sequence prefix or work budget exhausted.  Reports are
// deterministic byte-for-byte for identical inputs; `--json-like` appends a
// line-oriented key = value block for harnesses.
int run_command(int argc, const char* const* argv);

// Same, for tests: args exclude the program name.
int run_command(const std::vector<std::string>& args);

}  // namespace tcw
