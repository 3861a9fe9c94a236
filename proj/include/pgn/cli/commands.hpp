#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pgn {

enum ExitCode { kExitOk = 0, kExitUsage = 2, kExitDomain = 3 };

// args excludes the program name
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pgn
