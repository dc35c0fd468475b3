#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace depolarb {

// Parses args (no program name) and runs one subcommand, writing results to
// `out` unless --out redirects to a file. Returns the process exit code:
// 0 success, 2 usage error, 3 numerical failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace depolarb
