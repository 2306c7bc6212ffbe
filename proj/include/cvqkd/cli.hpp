#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cvqkd {

/// Entry point of the `cvqkd` command line tool. Returns the process exit
/// code: 0 on success, 1 on runtime or self-test failure, 2 on bad usage.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cvqkd
