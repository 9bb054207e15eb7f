#pragma once

#include <string>
#include <vector>

namespace hgsparse {

// Runs the command line given the arguments after the program name.
// Exit codes: 0 success, 1 usage or I/O error, 2 verification failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace hgsparse
