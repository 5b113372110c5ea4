#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cfgen::cli {

// Exit codes: 0 success, 1 bad input or usage, 2 internal failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
// `args` includes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cfgen::cli
