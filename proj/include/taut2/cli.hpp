#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace taut2::cli {

inline constexpr const char* kVersion = "0.1.0";

// Runs one command line (without the program name). Returns the exit code:
// 0 success, 1 domain error, 2 integrity failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace taut2::cli
