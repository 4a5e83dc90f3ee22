#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ghzgm::cli {

// Process exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kDomain = 3,
  kIo = 4,
  kVerification = 5,
  kComparison = 6,
};

/// Runs the tool with argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses class lists such as {"2", "3..5"} into {2, 3, 4, 5}.
std::vector<int> parse_classes(const std::vector<std::string>& tokens);

}  // namespace ghzgm::cli
