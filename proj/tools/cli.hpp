#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cq::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kVerifyFailed = 2, kIo = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace cq::cli
