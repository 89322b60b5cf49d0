#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace freemult::cli {

/// Exit statuses: 0 success, 1 verify found a failing check, 2 error (a
/// JSON error record is written to `err`).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace freemult::cli
