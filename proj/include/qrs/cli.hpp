#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qrs::cli {

// Exit codes: 0 success, 1 precondition/validation failure (machine-readable
// error object on stdout), 2 internal numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qrs::cli
