#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sbc {

/// Entry point of the `sbc` tool. Returns 0 on success, 1 on a runtime
/// error and 2 on a usage error (one-line diagnostic on `err`).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with `args` excluding the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sbc
