#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kqm {

/// Exit codes: 0 success or equal, 1 unequal, 2 usage/parse/type errors.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUnequal = 1;
inline constexpr int kExitError = 2;

/// Runs one `kqm` invocation. `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kqm
