#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace robust_search::service {

/// Runs the command-line tool. `args` excludes the program name.
/// Returns 0 on success, 2 on validation errors, 1 otherwise.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

/// The session log path: ROBUST_SEARCH_STATE when set and nonempty, else `flag`.
[[nodiscard]] std::string resolve_state_file(const std::string& flag);

}  // namespace robust_search::service
