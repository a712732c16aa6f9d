#pragma once

#include <string>
#include <vector>

namespace hodgeft {

/// Full command-line front end; argv-style arguments without the program
/// name. Exit codes: 0 all checks pass, 1 a check failed, 2 input error.
int cli_run(const std::vector<std::string>& args);

} // namespace hodgeft
