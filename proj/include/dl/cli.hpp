#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dl::cli {

/// Exit codes: 0 ok, 1 usage, 2 consistency failure, 3 resource budget.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dl::cli
