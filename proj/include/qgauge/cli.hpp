#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qgauge::cli {

/// Runs one CLI invocation. `args` excludes the program name. Exit codes:
/// 0 success / verification pass, 1 usage, config or IO error,
/// 2 verification failure.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace qgauge::cli
