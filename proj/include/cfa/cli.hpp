#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cfa {

/// Runs the `cfa` command line. `args` excludes the program name. Returns the
/// exit status: 0 success, 2 data error, 3 precision too low, 4 property
/// violation.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cfa
