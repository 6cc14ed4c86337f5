#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lazylab::cli {

/// Exit codes: 0 ok, 1 program error, 2 usage error, 3 diff diverged.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace lazylab::cli
