#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cumica::cli {

/// Exit codes: 0 success, 1 usage error, 2 numerical or assumption error.
int run(int argc, char** argv);

/// Same as above with explicit arguments (without the program name) and
/// streams; used by the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cumica::cli
