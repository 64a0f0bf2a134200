// Command-line front end; main() only forwards to run().
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mixmaster::cli {

/// Exit status: 0 success, 1 usage or input error, 2 verification mismatch.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mixmaster::cli
