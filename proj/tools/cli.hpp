#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gkmtool {

/// Runs one command line (args excludes the program name). Returns the exit
/// code: 0 success, 1 usage or parse error, 2 semantic failure.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace gkmtool
