#ifndef SPINET_TOOLS_CLI_HPP
#define SPINET_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace spinet::cli {

// Full command-line front end, callable in-process for tests.  args holds
// everything after the program name.  Returns the process exit code:
// 0 success / verdict true, 1 input error, 2 check failed, 3 capacity.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinet::cli

#endif
