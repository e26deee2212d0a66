#ifndef DUNKL_CLI_APP_HPP
#define DUNKL_CLI_APP_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace dunkl {

/// Runs the command-line surface.  Exit codes: 0 success, 1 verification
/// failure, 2 invalid parameters, 3 level not found, 4 internal error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dunkl

#endif
