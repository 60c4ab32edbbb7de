#ifndef TAUSPEC_CLI_HPP
#define TAUSPEC_CLI_HPP

#include <string>
#include <vector>

namespace tauspec::cli {

// Exit codes: 0 success, 2 invalid arguments, 3 convergence failure
// (report still emitted), 4 verification failure (residual above tolerance).
int run(const std::vector<std::string>& args, std::string& out);

}  // namespace tauspec::cli

#endif
