#ifndef EPSTEIN_CLI_HPP
#define EPSTEIN_CLI_HPP

#include <string>
#include <vector>

namespace epstein::cli {

// Exit codes: 0 success, 1 usage error, 2 numerical failure.
int run(const std::vector<std::string>& args);

} // namespace epstein::cli

#endif
