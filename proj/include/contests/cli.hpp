#ifndef CONTESTS_CLI_HPP
#define CONTESTS_CLI_HPP

#include <string>
#include <vector>

namespace contests {

// Runs the command-line front end. `args` excludes the program name.
// Exit codes: 0 success, 2 invalid input, 3 numeric failure, 64 usage.
int run(const std::vector<std::string>& args);

}  // namespace contests

#endif
