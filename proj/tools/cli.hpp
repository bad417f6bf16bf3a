#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wgquant::cli {

// Exit codes: 0 success, 1 a verification check failed, 2 bad arguments or configuration.
// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wgquant::cli
