#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qcap::cli {

// Runs one command. Returns 0 on success, 2 for malformed arguments or
// invalid parameters, 1 when a solver fails.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcap::cli
