#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace psmatch {

// Command-line front end as a library, so tests can drive it in-process.
// Exit codes: 0 predicate true / success, 1 predicate false (witness
// emitted), 2 usage or validation error, 3 guard exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace psmatch
