#pragma once

#include <string>
#include <vector>

namespace heavytail {

/// Front door behind the `heavytail` binary; exposed so tests can drive the
/// subcommands in-process. Returns the process exit status. Every error path
/// writes a single "error: ..." line to err.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace heavytail
