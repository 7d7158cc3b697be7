#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ptk {

/// Runs one CLI invocation. Emits a single JSON document on `out`; usage
/// errors go to `err` with exit code 2, domain errors with exit code 1.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ptk
