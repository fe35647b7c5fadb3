#pragma once

#include <ostream>

namespace zml::cli {

/// Entry point shared by the executable and the tests. Writes the JSON
/// report (or failure JSON) to `out` and diagnostics to `err`.
/// Returns 0 on success, 1 when a computation or invariant fails and 2 on
/// configuration errors.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace zml::cli
