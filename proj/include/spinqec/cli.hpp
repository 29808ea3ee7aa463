#pragma once

#include <iosfwd>

namespace spinqec {

// Entry point shared by the CLI binary and the tests.
// Usage: <tool> <config.json> [--out PATH] [--format csv|json] [--seed N]
// Returns 0 on success, 2 on configuration errors, 3 on numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace spinqec
