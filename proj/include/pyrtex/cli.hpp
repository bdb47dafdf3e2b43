#pragma once

namespace pyrtex::cli {

// Parses argv and executes the requested subcommand.
// Exit codes: 0 success, 1 runtime/contract/IO failure, 2 usage error.
int run(int argc, const char* const* argv);

}  // namespace pyrtex::cli
