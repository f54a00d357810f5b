#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace betamodel::cli {

// Exit codes of run().
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;  // model, parse or validation error
inline constexpr int kUsage = 2;    // bad flags or subcommand

// Entry point for the `betamodel` tool. `args` excludes the program name.
// Results go to `out`; errors are a JSON object {"error": {"kind", "message"}}
// on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace betamodel::cli
