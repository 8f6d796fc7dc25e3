#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace finram::cli {

// Exit codes.
inline constexpr int kOk        = 0;
inline constexpr int kDomain    = 1;
inline constexpr int kUsage     = 2;
inline constexpr int kExhausted = 3;

// Runs one command line (without the program name). JSON goes to `out`,
// diagnostics to `err`; option values of "-" are read from `in`.
int run(std::vector<std::string> args, std::istream& in, std::ostream& out,
        std::ostream& err);

// The embedded invariant suite behind `selftest`.
nlohmann::json selftest();

}  // namespace finram::cli
