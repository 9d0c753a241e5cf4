#pragma once

// The scanex command line: coefficients, root solving, exact / approximate /
// simulated scan distributions and the reference tables.
//
// Exit codes: 0 success, 2 invalid arguments or parameters outside the
// domain, 3 capacity limits exceeded, 4 numerical consistency failure,
// 1 anything else. Diagnostics go to `err`; `out` receives only data.

#include <iosfwd>
#include <string>
#include <vector>

namespace scanex::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitCapacity = 3;
inline constexpr int kExitConsistency = 4;

/// `args` excludes the program name. `in` backs `--pfile -`. Reads
/// SCANEX_THREADS when --threads is not given.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace scanex::cli
