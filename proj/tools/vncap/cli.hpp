#pragma once

// Command-line front end. Exit codes: 0 success, 1 audit violation, 2 usage error.

#include <iosfwd>
#include <string>
#include <vector>

namespace vncap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Default audit seed when neither --seed nor VN_SEED is given.
inline constexpr unsigned long long kDefaultSeed = 42;

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vncap::cli
