#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace semirandom::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitGate = 2;  ///< the run finished but its check failed

/// Output directory override; relative --output paths resolve inside it.
inline constexpr const char* kOutputDirEnv = "SEMIRANDOM_OUTPUT_DIR";

/// "7", "1..20", "1..4,9,12..13" -> seeds in the written order. Throws
/// std::invalid_argument on malformed or empty input.
std::vector<std::uint64_t> parse_seeds(const std::string& text);

/// Comma-separated non-negative reals; the token "ln2" stands for ln 2.
std::vector<double> parse_points(const std::string& text);

/// Parses argv and runs one subcommand. Results go to the resolved output
/// file or to `out`; messages to `err`. Returns an exit code above.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace semirandom::cli
