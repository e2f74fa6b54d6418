#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace selfish::cli {

enum ExitCode : int { kOk = 0, kRuntimeError = 1, kUsageError = 2 };

/// Entry point of the selfish-ca tool. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "0-255", "90,110" or mixes such as "0-3,90". Throws
/// std::invalid_argument on malformed input or numbers outside 0..255.
std::vector<int> parse_rule_set(std::string_view text);

}  // namespace selfish::cli
