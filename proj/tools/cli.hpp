#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stripmis::cli {

enum Exit : int {
    kOk = 0,
    kNegative = 1,
    kParseError = 2,
    kBadEsd = 3,
    kConfigError = 4,
};

/// Runs one command line (without the program name). Reports go to out,
/// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace stripmis::cli
