#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rootcert::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFailedVerification = 2;

// args excludes the program name. Output goes to `out` unless --output is
// given; diagnostics go to `err`. "-" as an input path reads `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace rootcert::cli
