#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lewis::io {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitCertificateFailure = 2;

/// Entry point of the `lewisw` tool; `args` excludes the program name.
/// Exit 0 when every requested certificate passes, 2 when one fails (the report
/// is still written), 1 on input or configuration errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lewis::io
