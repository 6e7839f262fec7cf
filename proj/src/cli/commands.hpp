#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace panelprec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitBadArguments = 2;
inline constexpr int kExitUnachievable = 3;
inline constexpr int kExitBadData = 4;

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace panelprec::cli
