#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace seqfmeca {

namespace exit_status {
inline constexpr int kOk = 0;
inline constexpr int kDiagnostics = 1;
inline constexpr int kUsage = 2;
inline constexpr int kIo = 3;
}  // namespace exit_status

// Runs the command line `args` (without the program name). Artifacts go to
// `out`; human-readable diagnostics and usage errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seqfmeca
