#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qst::cli {

inline constexpr std::uint64_t kDefaultSeed = 123456789;

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kCertificationFailure = 2,
  kParseFailure = 3,
  kProtocolFailure = 4,
};

/// Applies the QSTLAB_THREADS cap to the OpenMP runtime, if set.
void init_threads_from_env();

/// Dispatches one command line (without the program name). All output goes
/// through the given streams, which keeps the commands directly testable.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace qst::cli
