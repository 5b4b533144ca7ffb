#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "erdos/report.hpp"

namespace erdos::cli {

enum ExitCode : int {
  kVerified = 0,
  kUsage = 1,
  kVerificationFailure = 2,
  kHorizonExhausted = 3,
};

/// Everything that determines a run's output.
struct RunConfig {
  std::string group;       // binomial | basis | equidist
  std::string subcommand;  // f, f-scan, certificate, witness, cover, ...
  report::Format format = report::Format::table;
  std::string output;      // empty: the given stream
  std::uint64_t seed = 0;
  unsigned precision = 192;
  unsigned threads = 1;
  bool timing = false;
};

/// Runs one command line (without the program name). Output goes to `out`
/// unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Thread count from --threads, else ERDOS_TRIO_THREADS, else 1.
unsigned resolve_threads(std::optional<unsigned> flag);

}  // namespace erdos::cli
