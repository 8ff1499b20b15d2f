#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "pgex/experiment.hpp"

namespace pgex::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 2,
  kNumericalFailure = 3,
  kIterationCap = 4,
};

enum class Mode { kExperiment, kTable1 };

struct Invocation {
  Mode mode = Mode::kExperiment;
  ExperimentConfig config;
  bool quiet = false;
};

/// Parses flags (and an optional --config file of key=value lines). Returns
/// the invocation, or an exit code when parsing ends the program (help or a
/// usage error, which is reported on `err`).
std::variant<Invocation, int> parse(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs the invocation, writes output files, prints a short summary.
int execute(const Invocation& inv, std::ostream& out, std::ostream& err);

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pgex::cli
