#pragma once

#include <filesystem>
#include <iosfwd>

#include "qcorr/sweep.hpp"

namespace qcorr::cli {

/// Process exit codes; stable across versions.
enum class ExitStatus : int {
  kOk = 0,
  kUsage = 1,           // bad flags, unreadable or malformed file
  kInvalidState = 2,    // file parses but is not a valid state
  kPrecondition = 3,    // entangled input without --force-sigma-eq-rho
  kNumerical = 4,       // tolerance missed or numerical breakdown
};

struct AnalyzeOptions {
  std::filesystem::path path;
  int grid_n = 32;
  bool refine = true;
  bool force_sigma_eq_rho = false;
  bool json = false;
};

struct CounterexampleOptions {
  int grid_n = 64;
};

struct SweepOptions {
  SweepConfig config;
  std::filesystem::path out;  // empty: summary only
  unsigned threads = 0;
};

int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err);
int cmd_counterexample(const CounterexampleOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);
int cmd_ppt(const std::filesystem::path& path, std::ostream& out, std::ostream& err);

/// Full command line entry point (argv[1] is the subcommand).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcorr::cli
