#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "qcorr/error.hpp"

namespace qcorr {

struct SweepConfig {
  int n = 100;
  std::uint64_t master_seed = 1;
  int k_min = 1;
  int k_max = 4;
  int grid_n = 16;
  bool refine = true;
  /// Odd indices become separable Bell-diagonal states (k column = 0).
  bool include_bell_diagonal = false;
  /// Adds the built-in counterexample as a final row (index n, seed 0).
  bool append_counterexample = false;

  /// Throws std::invalid_argument when out of range.
  void validate() const;
};

struct SweepRecord {
  int index = 0;
  std::uint64_t seed = 0;
  int k = 0;
  double t = 0.0;
  double q = 0.0;
  double c = 0.0;
  double l = 0.0;
  double identity_residual = 0.0;
  double ppt_min_eig = 0.0;
  double theta_a = 0.0;
  double phi_a = 0.0;
  double theta_b = 0.0;
  double phi_b = 0.0;

  /// t > q + c + 1e-9, l < -1e-9 or residual > 1e-8.
  bool violates() const;
};

struct SweepSummary {
  int count = 0;
  double min_l = 0.0;
  double max_l = 0.0;
  double mean_l = 0.0;
  double max_residual = 0.0;
  int strict_superadditive = 0;  ///< records with l > 1e-6
  int violations = 0;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  SweepSummary summary;
};

/// A row failed to analyze; carries what is needed to re-run it alone.
class SweepFailure : public Error {
 public:
  SweepFailure(int index, std::uint64_t seed, const std::string& cause);
  int index() const noexcept { return index_; }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  int index_;
  std::uint64_t seed_;
};

/// Seed of row `index`: the index-th output of SplitMix64(master_seed).
std::uint64_t row_seed(std::uint64_t master_seed, int index);
/// Mixture size of a row, uniform over [k_min, k_max].
int row_terms(std::uint64_t seed, int k_min, int k_max);

/// Analyzes one row in isolation.
SweepRecord run_row(const SweepConfig& cfg, int index);

/// Rows are computed on `threads` workers (0 = hardware concurrency) and
/// handed to `on_record` strictly in index order.
SweepResult run_sweep(const SweepConfig& cfg, unsigned threads = 0,
                      const std::function<void(const SweepRecord&)>& on_record = {});

SweepSummary summarize(const std::vector<SweepRecord>& records);

inline constexpr const char* kCsvHeader =
    "index,seed,k,t,q,c,l,identity_residual,ppt_min_eig,theta_a,phi_a,theta_b,phi_b";

/// Comment lines (tool version, PRNG, config) followed by the column header.
void write_csv_header(std::ostream& out, const SweepConfig& cfg);
/// One CSV line including the trailing LF. Reals use 12 significant digits.
std::string format_csv_row(const SweepRecord& r);

std::string format_summary(const SweepSummary& s);

const char* tool_version() noexcept;

}  // namespace qcorr
