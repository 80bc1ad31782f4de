#include "qcorr/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <locale>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qcorr/correlations.hpp"
#include "qcorr/random.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

const char* tool_version() noexcept { return QCORR_VERSION; }

void SweepConfig::validate() const {
  if (n < 1) throw std::invalid_argument("sweep needs n >= 1");
  if (k_min < 1 || k_min > k_max || k_max > 8) throw std::invalid_argument("need 1 <= k_min <= k_max <= 8");
  if (grid_n < 8) throw std::invalid_argument("grid_n must be at least 8");
}

bool SweepRecord::violates() const {
  return t > q + c + kNonnegTol || l < -kNonnegTol || !(identity_residual <= kIdentityTol);
}

SweepFailure::SweepFailure(int index, std::uint64_t seed, const std::string& cause)
    : Error("row " + std::to_string(index) + " (seed " + std::to_string(seed) + "): " + cause),
      index_(index),
      seed_(seed) {}

std::uint64_t row_seed(std::uint64_t master_seed, int index) {
  return splitmix64_stream(master_seed, static_cast<std::uint64_t>(index));
}

int row_terms(std::uint64_t seed, int k_min, int k_max) {
  const auto span = static_cast<std::uint64_t>(k_max - k_min + 1);
  return k_min + static_cast<int>(splitmix64(seed) % span);
}

namespace {

SweepRecord record_for(int index, std::uint64_t seed, int k, const DensityMatrix& rho, const SweepConfig& cfg) {
  const PptResult ppt = ppt_check(rho);
  const CorrelationReport rep = analyze(rho, ClosestClassicalOptions{cfg.grid_n, cfg.refine});
  return SweepRecord{index,
                     seed,
                     k,
                     rep.t,
                     rep.q,
                     rep.c,
                     rep.l,
                     rep.identity_residual,
                     ppt.min_eigenvalue,
                     rep.axis_a().theta(),
                     rep.axis_a().phi(),
                     rep.axis_b().theta(),
                     rep.axis_b().phi()};
}

}  // namespace

SweepRecord run_row(const SweepConfig& cfg, int index) {
  if (cfg.append_counterexample && index == cfg.n) {
    return record_for(index, 0, 2, counterexample_state(), cfg);
  }
  const std::uint64_t seed = row_seed(cfg.master_seed, index);
  try {
    if (cfg.include_bell_diagonal && index % 2 == 1) {
      return record_for(index, seed, 0, random_bell_diagonal_separable(seed), cfg);
    }
    const int k = row_terms(seed, cfg.k_min, cfg.k_max);
    return record_for(index, seed, k, random_separable(seed, k).rho, cfg);
  } catch (const Error& e) {
    throw SweepFailure(index, seed, e.what());
  }
}

SweepResult run_sweep(const SweepConfig& cfg, unsigned threads,
                      const std::function<void(const SweepRecord&)>& on_record) {
  cfg.validate();
  const int total = cfg.n + (cfg.append_counterexample ? 1 : 0);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(total));

  std::vector<std::optional<SweepRecord>> slots(static_cast<std::size_t>(total));
  std::map<int, std::exception_ptr> failures;
  std::mutex mu;
  int emitted = 0;
  std::atomic<int> next{0};

  auto worker = [&] {
    for (int i = next++; i < total; i = next++) {
      std::optional<SweepRecord> rec;
      std::exception_ptr err;
      try {
        rec = run_row(cfg, i);
      } catch (...) {
        err = std::current_exception();
      }
      std::lock_guard<std::mutex> lock(mu);
      if (err) {
        failures.emplace(i, err);
        continue;
      }
      slots[static_cast<std::size_t>(i)] = std::move(rec);
      while (emitted < total && slots[static_cast<std::size_t>(emitted)] && failures.empty()) {
        if (on_record) on_record(*slots[static_cast<std::size_t>(emitted)]);
        ++emitted;
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (!failures.empty()) std::rethrow_exception(failures.begin()->second);

  SweepResult out;
  out.records.reserve(slots.size());
  for (auto& s : slots) out.records.push_back(std::move(*s));
  out.summary = summarize(out.records);
  return out;
}

SweepSummary summarize(const std::vector<SweepRecord>& records) {
  SweepSummary s;
  s.count = static_cast<int>(records.size());
  if (records.empty()) return s;
  s.min_l = std::numeric_limits<double>::infinity();
  s.max_l = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (const SweepRecord& r : records) {
    s.min_l = std::min(s.min_l, r.l);
    s.max_l = std::max(s.max_l, r.l);
    sum += r.l;
    s.max_residual = std::max(s.max_residual, r.identity_residual);
    if (r.l > 1e-6) ++s.strict_superadditive;
    if (r.violates()) ++s.violations;
  }
  s.mean_l = sum / static_cast<double>(records.size());
  return s;
}

namespace {

std::ostringstream classic_stream() {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(12);
  return os;
}

}  // namespace

void write_csv_header(std::ostream& out, const SweepConfig& cfg) {
  std::ostringstream os = classic_stream();
  os << "# qcorr " << tool_version() << " sweep\n"
     << "# prng: " << kPrngName << "; row seed = SplitMix64 stream of master_seed at row index; "
     << "k = k_min + splitmix64(row seed) mod (k_max - k_min + 1)\n"
     << "# config: n=" << cfg.n << " master_seed=" << cfg.master_seed << " k_min=" << cfg.k_min
     << " k_max=" << cfg.k_max << " grid_n=" << cfg.grid_n << " refine=" << (cfg.refine ? "true" : "false")
     << " include_bell_diagonal=" << (cfg.include_bell_diagonal ? "true" : "false")
     << " append_counterexample=" << (cfg.append_counterexample ? "true" : "false") << "\n"
     << kCsvHeader << "\n";
  out << os.str();
}

std::string format_csv_row(const SweepRecord& r) {
  std::ostringstream os = classic_stream();
  os << r.index << ',' << r.seed << ',' << r.k << ',' << r.t << ',' << r.q << ',' << r.c << ',' << r.l << ','
     << r.identity_residual << ',' << r.ppt_min_eig << ',' << r.theta_a << ',' << r.phi_a << ',' << r.theta_b << ','
     << r.phi_b << '\n';
  return os.str();
}

std::string format_summary(const SweepSummary& s) {
  std::ostringstream os = classic_stream();
  os << "violations=" << s.violations << " min_l=" << s.min_l << " max_residual=" << s.max_residual;
  return os.str();
}

}  // namespace qcorr
