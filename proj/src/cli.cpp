#include "qcorr/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <locale>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcorr/correlations.hpp"
#include "qcorr/states.hpp"

namespace qcorr::cli {

namespace {

using nlohmann::json;

int code(ExitStatus s) { return static_cast<int>(s); }

// Maps library exceptions onto exit codes.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return code(ExitStatus::kUsage);
  } catch (const InvariantViolation& e) {
    err << "error: invalid state: " << e.what() << "\n";
    return code(ExitStatus::kInvalidState);
  } catch (const UnsupportedDims& e) {
    err << "error: " << e.what() << "\n";
    return code(ExitStatus::kInvalidState);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return code(ExitStatus::kUsage);
  } catch (const std::exception& e) {
    err << "error: numerical failure: " << e.what() << "\n";
    return code(ExitStatus::kNumerical);
  }
}

std::string real(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(12) << v;
  return os.str();
}

void print_matrix(std::ostream& out, const char* name, const ComplexMatrix& m) {
  out << name << ":\n";
  char buf[64];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << " ";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      // +0.0 avoids printing "-0.000000" for tiny negative round-off.
      std::snprintf(buf, sizeof buf, " %9.6f%+.6fi", m(r, c).real() + 0.0, m(r, c).imag() + 0.0);
      out << buf;
    }
    out << "\n";
  }
}

json matrix_json(const DensityMatrix& rho) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < rho.matrix().rows(); ++r) {
    for (Eigen::Index c = 0; c < rho.matrix().cols(); ++c) {
      re.push_back(rho(static_cast<int>(r), static_cast<int>(c)).real());
      im.push_back(rho(static_cast<int>(r), static_cast<int>(c)).imag());
    }
  }
  return {{"dims", {rho.dims().a, rho.dims().b}}, {"re", re}, {"im", im}};
}

json axis_json(const MeasurementAxis& a) { return {{"theta", a.theta()}, {"phi", a.phi()}}; }

json report_json(const CorrelationReport& r, const PptResult& ppt, bool forced) {
  return {
      {"t", r.t},
      {"q", r.q},
      {"c", r.c},
      {"l", r.l},
      {"identity_residual", r.identity_residual},
      {"superadditive", r.superadditive},
      {"axes", {{"a", axis_json(r.axis_a())}, {"b", axis_json(r.axis_b())}}},
      {"chi", matrix_json(r.chi.rho)},
      {"pi_rho", matrix_json(r.pi_rho)},
      {"pi_chi", matrix_json(r.pi_chi)},
      {"ppt", {{"min_eigenvalue", ppt.min_eigenvalue}, {"separable", ppt.separable}}},
      {"forced_sigma_eq_rho", forced},
  };
}

const char* verdict(const CorrelationReport& r) { return r.superadditive ? "SUPERADDITIVE (T <= Q+C)" : "VIOLATION"; }

}  // namespace

int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const DensityMatrix rho = load_state(opts.path);
    const PptResult ppt = ppt_check(rho);
    const bool forced = !ppt.separable;
    if (!ppt.separable && !opts.force_sigma_eq_rho) {
      err << "error: state is entangled (partial-transpose min eigenvalue " << real(ppt.min_eigenvalue)
          << ").\nThe measures take the closest separable state sigma to be rho itself, which holds only for "
             "separable input. Pass --force-sigma-eq-rho to run anyway (diagnostic only).\n";
      return code(ExitStatus::kPrecondition);
    }
    const CorrelationReport rep = analyze(rho, ClosestClassicalOptions{opts.grid_n, opts.refine});

    if (opts.json) {
      out << report_json(rep, ppt, forced).dump(2) << "\n";
      return code(ExitStatus::kOk);
    }
    if (forced) {
      out << "DIAGNOSTIC: entangled input analyzed with sigma = rho forced; values are not the separable-state "
             "measures\n";
    }
    out << "state              " << opts.path.string() << "\n"
        << "ppt_min_eig        " << real(ppt.min_eigenvalue) << "\n"
        << "separable          " << (ppt.separable ? "true" : "false") << "\n"
        << "T                  " << real(rep.t) << "\n"
        << "Q                  " << real(rep.q) << "\n"
        << "C                  " << real(rep.c) << "\n"
        << "L                  " << real(rep.l) << "\n"
        << "identity_residual  " << real(rep.identity_residual) << "\n"
        << "axis_a             theta=" << real(rep.axis_a().theta()) << " phi=" << real(rep.axis_a().phi()) << "\n"
        << "axis_b             theta=" << real(rep.axis_b().theta()) << " phi=" << real(rep.axis_b().phi()) << "\n"
        << verdict(rep) << "\n\n";
    print_matrix(out, "chi", rep.chi.rho.matrix());
    print_matrix(out, "pi_rho", rep.pi_rho.matrix());
    print_matrix(out, "pi_chi", rep.pi_chi.matrix());
    return code(ExitStatus::kOk);
  });
}

int cmd_counterexample(const CounterexampleOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    constexpr double kTol = 1e-3;
    const CorrelationReport rep = analyze(counterexample_state(), ClosestClassicalOptions{opts.grid_n, true});
    struct Row {
      const char* name;
      double computed;
      double reference;
    };
    const Row rows[] = {{"T", rep.t, 0.601}, {"Q", rep.q, 0.5}, {"C", rep.c, 0.311}, {"L", rep.l, 0.210}};

    bool ok = rep.identity_residual <= kIdentityTol;
    out << "state: 1/2 (|00><00| + |1H><1H|), |H> = (|0> + |1>)/sqrt(2)\n\n";
    out << std::left << std::setw(10) << "quantity" << std::setw(18) << "computed" << std::setw(12) << "reference"
        << "|delta|\n";
    for (const Row& r : rows) {
      const double delta = std::abs(r.computed - r.reference);
      ok = ok && delta <= kTol;
      out << std::setw(10) << r.name << std::setw(18) << real(r.computed) << std::setw(12) << real(r.reference)
          << real(delta) << "\n";
    }
    out << std::setw(10) << "residual" << std::setw(18) << real(rep.identity_residual) << std::setw(12) << "0"
        << real(rep.identity_residual) << "\n\n";
    out << verdict(rep) << "\n";
    if (!ok) {
      err << "error: counterexample values outside tolerance\n";
      return code(ExitStatus::kNumerical);
    }
    return code(ExitStatus::kOk);
  });
}

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    opts.config.validate();
    std::ofstream csv;
    if (!opts.out.empty()) {
      csv.open(opts.out, std::ios::binary | std::ios::trunc);
      if (!csv) throw ParseError(opts.out.string(), "cannot open output file");
      write_csv_header(csv, opts.config);
    }
    const SweepResult res = run_sweep(opts.config, opts.threads, [&](const SweepRecord& r) {
      if (csv.is_open()) csv << format_csv_row(r);
    });
    if (csv.is_open()) {
      csv.flush();
      if (!csv) throw NumericalFailure("failed writing " + opts.out.string());
    }
    const SweepSummary& s = res.summary;
    out << format_summary(s) << "\n";
    out << "records=" << s.count << " strict_superadditive=" << s.strict_superadditive << " max_l=" << real(s.max_l)
        << " mean_l=" << real(s.mean_l) << "\n";
    return s.violations == 0 ? code(ExitStatus::kOk) : code(ExitStatus::kNumerical);
  });
}

int cmd_ppt(const std::filesystem::path& path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const PptResult r = ppt_check(load_state(path));
    out << "min_eig=" << real(r.min_eigenvalue) << " separable=" << (r.separable ? "true" : "false") << "\n";
    return code(ExitStatus::kOk);
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Relative-entropy correlation measures for two-qubit separable states", "qcorr"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  AnalyzeOptions analyze_opts;
  bool no_refine = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "Compute T, Q, C, L for a state file");
  analyze_cmd->add_option("path", analyze_opts.path, "State file (JSON)")->required();
  analyze_cmd->add_option("--grid-n", analyze_opts.grid_n, "Polar grid points per party")
      ->check(CLI::Range(8, 1024));
  analyze_cmd->add_flag("--no-refine", no_refine, "Skip simplex refinement of the grid optimum");
  analyze_cmd->add_flag("--force-sigma-eq-rho", analyze_opts.force_sigma_eq_rho,
                        "Analyze entangled input anyway (diagnostic)");
  analyze_cmd->add_flag("--json", analyze_opts.json, "Machine-readable output");

  CounterexampleOptions ce_opts;
  auto* ce_cmd = app.add_subcommand("counterexample", "Reproduce the separable counterexample table");
  ce_cmd->add_option("--grid-n", ce_opts.grid_n, "Polar grid points per party")->check(CLI::Range(8, 1024));

  SweepOptions sweep_opts;
  bool sweep_no_refine = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte-Carlo superadditivity sweep over separable states");
  sweep_cmd->add_option("--n", sweep_opts.config.n, "Number of states")->required();
  sweep_cmd->add_option("--seed", sweep_opts.config.master_seed, "Master seed");
  sweep_cmd->add_option("--k-min", sweep_opts.config.k_min, "Minimum mixture terms");
  sweep_cmd->add_option("--k-max", sweep_opts.config.k_max, "Maximum mixture terms");
  sweep_cmd->add_option("--grid-n", sweep_opts.config.grid_n, "Polar grid points per party");
  sweep_cmd->add_flag("--no-refine", sweep_no_refine, "Grid only");
  sweep_cmd->add_flag("--bell-diagonal", sweep_opts.config.include_bell_diagonal,
                      "Alternate with separable Bell-diagonal states");
  sweep_cmd->add_flag("--append-counterexample", sweep_opts.config.append_counterexample,
                      "Append the built-in counterexample as the last row");
  sweep_cmd->add_option("--threads", sweep_opts.threads, "Worker threads (0 = all cores)");
  sweep_cmd->add_option("--out", sweep_opts.out, "CSV output path");

  std::filesystem::path ppt_path;
  auto* ppt_cmd = app.add_subcommand("ppt", "Peres-Horodecki check of a two-qubit state file");
  ppt_cmd->add_option("path", ppt_path, "State file (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return code(ExitStatus::kOk);
  } catch (const CLI::CallForVersion&) {
    out << tool_version() << "\n";
    return code(ExitStatus::kOk);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return code(ExitStatus::kUsage);
  }

  if (*analyze_cmd) {
    analyze_opts.refine = !no_refine;
    return cmd_analyze(analyze_opts, out, err);
  }
  if (*ce_cmd) return cmd_counterexample(ce_opts, out, err);
  if (*sweep_cmd) {
    sweep_opts.config.refine = !sweep_no_refine;
    return cmd_sweep(sweep_opts, out, err);
  }
  return cmd_ppt(ppt_path, out, err);
}

}  // namespace qcorr::cli
