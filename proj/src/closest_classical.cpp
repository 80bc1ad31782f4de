#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "qcorr/correlations.hpp"

namespace qcorr {

namespace {

// Objective values closer than this are ties; ties go to the smaller
// canonical (theta_a, phi_a, theta_b, phi_b), which is also grid scan order.
constexpr double kTieTol = 1e-10;
// Slack on the row bound so round-off in it never prunes a reachable value.
constexpr double kBoundSlack = 1e-12;
constexpr std::size_t kRestarts = 5;

struct Candidate {
  double value;
  MeasurementAxis a;
  MeasurementAxis b;
};

auto lex_key(const Candidate& c) { return std::make_tuple(c.a.theta(), c.a.phi(), c.b.theta(), c.b.phi()); }

struct GridHit {
  double value;
  std::size_t index;  // row * row_len + col
  bool operator<(const GridHit& o) const { return value != o.value ? value < o.value : index < o.index; }
};

struct GridResult {
  Candidate winner;
  std::vector<GridHit> top;
};

// Exhaustive scan of the product grid with an exact row-level prune: a row
// (fixed A axis) is skipped once its lower bound exceeds everything it could
// still influence (the tie window of the minimum and the kept top list).
GridResult scan_grid(const DephasedEntropy& ev, const std::vector<MeasurementAxis>& axes) {
  const std::size_t n = axes.size();
  std::vector<Eigen::Vector3d> bloch(n);
  std::vector<DephasedEntropy::Conditionals> cond(n);
  std::vector<double> bound(n);
  for (std::size_t i = 0; i < n; ++i) {
    bloch[i] = axes[i].bloch();
    cond[i] = ev.conditionals(bloch[i]);
    bound[i] = ev.row_lower_bound(cond[i]);
  }
  std::vector<std::size_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = i;
  std::stable_sort(rows.begin(), rows.end(), [&](std::size_t x, std::size_t y) { return bound[x] < bound[y]; });

  double best = std::numeric_limits<double>::infinity();
  std::vector<GridHit> top;  // sorted, at most kRestarts entries
  for (std::size_t ia : rows) {
    if (top.size() == kRestarts && bound[ia] - kBoundSlack > std::max(best + kTieTol, top.back().value)) break;
    for (std::size_t ib = 0; ib < n; ++ib) {
      const GridHit hit{ev.evaluate(cond[ia], bloch[ib]), ia * n + ib};
      best = std::min(best, hit.value);
      if (top.size() < kRestarts || hit < top.back()) {
        top.insert(std::upper_bound(top.begin(), top.end(), hit), hit);
        if (top.size() > kRestarts) top.pop_back();
      }
    }
  }

  // First point in scan order inside the tie window.
  for (std::size_t ia = 0; ia < n; ++ia) {
    if (bound[ia] - kBoundSlack > best + kTieTol) continue;
    for (std::size_t ib = 0; ib < n; ++ib) {
      const double v = ev.evaluate(cond[ia], bloch[ib]);
      if (v <= best + kTieTol) return GridResult{Candidate{v, axes[ia], axes[ib]}, std::move(top)};
    }
  }
  throw NumericalFailure("grid scan found no minimum");
}

MeasurementAxis marginal_axis(const DensityMatrix& marginal) {
  const ComplexMatrix& m = marginal.matrix();
  const Eigen::Vector3d r(2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real());
  const double len = r.norm();
  if (len < 1e-12) return MeasurementAxis{};
  return MeasurementAxis::canonical(std::acos(std::clamp(r.z() / len, -1.0, 1.0)), std::atan2(r.y(), r.x()));
}

}  // namespace

ClosestClassical closest_classical(const DensityMatrix& rho, const ClosestClassicalOptions& opts) {
  if (opts.grid_n < 8) throw std::invalid_argument("grid_n must be at least 8");
  const DephasedEntropy ev(rho);
  const std::vector<MeasurementAxis> axes = axis_grid(opts.grid_n);
  GridResult grid = scan_grid(ev, axes);

  std::vector<Candidate> candidates{grid.winner};
  if (opts.refine) {
    auto objective = [&ev](const std::vector<double>& x) {
      return ev.evaluate(bloch_vector(x[0], x[1]), bloch_vector(x[2], x[3]));
    };
    const double d_theta = std::numbers::pi / 2.0 / (opts.grid_n - 1);
    const double d_phi = std::numbers::pi / opts.grid_n;
    const std::vector<double> step{d_theta, d_phi, d_theta, d_phi};

    std::vector<std::pair<MeasurementAxis, MeasurementAxis>> starts;
    for (const GridHit& h : grid.top) starts.emplace_back(axes[h.index / axes.size()], axes[h.index % axes.size()]);
    // Eigenbases of the marginals: exact optimum for product and classical
    // states, where the grid alone converges slowly (x log x near 0).
    starts.emplace_back(marginal_axis(partial_trace(rho, Party::B)), marginal_axis(partial_trace(rho, Party::A)));

    for (const auto& [a, b] : starts) {
      candidates.push_back(Candidate{ev.evaluate(a.bloch(), b.bloch()), a, b});
      const NelderMeadResult nm = nelder_mead(objective, {a.theta(), a.phi(), b.theta(), b.phi()}, step);
      const MeasurementAxis ra = MeasurementAxis::canonical(nm.x[0], nm.x[1]);
      const MeasurementAxis rb = MeasurementAxis::canonical(nm.x[2], nm.x[3]);
      candidates.push_back(Candidate{ev.evaluate(ra.bloch(), rb.bloch()), ra, rb});
    }
  }

  double best = std::numeric_limits<double>::infinity();
  for (const Candidate& c : candidates) best = std::min(best, c.value);
  const Candidate* pick = nullptr;
  for (const Candidate& c : candidates) {
    if (c.value > best + kTieTol) continue;
    if (pick == nullptr || lex_key(c) < lex_key(*pick)) pick = &c;
  }

  ClassicalState chi = dephase(rho, pick->a, pick->b);
  const double q = classical_objective(rho, pick->a, pick->b);
  return ClosestClassical{std::move(chi), q};
}

}  // namespace qcorr
