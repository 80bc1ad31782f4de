#pragma once

// Template definition for qcorr::nelder_mead; included from correlations.hpp.

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

namespace qcorr {

template <typename F>
NelderMeadResult nelder_mead(F&& f, std::vector<double> x0, const std::vector<double>& step, double spread_tol,
                             int max_iter) {
  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  const std::size_t dim = x0.size();
  std::vector<std::vector<double>> pts(dim + 1, x0);
  for (std::size_t i = 0; i < dim; ++i) pts[i + 1][i] += step[i];
  std::vector<double> vals(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) vals[i] = f(pts[i]);

  std::vector<std::size_t> order(dim + 1);
  auto affine = [dim](const std::vector<double>& from, const std::vector<double>& to, double t) {
    std::vector<double> out(dim);
    for (std::size_t k = 0; k < dim; ++k) out[k] = from[k] + t * (to[k] - from[k]);
    return out;
  };

  int iter = 0;
  for (; iter < max_iter; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Stable so equal values keep their insertion order.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[dim - 1];
    if (vals[worst] - vals[best] < spread_tol) break;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += pts[order[i]][k];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    std::vector<double> xr = affine(centroid, pts[worst], -kReflect);
    const double fr = f(xr);
    if (fr < vals[best]) {
      std::vector<double> xe = affine(centroid, xr, kExpand);
      const double fe = f(xe);
      if (fe < fr) {
        pts[worst] = std::move(xe);
        vals[worst] = fe;
      } else {
        pts[worst] = std::move(xr);
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = std::move(xr);
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    std::vector<double> xc = outside ? affine(centroid, xr, kContract) : affine(centroid, pts[worst], kContract);
    const double fc = f(xc);
    if (outside ? fc <= fr : fc < vals[worst]) {
      pts[worst] = std::move(xc);
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == best) continue;
      pts[i] = affine(pts[best], pts[i], kShrink);
      vals[i] = f(pts[i]);
    }
  }

  const auto best_it = std::min_element(vals.begin(), vals.end());
  const auto best_idx = static_cast<std::size_t>(best_it - vals.begin());
  return NelderMeadResult{pts[best_idx], *best_it, iter};
}

}  // namespace qcorr
