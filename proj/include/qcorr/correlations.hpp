#pragma once

#include <array>
#include <vector>

#include "qcorr/matcore.hpp"

namespace qcorr {

/// Bloch-sphere axis n(theta, phi) defining a rank-1 projective measurement
/// {(I + n.sigma)/2, (I - n.sigma)/2} on one qubit.
///
/// Dephasing depends on n only up to sign, so the canonical domain is the
/// upper half sphere: theta in [0, pi/2], phi in [0, 2 pi). At the pole phi
/// is set to 0; on the equator phi is folded into [0, pi).
class MeasurementAxis {
 public:
  /// theta = phi = 0, the computational basis.
  MeasurementAxis() = default;

  /// Maps any (theta, phi) to the canonical representative of the same
  /// measurement.
  static MeasurementAxis canonical(double theta, double phi);

  double theta() const noexcept { return theta_; }
  double phi() const noexcept { return phi_; }

  Eigen::Vector3d bloch() const;
  /// Projectors for outcomes 0 (+n) and 1 (-n).
  std::array<ComplexMatrix, 2> projectors() const;

  bool operator==(const MeasurementAxis&) const = default;

 private:
  MeasurementAxis(double theta, double phi) : theta_(theta), phi_(phi) {}

  double theta_ = 0.0;
  double phi_ = 0.0;
};

/// Bloch vector of a raw (theta, phi) pair, no canonicalization.
Eigen::Vector3d bloch_vector(double theta, double phi);

/// A state diagonal in the product basis given by its two axes.
struct ClassicalState {
  DensityMatrix rho;
  MeasurementAxis axis_a;
  MeasurementAxis axis_b;
};

struct CorrelationReport {
  double t = 0.0;  ///< total mutual information S(rho || pi_rho)
  double q = 0.0;  ///< dissonance S(rho || chi)
  double c = 0.0;  ///< classical correlation S(chi || pi_chi)
  double l = 0.0;  ///< S(pi_rho || pi_chi)
  double identity_residual = 0.0;  ///< |t - (q + c - l)|
  bool superadditive = true;       ///< t <= q + c + 1e-9
  ClassicalState chi;
  DensityMatrix pi_rho;
  DensityMatrix pi_chi;

  MeasurementAxis axis_a() const { return chi.axis_a; }
  MeasurementAxis axis_b() const { return chi.axis_b; }
};

inline constexpr double kIdentityTol = 1e-8;
inline constexpr double kNonnegTol = 1e-9;

/// tr_B(rho) (x) tr_A(rho).
DensityMatrix marginal_product(const DensityMatrix& rho);

/// Pinching onto the product basis of (axis_a, axis_b). Two-qubit only.
ClassicalState dephase(const DensityMatrix& rho, MeasurementAxis axis_a, MeasurementAxis axis_b);

/// S(dephase(rho)) - S(rho) = S(rho || dephase(rho)), in bits.
double classical_objective(const DensityMatrix& rho, MeasurementAxis axis_a, MeasurementAxis axis_b);

struct ClosestClassicalOptions {
  int grid_n = 32;
  bool refine = true;
};

struct ClosestClassical {
  ClassicalState chi;
  double q = 0.0;
};

/// Minimizes classical_objective over both axes: a grid of grid_n polar
/// by 2 grid_n azimuthal angles per party, then (optionally) Nelder-Mead
/// from the best grid points. Requires grid_n >= 8.
ClosestClassical closest_classical(const DensityMatrix& rho, const ClosestClassicalOptions& opts = {});

double mutual_information(const DensityMatrix& rho);
double classical_correlation(const ClassicalState& chi);
double l_quantity(const DensityMatrix& rho, const ClassicalState& chi);

/// Full T/Q/C/L evaluation. The caller is responsible for the input being
/// separable (see ppt_check); the measures assume sigma = rho.
CorrelationReport analyze(const DensityMatrix& rho, const ClosestClassicalOptions& opts = {});

// Lower-level pieces of the minimization, exposed for testing. ----------------

/// Fast evaluation of S(dephase(rho)) for two-qubit rho via conditional
/// Bloch vectors. Equal to vn_entropy(dephase(...).rho) up to round-off.
class DephasedEntropy {
 public:
  explicit DephasedEntropy(const DensityMatrix& rho);

  /// Conditional (unnormalized) states of B after outcome i on A:
  /// M_i = tr_A[(P_i (x) I) rho] = (m_i I + r_i . sigma) / 2.
  struct Conditionals {
    std::array<double, 2> weight;
    std::array<Eigen::Vector3d, 2> bloch;
  };

  Conditionals conditionals(const Eigen::Vector3d& n_a) const;
  double evaluate(const Conditionals& cond, const Eigen::Vector3d& n_b) const;
  double evaluate(const Eigen::Vector3d& n_a, const Eigen::Vector3d& n_b) const;

  /// min over n_b of evaluate(cond, n_b); the minimum sits at n_b parallel
  /// to each r_i separately, hence a lower bound for the row.
  double row_lower_bound(const Conditionals& cond) const;

 private:
  std::array<std::array<ComplexMatrix, 2>, 2> blocks_;  // 2x2 B-blocks of rho indexed by A row/col
};

/// Candidate axes in grid scan order: theta ascending in grid_n steps over
/// [0, pi/2], phi ascending in 2 grid_n steps over [0, 2 pi), duplicates of
/// the same measurement (pole, antipodal equator points) dropped.
std::vector<MeasurementAxis> axis_grid(int grid_n);

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

/// Derivative-free simplex descent. Stops when the spread of simplex values
/// falls below `spread_tol` or after `max_iter` iterations.
template <typename F>
NelderMeadResult nelder_mead(F&& f, std::vector<double> x0, const std::vector<double>& step,
                             double spread_tol = 1e-8, int max_iter = 500);

}  // namespace qcorr

#include "qcorr/nelder_mead_impl.hpp"
