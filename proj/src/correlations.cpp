#include "qcorr/correlations.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qcorr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

void require_two_qubits(const DensityMatrix& rho, const char* op) {
  if (rho.dims() != Dims{2, 2}) {
    throw UnsupportedDims(std::string(op) + " needs a two-qubit state");
  }
}

// Round-off floor for quantities that are nonnegative in exact arithmetic.
double clamp_nonnegative(double v, const char* what) {
  if (v < -kNonnegTol) {
    std::ostringstream os;
    os << what << " is negative beyond round-off (" << v << ")";
    throw NumericalFailure(os.str());
  }
  return std::max(v, 0.0);
}

// (tr H, Bloch vector of H) for a 2x2 Hermitian H = (m I + r.sigma) / 2.
struct PauliCoords {
  double m;
  Eigen::Vector3d r;
};

PauliCoords pauli_coords(const ComplexMatrix& h) {
  return PauliCoords{(h(0, 0) + h(1, 1)).real(),
                     Eigen::Vector3d(2.0 * h(0, 1).real(), -2.0 * h(0, 1).imag(), (h(0, 0) - h(1, 1)).real())};
}

}  // namespace

// MeasurementAxis ------------------------------------------------------------

MeasurementAxis MeasurementAxis::canonical(double theta, double phi) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  double p = phi;
  if (t > kPi) {  // past the south pole: same direction with phi + pi
    t = kTwoPi - t;
    p += kPi;
  }
  if (t > kHalfPi) {  // lower hemisphere: antipode gives the same measurement
    t = kPi - t;
    p += kPi;
  }
  p = std::fmod(p, kTwoPi);
  if (p < 0.0) p += kTwoPi;
  if (p >= kTwoPi) p = 0.0;
  if (t == 0.0) p = 0.0;
  if (t == kHalfPi && p >= kPi) p -= kPi;
  return MeasurementAxis(t, p);
}

Eigen::Vector3d bloch_vector(double theta, double phi) {
  const double s = std::sin(theta);
  return {s * std::cos(phi), s * std::sin(phi), std::cos(theta)};
}

Eigen::Vector3d MeasurementAxis::bloch() const { return bloch_vector(theta_, phi_); }

std::array<ComplexMatrix, 2> MeasurementAxis::projectors() const {
  const Eigen::Vector3d n = bloch();
  ComplexMatrix ns(2, 2);
  ns << n.z(), Complex(n.x(), -n.y()), Complex(n.x(), n.y()), -n.z();
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  return {0.5 * (id + ns), 0.5 * (id - ns)};
}

// Measures -------------------------------------------------------------------

DensityMatrix marginal_product(const DensityMatrix& rho) {
  const DensityMatrix rho_a = partial_trace(rho, Party::B);
  const DensityMatrix rho_b = partial_trace(rho, Party::A);
  return DensityMatrix(kron(rho_a.matrix(), rho_b.matrix()), rho.dims());
}

ClassicalState dephase(const DensityMatrix& rho, MeasurementAxis axis_a, MeasurementAxis axis_b) {
  require_two_qubits(rho, "dephase");
  const auto pa = axis_a.projectors();
  const auto pb = axis_b.projectors();
  ComplexMatrix out = ComplexMatrix::Zero(4, 4);
  for (const ComplexMatrix& p : pa) {
    for (const ComplexMatrix& q : pb) {
      const ComplexMatrix proj = kron(p, q);
      out += proj * rho.matrix() * proj;
    }
  }
  return ClassicalState{DensityMatrix(std::move(out), rho.dims()), axis_a, axis_b};
}

double classical_objective(const DensityMatrix& rho, MeasurementAxis axis_a, MeasurementAxis axis_b) {
  const ClassicalState chi = dephase(rho, axis_a, axis_b);
  return clamp_nonnegative(vn_entropy(chi.rho) - vn_entropy(rho), "dephasing entropy gain");
}

double mutual_information(const DensityMatrix& rho) { return rel_entropy(rho, marginal_product(rho)); }

double classical_correlation(const ClassicalState& chi) { return rel_entropy(chi.rho, marginal_product(chi.rho)); }

double l_quantity(const DensityMatrix& rho, const ClassicalState& chi) {
  if (rho.dim() != chi.rho.dim()) throw DimensionMismatch("state and classical state differ in size");
  return rel_entropy(marginal_product(rho), marginal_product(chi.rho));
}

CorrelationReport analyze(const DensityMatrix& rho, const ClosestClassicalOptions& opts) {
  require_two_qubits(rho, "analyze");
  const double t = mutual_information(rho);
  ClosestClassical cc = closest_classical(rho, opts);
  const double c = classical_correlation(cc.chi);
  DensityMatrix pi_rho = marginal_product(rho);
  DensityMatrix pi_chi = marginal_product(cc.chi.rho);
  const double l = rel_entropy(pi_rho, pi_chi);
  const double residual = std::abs(t - (cc.q + c - l));
  if (!(residual <= kIdentityTol)) {
    std::ostringstream os;
    os << "additivity identity residual " << residual << " exceeds " << kIdentityTol;
    throw NumericalFailure(os.str());
  }
  return CorrelationReport{t,        cc.q,
                           c,        l,
                           residual, t <= cc.q + c + kNonnegTol,
                           std::move(cc.chi), std::move(pi_rho),
                           std::move(pi_chi)};
}

// DephasedEntropy ------------------------------------------------------------

DephasedEntropy::DephasedEntropy(const DensityMatrix& rho) {
  require_two_qubits(rho, "dephased entropy");
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) blocks_[k][l] = rho.matrix().block(2 * k, 2 * l, 2, 2);
}

DephasedEntropy::Conditionals DephasedEntropy::conditionals(const Eigen::Vector3d& n_a) const {
  // M_+- = (S +- (nx X + ny Y + nz Z)) / 2 with S = B00 + B11, Z = B00 - B11,
  // X = B01 + B10, Y = i (B01 - B10).
  const ComplexMatrix s = blocks_[0][0] + blocks_[1][1];
  const ComplexMatrix d = n_a.x() * (blocks_[0][1] + blocks_[1][0]) +
                          n_a.y() * Complex(0.0, 1.0) * (blocks_[0][1] - blocks_[1][0]) +
                          n_a.z() * (blocks_[0][0] - blocks_[1][1]);
  const PauliCoords plus = pauli_coords(0.5 * (s + d));
  const PauliCoords minus = pauli_coords(0.5 * (s - d));
  return Conditionals{{plus.m, minus.m}, {plus.r, minus.r}};
}

double DephasedEntropy::evaluate(const Conditionals& cond, const Eigen::Vector3d& n_b) const {
  double s = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double proj = n_b.dot(cond.bloch[i]);
    s -= xlog2x(0.5 * (cond.weight[i] + proj));
    s -= xlog2x(0.5 * (cond.weight[i] - proj));
  }
  return s;
}

double DephasedEntropy::evaluate(const Eigen::Vector3d& n_a, const Eigen::Vector3d& n_b) const {
  return evaluate(conditionals(n_a), n_b);
}

double DephasedEntropy::row_lower_bound(const Conditionals& cond) const {
  double s = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double len = cond.bloch[i].norm();
    s -= xlog2x(0.5 * (cond.weight[i] + len));
    s -= xlog2x(0.5 * (cond.weight[i] - len));
  }
  return s;
}

std::vector<MeasurementAxis> axis_grid(int grid_n) {
  std::vector<MeasurementAxis> grid;
  const int n_phi = 2 * grid_n;
  for (int i = 0; i < grid_n; ++i) {
    const double theta = i == grid_n - 1 ? kHalfPi : kHalfPi * i / (grid_n - 1);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = kTwoPi * j / n_phi;
      if (i == 0 && j > 0) break;                            // pole: phi is irrelevant
      if (i == grid_n - 1 && phi >= kPi) break;              // equator: phi ~ phi + pi
      grid.push_back(MeasurementAxis::canonical(theta, phi));
    }
  }
  return grid;
}

}  // namespace qcorr
