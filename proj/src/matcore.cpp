#include "qcorr/matcore.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qcorr {

namespace {

std::string describe(const char* what, double value) {
  std::ostringstream os;
  os << what << " (" << value << ")";
  return os.str();
}

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("eigenvalue iteration did not converge");
  }
  return solver.eigenvalues();
}

// x log2 x with the 0 log 0 := 0 convention.
double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix m, Dims dims) : mat_(std::move(m)), dims_(dims) {
  if (mat_.rows() != mat_.cols()) {
    throw InvariantViolation("density matrix must be square");
  }
  if (dims_.a < 1 || dims_.b < 1 || dims_.total() != mat_.rows()) {
    throw InvariantViolation("party dimensions do not multiply to the matrix size");
  }
  if (dims_.total() > kMaxTotalDim) {
    throw InvariantViolation("total dimension exceeds 64");
  }
  if (!mat_.allFinite()) {
    throw InvariantViolation("matrix has non-finite entries");
  }
  const double herm = hermiticity_defect(mat_);
  if (herm > kHermitianTol) {
    throw InvariantViolation(describe("matrix is not Hermitian", herm));
  }
  const double tr = mat_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw InvariantViolation(describe("trace differs from 1", tr));
  }
  const double min_eig = hermitian_eigenvalues(mat_).minCoeff();
  if (min_eig < -kPsdTol) {
    throw InvariantViolation(describe("matrix is not positive semidefinite, min eigenvalue", min_eig));
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : DensityMatrix(m, Dims{static_cast<int>(m.rows()), 1}) {}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Spectrum eig_hermitian(const ComplexMatrix& m) {
  const double herm = hermiticity_defect(m);
  if (!(herm <= kHermitianTol)) {
    throw NotHermitian(describe("matrix is not Hermitian", herm));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("eigen-decomposition did not converge");
  }
  // Eigen sorts ascending; the contract is descending.
  Spectrum s;
  s.eigenvalues = solver.eigenvalues().reverse();
  s.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return s;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
    }
  }
  return out;
}

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.matrix(), b.matrix()), Dims{a.dim(), b.dim()});
}

DensityMatrix partial_trace(const DensityMatrix& rho, Party traced_out) {
  const auto [da, db] = rho.dims();
  const ComplexMatrix& m = rho.matrix();
  if (traced_out == Party::B) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (int i = 0; i < da; ++i)
      for (int k = 0; k < da; ++k)
        for (int j = 0; j < db; ++j) out(i, k) += m(i * db + j, k * db + j);
    return DensityMatrix(std::move(out));
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (int j = 0; j < db; ++j)
    for (int l = 0; l < db; ++l)
      for (int i = 0; i < da; ++i) out(j, l) += m(i * db + j, i * db + l);
  return DensityMatrix(std::move(out));
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, Party party) {
  const auto [da, db] = rho.dims();
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out(m.rows(), m.cols());
  for (int i = 0; i < da; ++i)
    for (int a = 0; a < db; ++a)
      for (int j = 0; j < da; ++j)
        for (int b = 0; b < db; ++b) {
          const Complex v = party == Party::B ? m(i * db + b, j * db + a) : m(j * db + a, i * db + b);
          out(i * db + a, j * db + b) = v;
        }
  return out;
}

double shannon_entropy(const Eigen::Ref<const Eigen::VectorXd>& probs) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) s -= xlog2x(probs(i));
  return s + 0.0;  // no -0
}

double vn_entropy(const DensityMatrix& rho) {
  Eigen::VectorXd eig = hermitian_eigenvalues(rho.matrix());
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    if (eig(i) < -kEigenClamp) {
      throw NegativeEigenvalue(describe("eigenvalue below clamp window", eig(i)));
    }
    if (eig(i) < 0.0) eig(i) = 0.0;
  }
  return shannon_entropy(eig);
}

double rel_entropy(const DensityMatrix& rho, const DensityMatrix& tau) {
  if (rho.dim() != tau.dim()) {
    throw DimensionMismatch("relative entropy of states with different dimensions");
  }
  const Spectrum sr = eig_hermitian(rho.matrix());
  const Spectrum st = eig_hermitian(tau.matrix());
  const Eigen::MatrixXd overlap = (sr.eigenvectors.adjoint() * st.eigenvectors).cwiseAbs2();

  double self = 0.0;
  double cross = 0.0;
  for (Eigen::Index i = 0; i < sr.eigenvalues.size(); ++i) {
    const double lam = std::max(sr.eigenvalues(i), 0.0);
    self += xlog2x(lam);
    for (Eigen::Index j = 0; j < st.eigenvalues.size(); ++j) {
      const double weight = lam * overlap(i, j);
      const double mu = st.eigenvalues(j);
      if (mu <= kEigenClamp) {
        if (weight > kSupportTol) return std::numeric_limits<double>::infinity();
        continue;
      }
      cross += weight * std::log2(mu);
    }
  }
  const double s = self - cross;
  if (s < -1e-9) {
    throw NumericalFailure(describe("relative entropy below round-off floor", s));
  }
  return std::max(s, 0.0);
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("trace distance of differently sized matrices");
  }
  const ComplexMatrix d = a - b;
  return 0.5 * hermitian_eigenvalues(0.5 * (d + d.adjoint())).cwiseAbs().sum();
}

}  // namespace qcorr
