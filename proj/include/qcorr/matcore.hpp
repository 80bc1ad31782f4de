#pragma once

#include <complex>

#include <Eigen/Dense>

#include "qcorr/error.hpp"

namespace qcorr {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Tolerances shared by the density-matrix checks.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
/// Eigenvalues in [-kEigenClamp, 0) are treated as exact zeros by entropies.
inline constexpr double kEigenClamp = 1e-12;
/// Weight above which a support violation makes a relative entropy infinite.
inline constexpr double kSupportTol = 1e-10;
inline constexpr int kMaxTotalDim = 64;

/// Which subsystem of a bipartite state an operation acts on.
enum class Party { A, B };

/// Party dimensions (d_A, d_B). Index convention is row-major with party A
/// the most significant factor: |i j> sits at i * d_B + j.
struct Dims {
  int a = 2;
  int b = 2;

  int total() const noexcept { return a * b; }
  bool operator==(const Dims&) const = default;
};

/// Hermitian, unit-trace, positive-semidefinite matrix with party tags.
///
/// The constructor validates; every DensityMatrix in existence satisfies
/// the invariants, so downstream code never re-checks.
class DensityMatrix {
 public:
  /// Throws InvariantViolation when `m` is not a valid state for `dims`.
  DensityMatrix(ComplexMatrix m, Dims dims);
  /// Single-party state (dims = (dim, 1)).
  explicit DensityMatrix(ComplexMatrix m);

  const ComplexMatrix& matrix() const noexcept { return mat_; }
  Dims dims() const noexcept { return dims_; }
  int dim() const noexcept { return static_cast<int>(mat_.rows()); }
  Complex operator()(int r, int c) const { return mat_(r, c); }

 private:
  ComplexMatrix mat_;
  Dims dims_;
};

/// Eigen-decomposition of a Hermitian matrix, eigenvalues descending.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  ComplexMatrix eigenvectors;  // column i pairs with eigenvalues(i)
};

/// Largest entry modulus of m - m^dagger.
double hermiticity_defect(const ComplexMatrix& m);

/// Throws NotHermitian if m is not Hermitian within kHermitianTol.
Spectrum eig_hermitian(const ComplexMatrix& m);

/// a (x) b with (i*dim_b + j, k*dim_b + l) -> a(i,k) * b(j,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Product state a (x) b; the result's dims are (a.dim(), b.dim()).
DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b);

/// Traces OUT `party`, returning the marginal of the other one.
DensityMatrix partial_trace(const DensityMatrix& rho, Party traced_out);

/// Transposes the indices of `party`. The result is Hermitian with unit
/// trace but may have negative eigenvalues.
ComplexMatrix partial_transpose(const DensityMatrix& rho, Party party);

/// Von Neumann entropy in bits. Throws NegativeEigenvalue for eigenvalues
/// below -kEigenClamp.
double vn_entropy(const DensityMatrix& rho);

/// Shannon entropy in bits of a probability vector, 0 log 0 := 0.
double shannon_entropy(const Eigen::Ref<const Eigen::VectorXd>& probs);

/// S(rho || tau) in bits. Returns +infinity when supp(rho) is not contained
/// in supp(tau). Throws DimensionMismatch on differing sizes.
double rel_entropy(const DensityMatrix& rho, const DensityMatrix& tau);

/// Half the trace norm of a - b (both Hermitian).
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qcorr
