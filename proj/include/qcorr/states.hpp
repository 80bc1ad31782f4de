#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qcorr/matcore.hpp"

namespace qcorr {

/// Normalized pure state vector.
class Ket {
 public:
  /// Throws InvalidSpec unless |sum |a_i|^2 - 1| <= 1e-10.
  explicit Ket(ComplexVector amplitudes);

  const ComplexVector& amplitudes() const noexcept { return amp_; }
  int dim() const noexcept { return static_cast<int>(amp_.size()); }
  ComplexMatrix projector() const { return amp_ * amp_.adjoint(); }

 private:
  ComplexVector amp_;
};

Ket ket_zero();
Ket ket_one();
/// (|0> + |1>) / sqrt(2)
Ket ket_h();

struct MixtureTerm {
  double p = 0.0;
  Ket a;
  Ket b;
};

/// Convex mixture sum_k p_k |a_k><a_k| (x) |b_k><b_k|.
struct ProductMixtureSpec {
  std::vector<MixtureTerm> terms;
};

/// Hand-entered matrix; validated when converted to a DensityMatrix.
struct DenseSpec {
  Dims dims;
  ComplexMatrix matrix;
};

using StateSpec = std::variant<ProductMixtureSpec, DenseSpec>;

/// Throws InvalidSpec on bad weights, unnormalized kets or mixed dims.
DensityMatrix from_product_mixture(const ProductMixtureSpec& spec);

/// 1/2 (|00><00| + |1H><1H|).
ProductMixtureSpec counterexample_spec();
DensityMatrix counterexample_state();

/// Sum_i w_i |Bell_i><Bell_i| over (Phi+, Phi-, Psi+, Psi-).
DensityMatrix bell_diagonal(const std::array<double, 4>& weights);

struct SeparableSample {
  DensityMatrix rho;
  ProductMixtureSpec spec;
};

/// Deterministic in (seed, k): flat-simplex weights from normalized Exp(1)
/// draws, then per term a Haar-random qubit ket for A and for B.
SeparableSample random_separable(std::uint64_t seed, int k);

/// Separable Bell-diagonal state: flat-simplex weights redrawn until the
/// largest is <= 1/2. Deterministic in seed.
DensityMatrix random_bell_diagonal_separable(std::uint64_t seed);

struct PptResult {
  double min_eigenvalue = 0.0;
  bool separable = false;
};

/// Peres-Horodecki test; exact for two qubits. Throws UnsupportedDims
/// otherwise.
PptResult ppt_check(const DensityMatrix& rho);

// State files (JSON) ---------------------------------------------------------

/// Throws ParseError for syntax or schema problems. Does not validate the
/// physics; see to_density_matrix.
StateSpec parse_state_spec(std::string_view json_text);

/// Throws InvariantViolation (or InvalidSpec) if the state is not valid.
DensityMatrix to_density_matrix(const StateSpec& spec);

/// Reads and converts a state file. Missing files raise ParseError.
DensityMatrix load_state(const std::filesystem::path& path);

std::string serialize_state_spec(const StateSpec& spec);

/// Dense description of an existing state.
DenseSpec dense_spec(const DensityMatrix& rho);

}  // namespace qcorr
