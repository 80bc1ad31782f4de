#include "qcorr/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcorr/random.hpp"

namespace qcorr {

Ket::Ket(ComplexVector amplitudes) : amp_(std::move(amplitudes)) {
  if (amp_.size() < 1) throw InvalidSpec("ket has no amplitudes");
  if (!amp_.allFinite()) throw InvalidSpec("ket has non-finite amplitudes");
  const double norm2 = amp_.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "ket is not normalized (norm^2 = " << norm2 << ")";
    throw InvalidSpec(os.str());
  }
}

Ket ket_zero() { return Ket(ComplexVector::Unit(2, 0)); }

Ket ket_one() { return Ket(ComplexVector::Unit(2, 1)); }

Ket ket_h() {
  ComplexVector v(2);
  v << M_SQRT1_2, M_SQRT1_2;
  return Ket(std::move(v));
}

DensityMatrix from_product_mixture(const ProductMixtureSpec& spec) {
  if (spec.terms.empty()) throw InvalidSpec("product mixture has no terms");
  const int da = spec.terms.front().a.dim();
  const int db = spec.terms.front().b.dim();
  double total = 0.0;
  ComplexMatrix m = ComplexMatrix::Zero(da * db, da * db);
  for (std::size_t k = 0; k < spec.terms.size(); ++k) {
    const MixtureTerm& t = spec.terms[k];
    if (!(t.p >= 0.0) || t.p > 1.0) {
      throw InvalidSpec("term " + std::to_string(k) + ": weight outside [0, 1]");
    }
    if (t.a.dim() != da || t.b.dim() != db) {
      throw InvalidSpec("term " + std::to_string(k) + ": ket dimension mismatch");
    }
    total += t.p;
    m += t.p * kron(t.a.projector(), t.b.projector());
  }
  if (std::abs(total - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "weights sum to " << total << ", not 1";
    throw InvalidSpec(os.str());
  }
  return DensityMatrix(std::move(m), Dims{da, db});
}

ProductMixtureSpec counterexample_spec() {
  return ProductMixtureSpec{{
      MixtureTerm{0.5, ket_zero(), ket_zero()},
      MixtureTerm{0.5, ket_one(), ket_h()},
  }};
}

DensityMatrix counterexample_state() { return from_product_mixture(counterexample_spec()); }

DensityMatrix bell_diagonal(const std::array<double, 4>& weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvalidSpec("Bell weight is negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-10) throw InvalidSpec("Bell weights do not sum to 1");

  const double h = M_SQRT1_2;
  const std::array<std::array<double, 4>, 4> bell = {{
      {h, 0, 0, h},    // Phi+
      {h, 0, 0, -h},   // Phi-
      {0, h, h, 0},    // Psi+
      {0, h, -h, 0},   // Psi-
  }};
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    Eigen::Vector4d v(bell[i][0], bell[i][1], bell[i][2], bell[i][3]);
    m += (weights[i] * (v * v.transpose())).cast<Complex>();
  }
  return DensityMatrix(std::move(m), Dims{2, 2});
}

namespace {

Ket haar_qubit(Rng& rng) {
  ComplexVector v(2);
  for (int i = 0; i < 2; ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    v(i) = Complex(re, im);
  }
  v /= v.norm();
  return Ket(std::move(v));
}

std::vector<double> flat_simplex(Rng& rng, int n) {
  std::vector<double> w(static_cast<std::size_t>(n));
  double total = 0.0;
  for (double& x : w) {
    x = rng.exponential();
    total += x;
  }
  for (double& x : w) x /= total;
  return w;
}

}  // namespace

SeparableSample random_separable(std::uint64_t seed, int k) {
  if (k < 1) throw InvalidSpec("random_separable needs k >= 1");
  Rng rng(seed);
  const std::vector<double> w = flat_simplex(rng, k);
  ProductMixtureSpec spec;
  spec.terms.reserve(w.size());
  for (double p : w) {
    Ket a = haar_qubit(rng);
    Ket b = haar_qubit(rng);
    spec.terms.push_back(MixtureTerm{p, std::move(a), std::move(b)});
  }
  DensityMatrix rho = from_product_mixture(spec);
  return SeparableSample{std::move(rho), std::move(spec)};
}

DensityMatrix random_bell_diagonal_separable(std::uint64_t seed) {
  Rng rng(seed);
  for (;;) {
    const std::vector<double> w = flat_simplex(rng, 4);
    if (*std::max_element(w.begin(), w.end()) <= 0.5) {
      return bell_diagonal({w[0], w[1], w[2], w[3]});
    }
  }
}

PptResult ppt_check(const DensityMatrix& rho) {
  if (rho.dims() != Dims{2, 2}) throw UnsupportedDims("PPT test needs a 2x2 state");
  const ComplexMatrix pt = partial_transpose(rho, Party::B);
  const double min_eig = eig_hermitian(pt).eigenvalues.minCoeff();
  return PptResult{min_eig, min_eig >= -kPsdTol};
}

}  // namespace qcorr
