#include <cmath>
#include <filesystem>
#include <random>
#include <string>

#include <doctest.h>

#include "qcorr/states.hpp"
#include "support/oracles.hpp"

using namespace qcorr;

namespace {

const std::filesystem::path kFixtures = QCORR_FIXTURES;

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

Ket ket(Complex a, Complex b) {
  ComplexVector v(2);
  v << a, b;
  return Ket(v);
}

// S(A) + S(B) - S(AB) with oracle eigenvalues.
double entropic_mutual_information(const DensityMatrix& rho) {
  return oracle::entropy_bits(partial_trace(rho, Party::B).matrix()) +
         oracle::entropy_bits(partial_trace(rho, Party::A).matrix()) - oracle::entropy_bits(rho.matrix());
}

}  // namespace

TEST_SUITE("states") {

TEST_CASE("ket_h") {
  const Ket h = ket_h();
  CHECK(h.amplitudes()(0) == Complex(0.7071067811865476, 0));
  CHECK(h.amplitudes()(1) == Complex(0.7071067811865476, 0));
  CHECK(std::abs(h.amplitudes().squaredNorm() - 1.0) < 1e-15);
  CHECK(std::norm(ket_zero().amplitudes().dot(h.amplitudes())) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("Ket normalization is enforced") {
  CHECK_THROWS_AS(ket(1.0, 0.1), InvalidSpec);
  CHECK_NOTHROW(ket(0.6, Complex(0, 0.8)));
}

TEST_CASE("from_product_mixture examples") {
  SUBCASE("single product term") {
    const DensityMatrix rho = from_product_mixture({{MixtureTerm{1.0, ket_zero(), ket_zero()}}});
    ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
    expect(0, 0) = 1.0;
    CHECK(max_abs(rho.matrix() - expect) == 0.0);
  }
  SUBCASE("counterexample entries") {
    const DensityMatrix rho = from_product_mixture(counterexample_spec());
    ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
    expect(0, 0) = 0.5;
    expect(2, 2) = expect(2, 3) = expect(3, 2) = expect(3, 3) = 0.25;
    CHECK(max_abs(rho.matrix() - expect) < 1e-16);
    CHECK(rho.dims() == Dims{2, 2});
  }
  SUBCASE("classical state") {
    const DensityMatrix chi = from_product_mixture(
        {{MixtureTerm{0.5, ket_zero(), ket_zero()}, MixtureTerm{0.25, ket_one(), ket_zero()},
          MixtureTerm{0.25, ket_one(), ket_one()}}});
    ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
    expect(0, 0) = 0.5;
    expect(2, 2) = expect(3, 3) = 0.25;
    CHECK(max_abs(chi.matrix() - expect) == 0.0);
  }
  SUBCASE("invalid specs") {
    CHECK_THROWS_AS(from_product_mixture({}), InvalidSpec);
    CHECK_THROWS_AS(from_product_mixture({{MixtureTerm{0.9, ket_zero(), ket_zero()}}}), InvalidSpec);
    CHECK_THROWS_AS(from_product_mixture({{MixtureTerm{1.2, ket_zero(), ket_zero()},
                                           MixtureTerm{-0.2, ket_one(), ket_one()}}}),
                    InvalidSpec);
    ComplexVector three = ComplexVector::Unit(3, 0);
    CHECK_THROWS_AS(from_product_mixture({{MixtureTerm{0.5, ket_zero(), ket_zero()},
                                           MixtureTerm{0.5, ket_one(), Ket(three)}}}),
                    InvalidSpec);
  }
}

TEST_CASE("counterexample_state") {
  const DensityMatrix rho = counterexample_state();
  CHECK(std::abs(rho.matrix().trace() - Complex(1.0)) < 1e-15);
  const std::vector<double> ev = oracle::eigenvalues(rho.matrix());
  CHECK(ev[0] == doctest::Approx(0.5));
  CHECK(ev[1] == doctest::Approx(0.5));
  CHECK(std::abs(ev[2]) < 1e-14);
  CHECK(std::abs(ev[3]) < 1e-14);
  // 1/2 |1H><1H| puts 1/2 * (1/sqrt2)^2 on the |10>,|11> coherence.
  CHECK(rho(2, 3).real() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(rho(2, 3).imag() == 0.0);
}

TEST_CASE("random_separable") {
  SUBCASE("k = 1 gives an uncorrelated pure product") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const SeparableSample s = random_separable(seed, 1);
      CHECK(oracle::eigenvalues(s.rho.matrix())[0] == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(std::abs(entropic_mutual_information(s.rho)) < 1e-9);
    }
  }
  SUBCASE("deterministic in (seed, k)") {
    const SeparableSample a = random_separable(42, 3);
    const SeparableSample b = random_separable(42, 3);
    CHECK((a.rho.matrix().array() == b.rho.matrix().array()).all());
    REQUIRE(a.spec.terms.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(a.spec.terms[i].p == b.spec.terms[i].p);
      CHECK((a.spec.terms[i].a.amplitudes().array() == b.spec.terms[i].a.amplitudes().array()).all());
    }
  }
  SUBCASE("outputs are valid PPT states and match their spec") {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
      const int k = 1 + static_cast<int>(seed % 8);
      const SeparableSample s = random_separable(seed, k);
      CHECK(s.spec.terms.size() == static_cast<std::size_t>(k));
      CHECK(max_abs(from_product_mixture(s.spec).matrix() - s.rho.matrix()) == 0.0);
      const PptResult ppt = ppt_check(s.rho);
      CHECK(ppt.separable);
      CHECK(ppt.min_eigenvalue >= -1e-10);
    }
  }
  SUBCASE("distinct seeds give distinct states") {
    std::vector<ComplexMatrix> mats;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) mats.push_back(random_separable(seed, 3).rho.matrix());
    int collisions = 0;
    for (std::size_t i = 0; i < mats.size(); ++i)
      for (std::size_t j = i + 1; j < mats.size(); ++j) {
        // Trace norm dominates the Frobenius norm, so only near pairs need
        // the exact trace distance.
        if ((mats[i] - mats[j]).norm() > 2e-8) continue;
        if (trace_distance(mats[i], mats[j]) <= 1e-8) ++collisions;
      }
    CHECK(collisions == 0);
  }
  SUBCASE("k must be positive") { CHECK_THROWS_AS(random_separable(1, 0), InvalidSpec); }
}

TEST_CASE("bell_diagonal") {
  std::mt19937_64 rng(41);
  std::exponential_distribution<double> ex;
  for (int trial = 0; trial < 1000; ++trial) {
    std::array<double, 4> w{};
    double total = 0;
    for (double& x : w) total += (x = ex(rng));
    for (double& x : w) x /= total;
    const DensityMatrix rho = bell_diagonal(w);
    CHECK(std::abs(rho.matrix().trace() - Complex(1.0)) < 1e-12);
    CHECK(oracle::eigenvalues(rho.matrix()).back() >= -1e-12);
    const double max_w = *std::max_element(w.begin(), w.end());
    CHECK(ppt_check(rho).separable == (max_w <= 0.5 + 1e-10));
  }
  SUBCASE("boundary at 1/2 is separable") {
    CHECK(ppt_check(bell_diagonal({0.5, 0.5, 0, 0})).separable);
    CHECK_FALSE(ppt_check(bell_diagonal({0.5 + 1e-6, 0.5 - 1e-6, 0, 0})).separable);
  }
  CHECK_THROWS_AS(bell_diagonal({0.5, 0.5, 0.5, -0.5}), InvalidSpec);
  for (std::uint64_t seed = 0; seed < 200; ++seed) CHECK(ppt_check(random_bell_diagonal_separable(seed)).separable);
}

TEST_CASE("ppt_check examples") {
  CHECK(ppt_check(counterexample_state()).separable);

  const PptResult bell = ppt_check(bell_diagonal({1, 0, 0, 0}));
  CHECK(bell.min_eigenvalue == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK_FALSE(bell.separable);

  const PptResult mixed = ppt_check(DensityMatrix(ComplexMatrix::Identity(4, 4) / 4.0, Dims{2, 2}));
  CHECK(mixed.min_eigenvalue == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(mixed.separable);

  CHECK_THROWS_AS(ppt_check(DensityMatrix(ComplexMatrix::Identity(6, 6) / 6.0, Dims{3, 2})), UnsupportedDims);
}

TEST_CASE("state files") {
  SUBCASE("counterexample fixture") {
    CHECK(max_abs(load_state(kFixtures / "counterexample.json").matrix() - counterexample_state().matrix()) < 1e-15);
  }
  SUBCASE("dense maximally mixed") {
    const DensityMatrix rho = load_state(kFixtures / "maximally_mixed.json");
    CHECK(max_abs(rho.matrix() - ComplexMatrix::Identity(4, 4) / 4.0) == 0.0);
  }
  SUBCASE("weights summing to 0.9") {
    CHECK_THROWS_AS(load_state(kFixtures / "bad_weights.json"), InvariantViolation);
  }
  SUBCASE("entangled dense state parses") {
    CHECK_FALSE(ppt_check(load_state(kFixtures / "bell_phi_plus.json")).separable);
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(load_state(kFixtures / "nope.json"), ParseError); }
}

TEST_CASE("state file diagnostics") {
  SUBCASE("syntax error reports the line") {
    try {
      parse_state_spec("{\n  \"dense\": {\n    \"dims\": [2, 2],,\n  }\n}");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.where() == "line 3");
    }
  }
  SUBCASE("schema errors report the field") {
    try {
      parse_state_spec(R"({"product_mixture": {"terms": [{"p": 1, "a": [[1, 0], [0, 0]], "b": [[1, "x"], [0, 0]]}]}})");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.where() == "/product_mixture/terms/0/b/0/1");
    }
    try {
      parse_state_spec(R"({"dense": {"dims": [2, 2], "re": [1, 0, 0, 0], "im": []}})");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.where() == "/dense/re");
    }
    try {
      parse_state_spec(R"({"product_mixture": {"terms": [{"a": [[1, 0], [0, 0]], "b": [[1, 0], [0, 0]]}]}})");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.where() == "/product_mixture/terms/0");
    }
  }
  SUBCASE("exactly one top-level key") {
    CHECK_THROWS_AS(parse_state_spec(R"({"dense": {}, "product_mixture": {}})"), ParseError);
    CHECK_THROWS_AS(parse_state_spec(R"({"pure": {}})"), ParseError);
    CHECK_THROWS_AS(parse_state_spec("[]"), ParseError);
  }
  SUBCASE("unnormalized ket is an invariant violation") {
    CHECK_THROWS_AS(parse_state_spec(R"({"product_mixture": {"terms": [{"p": 1, "a": [[1, 0], [1, 0]], "b": [[1, 0], [0, 0]]}]}})"),
                    InvariantViolation);
  }
}

TEST_CASE("serialize then parse reproduces the state") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const SeparableSample s = random_separable(seed, 1 + static_cast<int>(seed % 4));
    const DensityMatrix from_dense = to_density_matrix(parse_state_spec(serialize_state_spec(dense_spec(s.rho))));
    CHECK(max_abs(from_dense.matrix() - s.rho.matrix()) <= 1e-12);
    const DensityMatrix from_mix = to_density_matrix(parse_state_spec(serialize_state_spec(s.spec)));
    CHECK(max_abs(from_mix.matrix() - s.rho.matrix()) <= 1e-12);
  }
}

}  // TEST_SUITE
