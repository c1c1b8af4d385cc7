#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wteleport/qcore.hpp"

using namespace wteleport;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

StateVector make(const QubitRegister& reg, std::initializer_list<Complex> amps) {
  CVector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (Complex a : amps) v(i++) = a;
  return StateVector(reg, v);
}

StateVector random_state(std::mt19937_64& rng, const QubitRegister& reg) {
  return StateVector(reg, oracle::random_state(rng, static_cast<Eigen::Index>(reg.dimension())));
}

}  // namespace

TEST_CASE("register validation") {
  CHECK_THROWS_AS(QubitRegister({1, 1}), InvalidInput);
  CHECK_THROWS_AS(QubitRegister(std::vector<int>{}), InvalidInput);
  CHECK_THROWS_AS(QubitRegister({1, 2, 3, 4, 5, 6}), InvalidInput);
  const QubitRegister r{1, 4, 5};
  CHECK(r.position(4) == 1);
  CHECK(r.without(QubitRegister{4}) == QubitRegister{1, 5});
  CHECK_THROWS_AS(r.position(2), InvalidInput);
}

TEST_CASE("ket") {
  SUBCASE("single qubit") {
    const auto s = ket({0}, QubitRegister{1});
    CHECK(s[0] == Complex(1.0));
    CHECK(s[1] == Complex(0.0));
  }
  SUBCASE("first label is the most significant bit") {
    const auto s = ket({1, 0}, QubitRegister{1, 2});
    CHECK(s[2] == Complex(1.0));
    CHECK(s.amplitudes().squaredNorm() == doctest::Approx(1.0));
  }
  SUBCASE("three qubits") {
    const auto s = ket({0, 0, 1}, QubitRegister{3, 4, 5});
    CHECK(s[1] == Complex(1.0));
  }
  CHECK_THROWS_AS(ket({0, 1}, QubitRegister{1}), InvalidInput);
  CHECK_THROWS_AS(ket({2}, QubitRegister{1}), InvalidInput);
}

TEST_CASE("tensor") {
  SUBCASE("basis composition") {
    const auto s = tensor(ket({0}, QubitRegister{1}), ket({0}, QubitRegister{2}));
    CHECK(s.reg() == QubitRegister{1, 2});
    CHECK(s.overlap_modulus(ket({0, 0}, QubitRegister{1, 2})) == doctest::Approx(1.0));
  }
  SUBCASE("distributivity") {
    const auto bell = make(QubitRegister{1, 2}, {kInvSqrt2, 0, 0, kInvSqrt2});
    const auto s = tensor(bell, ket({0}, QubitRegister{3}));
    for (std::size_t i = 0; i < 8; ++i) {
      const double expected = (i == 0b000 || i == 0b110) ? kInvSqrt2 : 0.0;
      CHECK(std::abs(s[i] - expected) < 1e-15);
    }
  }
  SUBCASE("input pair with W_1 channel") {
    // alpha = beta = 1/sqrt(2); W_1 = (|100> + |010> + sqrt2 |001>)/2
    const auto psi = make(QubitRegister{1, 2}, {kInvSqrt2, 0, 0, kInvSqrt2});
    const auto w = make(QubitRegister{3, 4, 5}, {0, std::sqrt(2.0) / 2, 0.5, 0, 0.5, 0, 0, 0});
    const auto chi = tensor(psi, w);
    CHECK(chi.dimension() == 32);
    // |00100>: q1=0,q2=0 from alpha; |100> from the channel
    CHECK(std::abs(chi[0b00100] - Complex(kInvSqrt2 * 0.5)) < 1e-15);
    CHECK(chi.is_normalized());
  }
  CHECK_THROWS_AS(tensor(ket({0}, QubitRegister{1}), ket({0}, QubitRegister{1})), InvalidInput);
}

TEST_CASE("tensor matches an independent Kronecker product and is associative") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_state(rng, QubitRegister{1});
    const auto b = random_state(rng, QubitRegister{2, 3});
    const auto c = random_state(rng, QubitRegister{4, 5});
    const auto left = tensor(tensor(a, b), c);
    const auto right = tensor(a, tensor(b, c));
    CHECK(left.reg() == right.reg());
    CHECK((left.amplitudes() - right.amplitudes()).cwiseAbs().maxCoeff() < 1e-12);
    const auto ref = oracle::kron(oracle::kron(a.amplitudes(), b.amplitudes()), c.amplitudes());
    CHECK((left.amplitudes() - ref).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("measure") {
  SUBCASE("Bell state in its own basis") {
    const auto phi = make(QubitRegister{2, 3}, {kInvSqrt2, 0, 0, kInvSqrt2});
    const auto out = measure(phi, QubitRegister{2, 3}, MeasurementBasis::bell());
    REQUIRE(out.size() == 4);
    CHECK(out[0].probability == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t k = 1; k < 4; ++k) {
      CHECK(out[k].probability < 1e-14);
      CHECK(out[k].post_state.is_zero());
    }
  }
  SUBCASE("equal superposition") {
    const auto plus = make(QubitRegister{5}, {kInvSqrt2, kInvSqrt2});
    const auto out = measure(plus, QubitRegister{5}, MeasurementBasis::computational(1));
    CHECK(out[0].probability == doctest::Approx(0.5));
    CHECK(out[1].probability == doctest::Approx(0.5));
  }
  SUBCASE("five-qubit joint state, Phi+ outcome") {
    const auto psi = make(QubitRegister{1, 2}, {kInvSqrt2, 0, 0, kInvSqrt2});
    const auto w = make(QubitRegister{3, 4, 5}, {0, std::sqrt(2.0) / 2, 0.5, 0, 0.5, 0, 0, 0});
    const auto chi = tensor(psi, w);
    // Oracle: explicit projector <Phi+|_23 applied amplitude by amplitude.
    double p_ref = 0.0;
    for (int q1 = 0; q1 < 2; ++q1)
      for (int q4 = 0; q4 < 2; ++q4)
        for (int q5 = 0; q5 < 2; ++q5) {
          const std::size_t i00 = (q1 << 4) | (0 << 3) | (0 << 2) | (q4 << 1) | q5;
          const std::size_t i11 = (q1 << 4) | (1 << 3) | (1 << 2) | (q4 << 1) | q5;
          p_ref += std::norm(kInvSqrt2 * (chi[i00] + chi[i11]));
        }
    CHECK(p_ref == doctest::Approx(0.25).epsilon(1e-14));
    const auto out = measure(chi, QubitRegister{2, 3}, MeasurementBasis::bell());
    CHECK(out[0].probability == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(out[0].post_state.reg() == QubitRegister{1, 4, 5});
  }
  SUBCASE("errors") {
    const auto s = ket({0, 0}, QubitRegister{1, 2});
    CHECK_THROWS_AS(measure(s, QubitRegister{3}, MeasurementBasis::computational(1)), InvalidInput);
    CHECK_THROWS_AS(measure(s, QubitRegister{1}, MeasurementBasis::bell()), InvalidBasis);
  }
}

TEST_CASE("measurement basis must be orthonormal") {
  std::vector<CVector> bad(2, CVector::Zero(2));
  bad[0] << 1.0, 0.0;
  bad[1] << 1.0, 1e-6;
  CHECK_THROWS_AS(MeasurementBasis(BasisKind::Computational, bad), InvalidBasis);
  bad[1] << 0.0, 2.0;
  CHECK_THROWS_AS(MeasurementBasis(BasisKind::Computational, bad), InvalidBasis);
  std::vector<CVector> three(3, CVector::Zero(3));
  CHECK_THROWS_AS(MeasurementBasis(BasisKind::Computational, three), InvalidBasis);
}

TEST_CASE("measurement invariants on random states") {
  std::mt19937_64 rng(11);
  const QubitRegister reg{1, 2, 3, 4, 5};
  for (int trial = 0; trial < 25; ++trial) {
    const auto s = random_state(rng, reg);
    for (const auto& [targets, basis] :
         {std::pair{QubitRegister{2, 3}, MeasurementBasis::bell()},
          std::pair{QubitRegister{5}, MeasurementBasis::computational(1)},
          std::pair{QubitRegister{4, 1, 3}, MeasurementBasis::computational(3)}}) {
      const auto out = measure(s, targets, basis);
      double total = 0.0;
      for (const auto& o : out) {
        CHECK(o.probability >= 0.0);
        CHECK(o.probability <= 1.0 + 1e-12);
        if (o.probability >= 1e-14) CHECK(std::abs(o.post_state.norm() - 1.0) < 1e-10);
        total += o.probability;
      }
      CHECK(std::abs(total - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("index convention is self-consistent") {
  const QubitRegister reg{1, 2, 3, 4, 5};
  for (int index = 0; index < 32; ++index) {
    std::vector<int> bits;
    for (int k = 4; k >= 0; --k) bits.push_back((index >> k) & 1);
    const auto s = ket(bits, reg);
    for (std::size_t q = 0; q < 5; ++q) {
      const auto out = measure(s, QubitRegister{reg.labels()[q]}, MeasurementBasis::computational(1));
      CHECK(out[static_cast<std::size_t>(bits[q])].probability == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("partial trace") {
  const auto phi = make(QubitRegister{1, 2}, {kInvSqrt2, 0, 0, kInvSqrt2});
  SUBCASE("Bell state reduces to I/2") {
    const auto r = partial_trace(density_from_pure(phi), QubitRegister{1});
    CHECK((r.entries() - 0.5 * CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("product state") {
    const auto r = partial_trace(density_from_pure(ket({0, 0}, QubitRegister{1, 2})), QubitRegister{1});
    CHECK(r(0, 0) == Complex(1.0));
    CHECK(std::abs(r(1, 1)) == 0.0);
  }
  SUBCASE("Werner p=1 (a Bell state)") {
    CMatrix w = CMatrix::Zero(4, 4);
    w(0, 0) = w(3, 3) = w(0, 3) = w(3, 0) = 0.5;
    const auto r = partial_trace(DensityMatrix(QubitRegister{1, 2}, w), QubitRegister{1});
    CHECK((r.entries() - 0.5 * CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
  }
  CHECK_THROWS_AS(partial_trace(density_from_pure(phi), QubitRegister{3}), InvalidInput);
}

TEST_CASE("partial trace of a product recovers the factor") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_state(rng, QubitRegister{1, 4});
    const auto b = random_state(rng, QubitRegister{2, 3, 5});
    const auto traced = partial_trace(density_from_pure(tensor(a, b)), a.reg());
    CHECK((traced.entries() - density_from_pure(a).entries()).cwiseAbs().maxCoeff() < 1e-10);
    // keep in a non-leading position
    const auto traced_b = partial_trace(density_from_pure(tensor(a, b)), b.reg());
    CHECK((traced_b.entries() - density_from_pure(b).entries()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("density_from_pure") {
  SUBCASE("basis state") {
    const auto r = density_from_pure(ket({0}, QubitRegister{1}));
    CHECK(r(0, 0) == Complex(1.0));
    CHECK(r(1, 1) == Complex(0.0));
  }
  SUBCASE("Psi+") {
    const auto r = density_from_pure(make(QubitRegister{1, 2}, {0, kInvSqrt2, kInvSqrt2, 0}));
    for (std::size_t i : {1, 2})
      for (std::size_t j : {1, 2}) CHECK(std::abs(r(i, j) - 0.5) < 1e-15);
    CHECK(std::abs(r(0, 0)) == 0.0);
    CHECK(r.trace() == doctest::Approx(1.0));
  }
  SUBCASE("reduced output state for n=2, alpha^2=1/3") {
    // N (sqrt(n) alpha |01> + beta |10>), N^2 = 1/(n alpha^2 + beta^2): diagonal (0, 0.5, 0.5, 0)
    const double n = 2.0, a = std::sqrt(1.0 / 3.0), b = std::sqrt(2.0 / 3.0);
    const double norm = 1.0 / std::sqrt(n * a * a + b * b);
    const auto xi = make(QubitRegister{1, 4}, {0, norm * std::sqrt(n) * a, norm * b, 0});
    const auto r = density_from_pure(xi);
    CHECK(std::abs(r(0, 0)) < 1e-15);
    CHECK(r(1, 1).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r(2, 2).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(r(3, 3)) < 1e-15);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(r.entries());
    CHECK(es.eigenvalues()(3) == doctest::Approx(1.0));
    CHECK(std::abs(es.eigenvalues()(2)) < 1e-12);
  }
  CHECK_THROWS_AS(density_from_pure(make(QubitRegister{1}, {1.0, 1.0})), InvalidInput);
}

TEST_CASE("density matrix validation") {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 0.5;
  CHECK_THROWS_AS(DensityMatrix(QubitRegister{1}, m), InvalidInput);
  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix(QubitRegister{1}, neg).check_physical(), InvalidInput);
  CHECK_THROWS_AS(DensityMatrix(QubitRegister{1, 2}, m), InvalidInput);
}
