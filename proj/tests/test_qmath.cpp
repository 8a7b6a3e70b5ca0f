#include <cmath>

#include <gtest/gtest.h>

#include "qcap/error.hpp"
#include "qcap/qmath.hpp"
#include "support.hpp"

using namespace qcap;
namespace qt = qcap::testing;

namespace {

Matrix random_hermitian(qt::TestRng& rng, int d) {
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  return 0.5 * (g + g.adjoint());
}

DensityMatrix random_state(qt::TestRng& rng, int d) {
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  const Matrix m = g * g.adjoint();
  return DensityMatrix(m / m.trace().real());
}

}  // namespace

TEST(BlochVector, RoundTripThroughDensityMatrix) {
  qt::TestRng rng(1);
  for (int i = 0; i < 100; ++i) {
    const Eigen::Vector3d r = qt::random_ball_point(rng);
    const BlochVector back = to_bloch(from_bloch(BlochVector::from(r)));
    EXPECT_NEAR((back.vec() - r).norm(), 0.0, 1e-14);
  }
}

TEST(BlochVector, OutsideBallRejected) {
  try {
    from_bloch({0.8, 0.8, 0.0});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidBlochVector);
  }
}

TEST(DensityMatrix, ValidationRejectsBadInput) {
  Matrix not_unit = Matrix::Identity(2, 2);
  EXPECT_THROW(DensityMatrix{not_unit}, Error);
  Matrix negative(2, 2);
  negative << 1.2, 0, 0, -0.2;
  EXPECT_THROW(DensityMatrix{negative}, Error);
  Matrix skew(2, 2);
  skew << 0.5, Complex(0, 0.3), Complex(0, 0.3), 0.5;
  EXPECT_THROW(DensityMatrix{skew}, Error);
}

TEST(DensityMatrix, RepairRenormalizes) {
  Matrix m = Matrix::Identity(2, 2);
  const DensityMatrix rho(m, Validation::repair);
  EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-15);
}

TEST(Spectral, ReconstructsMatrix) {
  qt::TestRng rng(2);
  for (int d : {2, 3, 5}) {
    const Matrix h = random_hermitian(rng, d);
    Matrix rebuilt = Matrix::Zero(d, d);
    const auto pairs = spectral_decompose(h);
    for (std::size_t k = 0; k + 1 < pairs.size(); ++k) EXPECT_GE(pairs[k].value, pairs[k + 1].value);
    for (const auto& p : pairs) rebuilt += p.value * p.vector * p.vector.adjoint();
    EXPECT_NEAR((rebuilt - h).norm(), 0.0, 1e-12);
  }
}

TEST(Spectral, AgreesWithGeneralSolver) {
  qt::TestRng rng(3);
  const Matrix h = random_hermitian(rng, 4);
  auto oracle = qt::general_spectrum(h);
  std::sort(oracle.rbegin(), oracle.rend());
  const auto ours = eigenvalues(h);
  ASSERT_EQ(ours.size(), oracle.size());
  for (std::size_t i = 0; i < ours.size(); ++i) EXPECT_NEAR(ours[i], oracle[i], 1e-12);
}

TEST(Spectral, NonHermitianRejected) {
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  EXPECT_THROW(eigenvalues(m), Error);
}

TEST(PartialTrace, MatchesBlockSums) {
  qt::TestRng rng(4);
  const DensityMatrix rho = random_state(rng, 6);
  EXPECT_NEAR((partial_trace(rho.matrix(), 2, 3, Subsystem::B) - qt::partial_trace_first_oracle(rho.matrix(), 2, 3)).norm(),
              0.0, 1e-14);
  EXPECT_NEAR((partial_trace(rho.matrix(), 2, 3, Subsystem::A) - qt::partial_trace_second_oracle(rho.matrix(), 2, 3)).norm(),
              0.0, 1e-14);
}

TEST(PartialTrace, ProductStateFactors) {
  qt::TestRng rng(5);
  const DensityMatrix a = random_state(rng, 2);
  const DensityMatrix b = random_state(rng, 3);
  const DensityMatrix ab = tensor_product(a, b);
  EXPECT_NEAR((partial_trace(ab, {2, 3}, Subsystem::A).matrix() - a.matrix()).norm(), 0.0, 1e-14);
  EXPECT_NEAR((partial_trace(ab, {2, 3}, Subsystem::B).matrix() - b.matrix()).norm(), 0.0, 1e-14);
}

TEST(PartialTranspose, BellStateHasNegativeEigenvalue) {
  const DensityMatrix epr(bell_state(0, 0));
  const auto ev = eigenvalues(partial_transpose(epr.matrix(), 2, 2));
  EXPECT_NEAR(ev.back(), -0.5, 1e-14);
}

TEST(BellStates, OrthonormalBasis) {
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const Complex ip = bell_state(a / 2, a % 2).amplitudes().dot(bell_state(b / 2, b % 2).amplitudes());
      EXPECT_NEAR(std::abs(ip), a == b ? 1.0 : 0.0, 1e-15);
    }
  }
}

TEST(Purify, RecoversState) {
  qt::TestRng rng(6);
  const DensityMatrix rho = random_state(rng, 3);
  const PureState psi = purify(rho);
  ASSERT_EQ(psi.dim(), 9);
  const Matrix back = partial_trace(psi.projector(), 3, 3, Subsystem::B);
  EXPECT_NEAR((back - rho.matrix()).norm(), 0.0, 1e-13);
}

TEST(Fidelity, PureAndMixedForms) {
  const DensityMatrix zero(PureState::basis(2, 0));
  const DensityMatrix plus = from_bloch({1, 0, 0});
  EXPECT_NEAR(fidelity(zero, plus), 0.5, 1e-12);
  EXPECT_NEAR(fidelity(PureState::basis(2, 0), plus), 0.5, 1e-15);
  EXPECT_NEAR(fidelity(zero, zero), 1.0, 1e-12);
  qt::TestRng rng(7);
  const DensityMatrix a = random_state(rng, 3), b = random_state(rng, 3);
  EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-10);
}

TEST(Measurement, ComputationalBasisProbabilities) {
  const DensityMatrix rho = from_bloch({0, 0, 0.6});
  const auto out = measure(rho, MeasurementSet::computational(2));
  ASSERT_EQ(out.size(), 2u);
  EXPECT_NEAR(out[0].probability, 0.8, 1e-15);
  EXPECT_NEAR(out[1].probability, 0.2, 1e-15);
  ASSERT_TRUE(out[0].post_state);
  EXPECT_NEAR(std::abs((*out[0].post_state)(0, 0)), 1.0, 1e-15);
}

TEST(Measurement, ZeroProbabilityHasNoPostState) {
  const DensityMatrix zero(PureState::basis(2, 0));
  const auto out = measure(zero, MeasurementSet::computational(2));
  EXPECT_FALSE(out[1].post_state.has_value());
}

TEST(Measurement, IncompleteSetRejected) {
  Matrix p0 = Matrix::Zero(2, 2);
  p0(0, 0) = 1;
  try {
    MeasurementSet bad({p0});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IncompleteMeasurement);
  }
}

TEST(Kron, DimensionsAndValues) {
  const Matrix k = kron(pauli_x(), pauli_z());
  EXPECT_EQ(k.rows(), 4);
  EXPECT_EQ(k(0, 2), Complex(1, 0));
  EXPECT_EQ(k(1, 3), Complex(-1, 0));
}

TEST(Purity, Bounds) {
  EXPECT_NEAR(purity(DensityMatrix::maximally_mixed(4)), 0.25, 1e-15);
  EXPECT_NEAR(purity(DensityMatrix(PureState::basis(3, 1))), 1.0, 1e-15);
}
