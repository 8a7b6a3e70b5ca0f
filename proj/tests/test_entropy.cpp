#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "qcap/channels.hpp"
#include "qcap/entropy.hpp"
#include "qcap/error.hpp"
#include "support.hpp"

using namespace qcap;
namespace qt = qcap::testing;

namespace {

DensityMatrix random_state(qt::TestRng& rng, int d) {
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  const Matrix m = g * g.adjoint();
  return DensityMatrix(m / m.trace().real());
}

}  // namespace

TEST(Shannon, Basics) {
  const std::vector<double> uniform{0.25, 0.25, 0.25, 0.25};
  EXPECT_DOUBLE_EQ(shannon_entropy(uniform), 2.0);
  const std::vector<double> certain{1.0, 0.0};
  EXPECT_DOUBLE_EQ(shannon_entropy(certain), 0.0);
  EXPECT_EQ(xlog2x(0.0), 0.0);
}

TEST(BinaryEntropy, KnownValues) {
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
  EXPECT_DOUBLE_EQ(binary_entropy(0.0), 0.0);
  EXPECT_NEAR(binary_entropy(0.11), qt::h2(0.11), 1e-15);
  EXPECT_THROW(binary_entropy(1.5), Error);
}

TEST(VonNeumann, MatchesOracle) {
  qt::TestRng rng(11);
  for (int d : {2, 3, 4}) {
    const DensityMatrix rho = random_state(rng, d);
    EXPECT_NEAR(von_neumann(rho), qt::entropy_oracle(rho.matrix()), 1e-11);
  }
  EXPECT_NEAR(von_neumann(DensityMatrix::maximally_mixed(8)), 3.0, 1e-13);
}

TEST(RelativeEntropy, MatchesOracleAndIsNonNegative) {
  qt::TestRng rng(12);
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix a = random_state(rng, 3), b = random_state(rng, 3);
    const double d = relative_entropy(a, b);
    EXPECT_GE(d, -1e-12);
    EXPECT_NEAR(d, qt::relative_entropy_oracle(a.matrix(), b.matrix()), 1e-9);
  }
}

TEST(RelativeEntropy, SupportMismatchIsInfinite) {
  const DensityMatrix plus = from_bloch({1, 0, 0});
  const DensityMatrix zero(PureState::basis(2, 0));
  const EntropyScalar d = relative_entropy(plus, zero);
  EXPECT_TRUE(d.infinite);
  EXPECT_TRUE(std::isinf(d.value));
}

TEST(RelativeEntropy, BlochDivergentThrows) {
  try {
    relative_entropy_bloch({1, 0, 0}, {0, 0, 1});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfiniteDivergence);
  }
  EXPECT_TRUE(std::isinf(relative_entropy_bloch_unchecked({1, 0, 0}, {0, 0, 1})));
}

TEST(RelativeEntropy, BlochAgreesWithMatrix) {
  qt::TestRng rng(13);
  for (int i = 0; i < 200; ++i) {
    const BlochVector a = BlochVector::from(qt::random_ball_point(rng, 0.99));
    const BlochVector b = BlochVector::from(qt::random_ball_point(rng, 0.99));
    EXPECT_NEAR(relative_entropy_bloch(a, b), relative_entropy(from_bloch(a), from_bloch(b)), 1e-10);
  }
}

TEST(Holevo, OrthogonalPureStatesGiveOneBit) {
  const Ensemble e({0.5, 0.5}, {DensityMatrix(PureState::basis(2, 0)), DensityMatrix(PureState::basis(2, 1))});
  EXPECT_NEAR(holevo_quantity(e), 1.0, 1e-14);
}

TEST(Holevo, NonOrthogonalBelowOneBit) {
  const Ensemble e({0.5, 0.5}, {DensityMatrix(PureState::basis(2, 0)), from_bloch({1, 0, 0})});
  const double chi = holevo_quantity(e);
  EXPECT_GT(chi, 0.0);
  EXPECT_LT(chi, 1.0);
  // average state has Bloch vector (1/2, 0, 1/2)
  EXPECT_NEAR(chi, qt::h2(0.5 * (1.0 + std::sqrt(0.5))), 1e-12);
}

TEST(Bipartite, BellStateIdentities) {
  const DensityMatrix epr(bell_state(0, 0));
  EXPECT_NEAR(conditional_entropy(epr, {2, 2}), -1.0, 1e-14);
  EXPECT_NEAR(mutual_information(epr, {2, 2}), 2.0, 1e-14);
}

TEST(Bipartite, ProductStateHasNoMutualInformation) {
  qt::TestRng rng(14);
  const DensityMatrix ab = tensor_product(random_state(rng, 2), random_state(rng, 3));
  EXPECT_NEAR(mutual_information(ab, {2, 3}), 0.0, 1e-12);
}

TEST(Renyi, SpecialOrders) {
  const DensityMatrix rho = from_bloch({0, 0, 0.5});  // spectrum 0.75, 0.25
  EXPECT_NEAR(renyi_entropy(rho, 1.0), qt::h2(0.25), 1e-14);
  EXPECT_NEAR(renyi_entropy(rho, 2.0), -std::log2(0.625), 1e-14);
  EXPECT_NEAR(renyi_entropy(rho, std::numeric_limits<double>::infinity()), -std::log2(0.75), 1e-14);
  EXPECT_NEAR(renyi_entropy(rho, 0.0), 1.0, 1e-14);
  EXPECT_THROW(renyi_entropy(rho, -1.0), Error);
}

TEST(Renyi, MonotoneInOrder) {
  qt::TestRng rng(15);
  const DensityMatrix rho = random_state(rng, 4);
  double prev = renyi_entropy(rho, 0.0);
  for (double r : {0.5, 1.0, 1.5, 2.0, 5.0}) {
    const double v = renyi_entropy(rho, r);
    EXPECT_LE(v, prev + 1e-12);
    prev = v;
  }
}

TEST(CoherentInfo, IdentityAndCompleteDephasing) {
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
  EXPECT_NEAR(coherent_information(mixed, make_channel({ChannelType::identity})).coherent, 1.0, 1e-12);
  EXPECT_NEAR(coherent_information(mixed, make_channel({ChannelType::phase_flip, 0.5})).coherent, 0.0, 1e-12);
}
