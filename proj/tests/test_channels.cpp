#include <cmath>

#include <gtest/gtest.h>

#include "qcap/channels.hpp"
#include "qcap/error.hpp"
#include "support.hpp"

using namespace qcap;
namespace qt = qcap::testing;

namespace {

DensityMatrix random_state(qt::TestRng& rng, int d) {
  const Vector v = qt::random_state_vector(d, rng);
  const Vector w = qt::random_state_vector(d, rng);
  return DensityMatrix(0.7 * v * v.adjoint() + 0.3 * w * w.adjoint());
}

// Direct sum over Kraus operators, independent of apply().
Matrix kraus_sum(const QuantumChannel& ch, const Matrix& rho) {
  Matrix out = Matrix::Zero(ch.dim_out(), ch.dim_out());
  for (const Matrix& k : ch.kraus()) out += k * rho * k.adjoint();
  return out;
}

const std::vector<ChannelKind> kNamedQubitChannels = {
    {ChannelType::identity},
    {ChannelType::bit_flip, 0.2},
    {ChannelType::phase_flip, 0.3},
    {ChannelType::bit_phase_flip, 0.1},
    {ChannelType::depolarizing, 0.4},
    {ChannelType::amplitude_damping, 0.6},
    {ChannelType::dephasing, 0.25},
    {ChannelType::measure_prepare},
    {ChannelType::bsc, 0.15},
};

}  // namespace

TEST(Channels, NamedChannelsAreCptp) {
  for (const auto& kind : kNamedQubitChannels) {
    const CptpDiagnostics d = is_cptp(make_channel(kind));
    EXPECT_TRUE(d.cptp) << to_string(kind.type) << ": " << d.reason;
  }
  for (const auto& kind : {ChannelKind{ChannelType::erasure, 0.3, 0.0, 3}, ChannelKind{ChannelType::phase_erasure, 0.0, 0.4, 2},
                           ChannelKind{ChannelType::mixed_erasure, 0.2, 0.3, 2}}) {
    EXPECT_TRUE(is_cptp(make_channel(kind)).cptp) << to_string(kind.type);
  }
}

TEST(Channels, PancakeIsNotCompletelyPositive) {
  const CptpDiagnostics d = is_cptp(make_channel({ChannelType::pancake}));
  EXPECT_FALSE(d.cptp);
  EXPECT_LT(d.choi_min_eigenvalue, 0.0);
}

TEST(Channels, InvalidParametersRejected) {
  EXPECT_THROW(make_channel({ChannelType::depolarizing, 1.5}), Error);
  EXPECT_THROW(make_channel({ChannelType::bit_flip, -0.1}), Error);
  EXPECT_THROW(make_channel({ChannelType::mixed_erasure, 0.7, 0.6}), Error);
  EXPECT_THROW(make_channel({ChannelType::custom}), Error);
}

TEST(Channels, IncompleteKrausFlagged) {
  Matrix half = 0.5 * Matrix::Identity(2, 2);
  const QuantumChannel ch(2, 2, {half});
  EXPECT_FALSE(ch.is_trace_preserving());
  EXPECT_FALSE(is_cptp(ch).cptp);
}

TEST(Channels, NameParsing) {
  EXPECT_EQ(parse_channel_type("depolarizing"), ChannelType::depolarizing);
  EXPECT_EQ(parse_channel_type("classical_ideal"), ChannelType::measure_prepare);
  EXPECT_FALSE(parse_channel_type("nosuch").has_value());
}

TEST(Channels, ApplyMatchesKrausSum) {
  qt::TestRng rng(21);
  for (const auto& kind : kNamedQubitChannels) {
    const QuantumChannel ch = make_channel(kind);
    const DensityMatrix rho = random_state(rng, 2);
    EXPECT_NEAR((apply(ch, rho).matrix() - kraus_sum(ch, rho.matrix())).norm(), 0.0, 1e-14);
  }
}

TEST(Channels, DepolarizingShrinksBlochVector) {
  const QuantumChannel ch = make_channel({ChannelType::depolarizing, 0.4});
  const BlochVector out = to_bloch(apply(ch, from_bloch({0.2, -0.5, 0.7})));
  EXPECT_NEAR(out.x, 0.6 * 0.2, 1e-15);
  EXPECT_NEAR(out.y, 0.6 * -0.5, 1e-15);
  EXPECT_NEAR(out.z, 0.6 * 0.7, 1e-15);
}

TEST(Channels, AffineRepresentationReproducesOutputs) {
  qt::TestRng rng(22);
  for (int i = 0; i < 20; ++i) {
    const QuantumChannel ch = qt::random_channel(rng, 2, 2, 1 + i % 4);
    const AffineMap map = affine_representation(ch);
    const Eigen::Vector3d r = qt::random_ball_point(rng);
    const BlochVector out = to_bloch(apply(ch, from_bloch(BlochVector::from(r))));
    EXPECT_NEAR((out.vec() - map(r)).norm(), 0.0, 1e-13);
  }
}

TEST(Channels, AmplitudeDampingAffineForm) {
  const double gamma = 0.3;
  const AffineMap map = affine_representation(make_channel({ChannelType::amplitude_damping, 1.0 - gamma}));
  EXPECT_NEAR(map.A(0, 0), std::sqrt(1.0 - gamma), 1e-15);
  EXPECT_NEAR(map.A(1, 1), std::sqrt(1.0 - gamma), 1e-15);
  EXPECT_NEAR(map.A(2, 2), 1.0 - gamma, 1e-15);
  EXPECT_NEAR(std::abs(map.b.z()), gamma, 1e-15);
}

TEST(Channels, FromAffineRoundTrip) {
  AffineMap m;
  m.A = Eigen::Vector3d(0.5, 0.4, 0.3).asDiagonal();
  m.b = Eigen::Vector3d(0.0, 0.0, 0.2);
  const QuantumChannel ch = QuantumChannel::from_affine(m, "affine");
  const AffineMap back = affine_representation(ch);
  EXPECT_NEAR((back.A - m.A).norm(), 0.0, 1e-12);
  EXPECT_NEAR((back.b - m.b).norm(), 0.0, 1e-12);
}

TEST(Channels, TetrahedronCondition) {
  EXPECT_TRUE(tetrahedron_check({1, 1, 1}));
  EXPECT_TRUE(tetrahedron_check({0.5, 0.5, 0.5}));
  EXPECT_FALSE(tetrahedron_check({1, 1, 0}));
  EXPECT_FALSE(tetrahedron_check({1, 1, -1}));
  EXPECT_TRUE(tetrahedron_check({-1, -1, 1}));
}

TEST(Channels, ChoiTraceAndPositivity) {
  qt::TestRng rng(23);
  const QuantumChannel ch = qt::random_channel(rng, 2, 3, 2);
  const ChoiMatrix j = choi(ch);
  EXPECT_EQ(j.matrix.rows(), 6);
  EXPECT_NEAR(j.matrix.trace().real(), 1.0, 1e-13);
  EXPECT_GE(eigenvalues(j.matrix).back(), -1e-13);
}

TEST(Channels, SuperoperatorActsLikeChannel) {
  qt::TestRng rng(24);
  const QuantumChannel ch = qt::random_channel(rng, 2, 2, 3);
  const DensityMatrix rho = random_state(rng, 2);
  const Matrix s = superoperator(ch);
  const Matrix expect = apply(ch, rho).matrix();
  // vec() conventions differ between libraries; compare through the norm of the image
  const Vector col = Eigen::Map<const Vector>(rho.matrix().data(), 4);
  const Vector row = Eigen::Map<const Vector>(Matrix(rho.matrix().transpose()).data(), 4);
  const Vector a = s * col, b = s * row;
  const Vector ec = Eigen::Map<const Vector>(expect.data(), 4);
  const Vector er = Eigen::Map<const Vector>(Matrix(expect.transpose()).data(), 4);
  EXPECT_TRUE((a - ec).norm() < 1e-13 || (b - er).norm() < 1e-13);
}

TEST(Channels, UnitalDetection) {
  EXPECT_TRUE(is_unital(make_channel({ChannelType::depolarizing, 0.3})));
  EXPECT_TRUE(is_unital(make_channel({ChannelType::bit_flip, 0.3})));
  EXPECT_FALSE(is_unital(make_channel({ChannelType::amplitude_damping, 0.5})));
}

TEST(Channels, ComplementaryOutputsShareSpectrumWithBob) {
  qt::TestRng rng(25);
  for (int i = 0; i < 10; ++i) {
    const QuantumChannel ch = qt::random_channel(rng, 2, 2, 2);
    const QuantumChannel comp = complementary(ch);
    ASSERT_EQ(comp.dim_out(), static_cast<int>(ch.kraus().size()));
    const DensityMatrix psi(PureState(qt::random_state_vector(2, rng)));
    auto b = eigenvalues(apply(ch, psi).matrix());
    auto e = eigenvalues(apply(comp, psi).matrix());
    for (std::size_t k = 0; k < std::min(b.size(), e.size()); ++k) EXPECT_NEAR(b[k], e[k], 1e-12);
  }
}

TEST(Channels, ComposeAndTensor) {
  const QuantumChannel a = make_channel({ChannelType::depolarizing, 0.2});
  const QuantumChannel b = make_channel({ChannelType::depolarizing, 0.5});
  const AffineMap m = affine_representation(compose(a, b));
  EXPECT_NEAR(m.A(0, 0), 0.8 * 0.5, 1e-14);
  const QuantumChannel t = tensor(a, b);
  EXPECT_EQ(t.dim_in(), 4);
  EXPECT_TRUE(is_cptp(t).cptp);
  const DensityMatrix in = tensor_product(from_bloch({0, 0, 1}), from_bloch({1, 0, 0}));
  const DensityMatrix expect = tensor_product(apply(a, from_bloch({0, 0, 1})), apply(b, from_bloch({1, 0, 0})));
  EXPECT_NEAR((apply(t, in).matrix() - expect.matrix()).norm(), 0.0, 1e-14);
}

TEST(Channels, CanonicalOrderIsInvariantUnderPermutation) {
  const QuantumChannel ch = make_channel({ChannelType::depolarizing, 0.3});
  std::vector<Matrix> reversed(ch.kraus().rbegin(), ch.kraus().rend());
  const QuantumChannel a = canonical_kraus_order(ch);
  const QuantumChannel b = canonical_kraus_order(QuantumChannel(2, 2, reversed));
  ASSERT_EQ(a.kraus().size(), b.kraus().size());
  for (std::size_t k = 0; k < a.kraus().size(); ++k) EXPECT_NEAR((a.kraus()[k] - b.kraus()[k]).norm(), 0.0, 1e-15);
}

TEST(Channels, MinOutputEntropy) {
  const MinOutputEntropy dep = min_output_entropy(make_channel({ChannelType::depolarizing, 0.2}));
  EXPECT_NEAR(dep.value, qt::h2(0.1), 1e-6);
  const MinOutputEntropy ad = min_output_entropy(make_channel({ChannelType::amplitude_damping, 0.5}));
  EXPECT_NEAR(ad.value, 0.0, 1e-6);
}

TEST(Classifier, Degradability) {
  EXPECT_EQ(is_degradable(make_channel({ChannelType::dephasing, 0.2})).verdict, Verdict::yes);
  EXPECT_EQ(is_degradable(make_channel({ChannelType::amplitude_damping, 0.8})).verdict, Verdict::yes);
  EXPECT_EQ(is_degradable(make_channel({ChannelType::amplitude_damping, 0.3})).verdict, Verdict::no);
  EXPECT_EQ(to_string(Verdict::undetermined), "undetermined");
}

TEST(Classifier, DegradingMapComposesToComplement) {
  const QuantumChannel ch = make_channel({ChannelType::amplitude_damping, 0.7});
  const DegradabilityResult r = is_degradable(ch);
  ASSERT_EQ(r.verdict, Verdict::yes);
  ASSERT_TRUE(r.degrading_map);
  qt::TestRng rng(26);
  for (int i = 0; i < 5; ++i) {
    const DensityMatrix rho(PureState(qt::random_state_vector(2, rng)));
    const Matrix via = apply(*r.degrading_map, apply(ch, rho)).matrix();
    const Matrix direct = apply(complementary(ch), rho).matrix();
    EXPECT_NEAR((via - direct).norm(), 0.0, 1e-8);
  }
}

TEST(Classifier, EntanglementBreaking) {
  EXPECT_FALSE(is_entanglement_breaking(make_channel({ChannelType::identity})));
  EXPECT_TRUE(is_entanglement_breaking(make_channel({ChannelType::measure_prepare})));
  EXPECT_TRUE(is_entanglement_breaking(make_channel({ChannelType::depolarizing, 1.0})));
  EXPECT_TRUE(is_entanglement_breaking(make_channel({ChannelType::depolarizing, 2.0 / 3.0})));
  EXPECT_FALSE(is_entanglement_breaking(make_channel({ChannelType::depolarizing, 0.5})));
}

TEST(Classifier, EntanglementFidelity) {
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
  EXPECT_NEAR(entanglement_fidelity(mixed, make_channel({ChannelType::identity})), 1.0, 1e-14);
  // uniform Pauli mixture with identity weight 1 - 3p/4
  EXPECT_NEAR(entanglement_fidelity(mixed, make_channel({ChannelType::depolarizing, 0.4})), 0.7, 1e-14);
}
