#include <cmath>

#include <gtest/gtest.h>

#include "qcap/capacity.hpp"
#include "qcap/error.hpp"
#include "support.hpp"

using namespace qcap;
namespace qt = qcap::testing;

TEST(Hsw, IdentityCarriesOneBit) {
  const CapacityReport r = hsw_numeric(make_channel({ChannelType::identity}));
  EXPECT_NEAR(*r.C_hsw, 1.0, 1e-9);
  ASSERT_TRUE(r.optimal_ensemble);
  EXPECT_NEAR(holevo_of_outputs(make_channel({ChannelType::identity}), *r.optimal_ensemble), *r.chi, 1e-9);
}

TEST(Hsw, BitFlipAndBsc) {
  for (double p : {0.05, 0.2, 0.35}) {
    // X eigenstates pass the bit flip untouched
    EXPECT_NEAR(*hsw_numeric(make_channel({ChannelType::bit_flip, p})).C_hsw, 1.0, 1e-9);
    EXPECT_NEAR(*hsw_numeric(make_channel({ChannelType::bsc, p})).C_hsw, 1.0 - qt::h2(p), 1e-6);
  }
}

TEST(Hsw, QutritIdentity) {
  EXPECT_NEAR(*hsw_numeric(make_channel({ChannelType::identity, 0.0, 0.0, 3})).C_hsw, std::log2(3.0), 1e-6);
}

TEST(Hsw, ReproducibleForFixedSeed) {
  OptimizerConfig cfg;
  cfg.seed = 17;
  qt::TestRng rng(5);
  const QuantumChannel ch = qt::random_channel(rng, 2, 2, 3);
  EXPECT_EQ(*hsw_numeric(ch, cfg).C_hsw, *hsw_numeric(ch, cfg).C_hsw);
}

TEST(Hsw, InvalidConfigRejected) {
  OptimizerConfig cfg;
  cfg.max_inputs = 1;
  try {
    hsw_numeric(make_channel({ChannelType::identity}), cfg);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
  }
}

TEST(Hsw, NonCptpRejected) {
  EXPECT_THROW(hsw_numeric(QuantumChannel(2, 2, {0.5 * Matrix::Identity(2, 2)})), Error);
}

TEST(Geometric, CertificateForUnitalChannel) {
  const CapacityReport r = hsw_geometric(make_channel({ChannelType::depolarizing, 0.3}));
  ASSERT_TRUE(r.certificate);
  EXPECT_TRUE(r.certificate->ok);
  ASSERT_TRUE(r.certificate->centred);
  EXPECT_TRUE(*r.certificate->centred);
  EXPECT_NEAR(*r.r_star, 1.0 - qt::h2(0.15), 1e-6);
}

TEST(Geometric, QutritUnsupported) {
  try {
    hsw_geometric(make_channel({ChannelType::identity, 0.0, 0.0, 3}));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Unsupported);
  }
}

TEST(Geometric, AgreesWithNumericOnRandomChannels) {
  qt::TestRng rng(31);
  for (int i = 0; i < 5; ++i) {
    const QuantumChannel ch = qt::random_channel(rng, 2, 2, 2 + i % 3);
    EXPECT_NEAR(*hsw_geometric(ch).r_star, *hsw_numeric(ch).C_hsw, 1e-3);
  }
}

TEST(QuantumCapacity, DephasingIsOneMinusH2) {
  for (double p : {0.0, 0.1, 0.3}) {
    EXPECT_NEAR(*quantum_capacity_single_use(make_channel({ChannelType::dephasing, p})).Q1, 1.0 - qt::h2(p), 1e-6);
  }
}

TEST(QuantumCapacity, EntanglementBreakingHasNone) {
  const CapacityReport r = quantum_capacity_single_use(make_channel({ChannelType::depolarizing, 0.8}));
  EXPECT_NEAR(*r.Q1, 0.0, 1e-9);
  EXPECT_LE(*r.Q1_raw, 1e-9);
}

TEST(QuantumCapacity, DepolarizingMatchesHashingBound) {
  // maximally mixed input is optimal for the qubit depolarizing channel
  const double p = 0.1;
  const double f = 1.0 - 3.0 * p / 4.0;
  const std::vector<double> bell{f, p / 4, p / 4, p / 4};
  EXPECT_NEAR(*quantum_capacity_single_use(make_channel({ChannelType::depolarizing, p})).Q1,
              1.0 - shannon_entropy(bell), 1e-6);
}

TEST(EntanglementAssisted, ClosedForms) {
  EXPECT_NEAR(*entanglement_assisted(make_channel({ChannelType::identity})).C_E, 2.0, 1e-6);
  const double p = 0.3;
  EXPECT_NEAR(*entanglement_assisted(make_channel({ChannelType::erasure, p})).C_E, 2.0 * (1.0 - p), 1e-6);
  const double f = 1.0 - 3.0 * p / 4.0;
  const std::vector<double> bell{f, p / 4, p / 4, p / 4};
  EXPECT_NEAR(*entanglement_assisted(make_channel({ChannelType::depolarizing, p})).C_E, 2.0 - shannon_entropy(bell),
              1e-6);
}

TEST(Ordering, OnNamedChannels) {
  for (const ChannelKind& k : {ChannelKind{ChannelType::amplitude_damping, 0.7}, ChannelKind{ChannelType::bit_flip, 0.1},
                               ChannelKind{ChannelType::depolarizing, 0.2}}) {
    const QuantumChannel ch = make_channel(k);
    const double c = *hsw_numeric(ch).C_hsw;
    const double q = *quantum_capacity_single_use(ch).Q1;
    const double p = *private_information(ch).P1;
    const double ce = *entanglement_assisted(ch).C_E;
    EXPECT_LE(q, p + 1e-6);
    EXPECT_LE(p, c + 1e-6);
    EXPECT_LE(c, ce + 1e-6);
  }
}

TEST(Private, DegradableChannelEqualsCoherentInformation) {
  const QuantumChannel ch = make_channel({ChannelType::dephasing, 0.1});
  EXPECT_NEAR(*private_information(ch).P1, *quantum_capacity_single_use(ch).Q1, 1e-5);
}

TEST(Analytic, ClosedForms) {
  const CapacityReport e = analytic_capacity({ChannelType::erasure, 0.3});
  EXPECT_NEAR(*e.C_hsw, 0.7, 1e-15);
  EXPECT_NEAR(*e.Q1, 0.4, 1e-15);
  const CapacityReport d = analytic_capacity({ChannelType::depolarizing, 0.2});
  EXPECT_NEAR(*d.C_hsw, 1.0 - qt::h2(0.1), 1e-15);
  const CapacityReport b = analytic_capacity({ChannelType::bsc, 0.2});
  EXPECT_NEAR(*b.C_hsw, 1.0 - qt::h2(0.2), 1e-15);
  EXPECT_THROW(analytic_capacity({ChannelType::pancake}), Error);
}

TEST(Analytic, AmplitudeDampingQuantumCapacity) {
  EXPECT_NEAR(amplitude_damping_quantum_capacity(0.0), 1.0, 1e-9);
  EXPECT_EQ(amplitude_damping_quantum_capacity(0.5), 0.0);
  EXPECT_EQ(amplitude_damping_quantum_capacity(0.9), 0.0);
  double prev = 1.0;
  for (double g = 0.05; g < 0.5; g += 0.05) {
    const double q = amplitude_damping_quantum_capacity(g);
    EXPECT_LT(q, prev);
    prev = q;
  }
}

TEST(Report, MergeKeepsExistingFields) {
  CapacityReport a, b;
  a.chi = 0.5;
  b.chi = 0.7;
  b.Q1 = 0.1;
  a.merge(b);
  EXPECT_EQ(*a.chi, 0.5);
  EXPECT_EQ(*a.Q1, 0.1);
}
