// Copyright 2026 The damped_qubit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "damped_qubit/liouvillian.hpp"

namespace dq = damped_qubit;
using std::numbers::pi;

namespace {

double max_abs_diff(const Eigen::Matrix4d &a, const Eigen::Matrix4d &b) { return (a - b).cwiseAbs().maxCoeff(); }

// Change of basis: Pauli coefficient vector c -> projector coefficients S c.
Eigen::Matrix4d pauli_to_projector() {
  Eigen::Matrix4d S;
  S << 1, 0, 0, 1, //
      -1, 0, 0, 1, //
      0, 1, 0, 0,  //
      0, 0, 1, 0;
  return S;
}

} // namespace

TEST(GeneratorPauli, PureRotation) {
  const auto L = dq::build_generator_pauli(dq::derive_params(1.0, 0.0, 0.0));
  Eigen::Matrix4d expected;
  expected << 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0;
  EXPECT_EQ(L.entries, expected);
  EXPECT_EQ(L.kind, dq::SuperOpKind::Generator);
  EXPECT_FALSE(L.time.has_value());
}

TEST(GeneratorPauli, DampedEntries) {
  const auto L = dq::build_generator_pauli(dq::derive_params(1.0, 0.04, 0.0));
  EXPECT_EQ(L(2, 2), -0.04);
  EXPECT_EQ(L(2, 3), -0.04);
  EXPECT_EQ(L(0, 0), -0.02);
  EXPECT_EQ(L(1, 1), -0.02);
  EXPECT_TRUE(L.entries.row(3).isZero());
}

TEST(GeneratorProjector, DissipationFreeLimit) {
  const auto L = dq::build_generator_projector(dq::derive_params(1.0, 0.0, 0.0));
  EXPECT_EQ(L(0, 2), -0.5);
  EXPECT_EQ(L(1, 2), 0.5);
  EXPECT_EQ(L(0, 0), 0.0);
  EXPECT_EQ(L(2, 0), 1.0);
  EXPECT_EQ(L(2, 1), -1.0);
}

TEST(GeneratorProjector, UnitOccupationEntry) {
  const auto p = dq::derive_params(20.0, 0.01, 20.0 / std::numbers::ln2);
  const auto L = dq::build_generator_projector(p);
  EXPECT_NEAR(L(0, 0), -0.0075, 1e-15);
  EXPECT_NEAR(L(0, 1), 0.0075, 1e-15);
  EXPECT_NEAR(L(3, 3), -0.03, 1e-15);
  EXPECT_EQ(L(3, 0), -0.01);
}

TEST(GeneratorProjector, ConsistentWithPauliGeneratorUnderBasisChange) {
  // Basis operators transform as B_proj = T B_pauli with T = S^{-T}; the
  // generator transforms by similarity.
  const auto p = dq::derive_params(1.7, 0.09, 0.8);
  const Eigen::Matrix4d T = pauli_to_projector().inverse().transpose();
  const Eigen::Matrix4d mapped = T * dq::build_generator_pauli(p).entries * T.inverse();
  EXPECT_LT(max_abs_diff(mapped, dq::build_generator_projector(p).entries), 1e-14);
}

TEST(PropagatorAnalytic, IdentityAtZero) {
  for (auto basis : {dq::OperatorBasis::Pauli, dq::OperatorBasis::Projector}) {
    const auto U = dq::propagator_analytic(dq::derive_params(1.0, 0.04, 0.3), 0.0, basis);
    EXPECT_EQ(U.entries, Eigen::Matrix4d::Identity());
    EXPECT_EQ(U.time, 0.0);
  }
}

TEST(PropagatorAnalytic, FullLarmorFlip) {
  const auto U = dq::propagator_analytic(dq::derive_params(1.0, 0.0, 0.0), pi);
  EXPECT_NEAR(U(0, 0), 0.0, 1e-16);
  EXPECT_NEAR(U(1, 0), 1.0, 1e-16);
}

TEST(PropagatorAnalytic, DampedFlip) {
  const auto U = dq::propagator_analytic(dq::derive_params(1.0, 0.04, 0.0), pi);
  // (1 + exp(-0.02 pi) cos pi) / 2, mpmath
  EXPECT_NEAR(U(0, 0), 0.0304493162878536768, 1e-15);
}

TEST(PropagatorAnalytic, MatchesScipyExpm) {
  // scipy.linalg.expm of the generator, omega=1.3, gamma0=0.05, T=0.7, t=2.5
  const auto p = dq::derive_params(1.3, 0.05, 0.7);
  Eigen::Matrix4d proj;
  proj << 4.3725093202326426e-02, 9.5627490679767368e-01, 4.9658234847510967e-02, 0, //
      9.5627490679767346e-01, 4.3725093202326426e-02, -4.9658234847511057e-02, 0,    //
      -9.9316469695021906e-02, 9.9316469695021906e-02, -9.1254981359534715e-01, 0,   //
      -1.1488256074435430e-01, -1.1488256074435430e-01, 0, 8.4261092344558242e-01;
  EXPECT_LT(max_abs_diff(dq::propagator_analytic(p, 2.5).entries, proj), 1e-14);

  Eigen::Matrix4d pauli;
  pauli << -0.9125498135953471, 0.09931646969502203, 0, 0, //
      -0.09931646969502203, -0.9125498135953474, 0, 0,    //
      0, 0, 0.8426109234455824, -0.1148825607443543,      //
      0, 0, 0, 1;
  EXPECT_LT(max_abs_diff(dq::propagator_analytic(p, 2.5, dq::OperatorBasis::Pauli).entries, pauli), 1e-14);
}

TEST(PropagatorAnalytic, RejectsNegativeTime) {
  EXPECT_THROW(dq::propagator_analytic(dq::derive_params(1.0, 0.0, 0.0), -1.0), std::domain_error);
}

TEST(PropagatorAnalytic, ProbabilityAndIdentityConservation) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> w(0.1, 5.0), g(0.0, 0.5), T(0.0, 4.0), t(0.0, 50.0);
  for (int i = 0; i < 500; ++i) {
    const auto p = dq::derive_params(w(rng), g(rng), T(rng));
    const double time = t(rng);
    const auto U = dq::propagator_analytic(p, time);
    EXPECT_NEAR(U(0, 0) + U(1, 0), 1.0, 1e-15);
    EXPECT_NEAR(U(0, 1) + U(1, 1), 1.0, 1e-15);
    // I = Pi_+ + Pi_- is a fixed point of Heisenberg evolution
    const auto id = dq::evolve_operator(U, {dq::OperatorBasis::Projector, {1, 1, 0, 0}});
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(id.coeffs[k], k < 2 ? 1.0 : 0.0, 1e-15);

    const auto Up = dq::propagator_analytic(p, time, dq::OperatorBasis::Pauli);
    const auto idp = dq::evolve_operator(Up, dq::OperatorVector::pauli(0, 0, 0, 1));
    EXPECT_EQ(idp, dq::OperatorVector::pauli(0, 0, 0, 1));
  }
}

TEST(PropagatorAnalytic, SemigroupProperty) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> w(0.1, 5.0), g(0.0, 0.5), T(0.0, 4.0), t(0.0, 20.0);
  for (int i = 0; i < 300; ++i) {
    const auto p = dq::derive_params(w(rng), g(rng), T(rng));
    const double t1 = t(rng), t2 = t(rng);
    for (auto basis : {dq::OperatorBasis::Pauli, dq::OperatorBasis::Projector}) {
      const auto composed = dq::compose(dq::propagator_analytic(p, t2, basis), dq::propagator_analytic(p, t1, basis));
      EXPECT_NEAR(*composed.time, t1 + t2, 1e-14);
      EXPECT_LT(max_abs_diff(composed.entries, dq::propagator_analytic(p, t1 + t2, basis).entries), 1e-9);
    }
  }
}

TEST(PropagatorAnalytic, ComposeRejectsMixedBases) {
  const auto p = dq::derive_params(1.0, 0.1, 0.0);
  EXPECT_THROW(dq::compose(dq::propagator_analytic(p, 1.0, dq::OperatorBasis::Pauli), dq::propagator_analytic(p, 1.0)),
               std::invalid_argument);
  EXPECT_THROW(dq::compose(dq::build_generator_pauli(p), dq::propagator_analytic(p, 1.0, dq::OperatorBasis::Pauli)),
               std::invalid_argument);
}

TEST(PropagatorNumeric, IdentityAtZero) {
  const auto U = dq::propagator_numeric(dq::build_generator_pauli(dq::derive_params(1.0, 0.1, 0.0)), 0.0);
  EXPECT_EQ(U.entries, Eigen::Matrix4d::Identity());
  EXPECT_EQ(U.kind, dq::SuperOpKind::Propagator);
}

TEST(PropagatorNumeric, RejectsPropagatorInput) {
  const auto p = dq::derive_params(1.0, 0.1, 0.0);
  EXPECT_THROW(dq::propagator_numeric(dq::propagator_analytic(p, 1.0), 1.0), std::invalid_argument);
}

TEST(PropagatorNumeric, MatchesAnalyticAtUnitTime) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> w(0.1, 5.0), g(0.0, 0.5), T(0.0, 4.0);
  for (int i = 0; i < 50; ++i) {
    const auto p = dq::derive_params(w(rng), g(rng), T(rng));
    for (auto basis : {dq::OperatorBasis::Pauli, dq::OperatorBasis::Projector}) {
      const auto numeric = dq::propagator_numeric(dq::build_generator(p, basis), 1.0);
      EXPECT_LT(max_abs_diff(numeric.entries, dq::propagator_analytic(p, 1.0, basis).entries), 1e-9);
    }
  }
}

TEST(PropagatorNumeric, OracleGridOverDampingRatios) {
  // gamma/omega in {0, 0.01, 0.1, 1} (T = 0), ten Larmor periods
  for (double ratio : {0.0, 0.01, 0.1, 1.0}) {
    const auto p = dq::derive_params(1.0, ratio, 0.0);
    std::vector<double> times;
    for (int i = 0; i <= 100; ++i) times.push_back(20.0 * pi * i / 100.0);
    for (auto basis : {dq::OperatorBasis::Pauli, dq::OperatorBasis::Projector}) {
      const auto numeric = dq::propagator_numeric(dq::build_generator(p, basis), times);
      ASSERT_EQ(numeric.size(), times.size());
      for (std::size_t k = 0; k < times.size(); ++k)
        EXPECT_LT(max_abs_diff(numeric[k].entries, dq::propagator_analytic(p, times[k], basis).entries), 1e-9)
            << "ratio " << ratio << " t " << times[k];
    }
  }
}

TEST(PropagatorNumeric, SeriesAgreesWithSinglePoint) {
  const auto L = dq::build_generator_projector(dq::derive_params(2.0, 0.2, 1.0));
  const std::vector<double> times{0.0, 0.3, 1.7, 4.0};
  const auto series = dq::propagator_numeric(L, times);
  for (std::size_t k = 0; k < times.size(); ++k)
    EXPECT_LT(max_abs_diff(series[k].entries, dq::propagator_numeric(L, times[k]).entries), 1e-12);
  const std::vector<double> backwards{1.0, 0.5};
  EXPECT_THROW(dq::propagator_numeric(L, backwards), std::domain_error);
}

TEST(PropagatorNumeric, UndampedRotationBlockIsOrthogonal) {
  const auto L = dq::build_generator_pauli(dq::derive_params(1.3, 0.0, 0.0));
  for (double t : {0.4, 3.0, 17.0}) {
    const Eigen::Matrix2d R = dq::propagator_numeric(L, t).entries.topLeftCorner<2, 2>();
    EXPECT_NEAR(R.determinant(), 1.0, 1e-10);
    EXPECT_LT((R.transpose() * R - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(PropagatorNumeric, SemigroupProperty) {
  const auto p = dq::derive_params(1.0, 0.1, 0.5);
  const auto L = dq::build_generator_projector(p);
  const auto composed = dq::compose(dq::propagator_numeric(L, 2.2), dq::propagator_numeric(L, 3.1));
  EXPECT_LT(max_abs_diff(composed.entries, dq::propagator_numeric(L, 5.3).entries), 1e-9);
}

TEST(EvolveExpectations, QuarterLarmorRotation) {
  const auto s = dq::evolve_expectations(dq::derive_params(2.0, 0.0, 0.0), {1, 0, 0}, pi / 4.0);
  EXPECT_NEAR(s.x, 0.0, 1e-15);
  EXPECT_NEAR(s.y, 1.0, 1e-15);
  EXPECT_NEAR(s.z, 0.0, 1e-15);
}

TEST(EvolveExpectations, CoherenceEnvelope) {
  const auto p = dq::derive_params(1.0, 0.04, 0.5);
  for (double t : {0.0, 0.7, 5.0, 33.0, 120.0}) {
    const auto s = dq::evolve_expectations(p, dq::maximally_coherent_state(), t);
    EXPECT_NEAR(std::hypot(s.x, s.y), std::exp(-p.gamma * t / 2.0), 1e-15);
  }
}

TEST(EvolveExpectations, RelaxesToNegativeGammaRatio) {
  // fixed point of dz/dt = -gamma z - gamma0
  const auto cold = dq::derive_params(1.0, 0.3, 0.0);
  EXPECT_NEAR(dq::evolve_expectations(cold, {0, 0, 1}, 500.0).z, -1.0, 1e-12);
  const auto warm = dq::derive_params(1.0, 0.3, 2.0);
  const auto s = dq::evolve_expectations(warm, {0, 0, 1}, 2000.0);
  EXPECT_NEAR(s.z, -warm.gamma0 / warm.gamma, 1e-12);
}

TEST(EvolveExpectations, MatchesScipyExpm) {
  const auto s = dq::evolve_expectations(dq::derive_params(1.3, 0.05, 0.7), {0.3, -0.2, 0.5}, 2.5);
  EXPECT_NEAR(s.x, -0.2936282380176085, 1e-14);
  EXPECT_NEAR(s.y, 0.1527150218105629, 1e-14);
  EXPECT_NEAR(s.z, 0.30642290097843694, 1e-14);
}

TEST(EvolveExpectations, RejectsUnphysicalStateAndWrongBasis) {
  const auto p = dq::derive_params(1.0, 0.1, 0.0);
  EXPECT_THROW(dq::evolve_expectations(p, {1.0, 1.0, 0.0}, 1.0), std::domain_error);
  EXPECT_THROW(dq::evolve_expectations(dq::propagator_analytic(p, 1.0), {1, 0, 0}), std::invalid_argument);
}

TEST(EvolveExpectations, MapsBlochBallIntoItself) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-1.0, 1.0), w(0.1, 5.0), g(0.0, 0.5), T(0.0, 4.0), t(0.0, 30.0);
  int tested = 0;
  while (tested < 2000) {
    const dq::BlochState s{u(rng), u(rng), u(rng)};
    if (s.norm() > 1.0) continue;
    ++tested;
    const auto p = dq::derive_params(w(rng), g(rng), T(rng));
    EXPECT_LE(dq::evolve_expectations(p, s, t(rng)).norm(), 1.0 + 1e-12);
  }
}
