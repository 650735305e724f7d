#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "isoclass/surrogate_losses.hpp"
#include "oracles.hpp"

using namespace isoclass;

namespace {

std::vector<LossKind> all_losses() {
  return {LossKind::zero_one(),    LossKind::hinge(1.0), LossKind::hinge(2.5),
          LossKind::exponential(), LossKind::logistic(), LossKind::quadratic(),
          LossKind::truncated_quadratic()};
}

std::vector<LossKind> smooth_losses() {
  return {LossKind::exponential(), LossKind::logistic(), LossKind::quadratic(),
          LossKind::truncated_quadratic()};
}

}  // namespace

TEST(Phi, HingeValues) {
  EXPECT_DOUBLE_EQ(phi(LossKind::hinge(1.0), 0.3), 0.7);
  EXPECT_EQ(phi(LossKind::hinge(1.0), 2.0), 0.0);
  EXPECT_EQ(phi(LossKind::exponential(), 0.0), 1.0);
}

TEST(Phi, ZeroOneAtZeroMargin) {
  EXPECT_EQ(phi(LossKind::zero_one(), 0.0), 1.0);
  EXPECT_EQ(phi(LossKind::zero_one(), 1e-300), 0.0);
}

TEST(Phi, RejectsNonFiniteMargin) {
  EXPECT_THROW(phi(LossKind::hinge(1.0), NAN), std::domain_error);
  EXPECT_THROW(phi(LossKind::logistic(), INFINITY), std::domain_error);
}

TEST(LossKind, HingeScaleMustBePositive) {
  EXPECT_THROW(LossKind::hinge(0.0), std::domain_error);
  EXPECT_THROW(LossKind::hinge(-1.0), std::domain_error);
  EXPECT_THROW(LossKind::hinge(INFINITY), std::domain_error);
}

TEST(LossKind, ParseRoundTrip) {
  for (const LossKind& loss : all_losses()) EXPECT_EQ(LossKind::parse(loss.name()), loss);
  EXPECT_EQ(LossKind::parse("hinge:1"), LossKind::hinge(1.0));
  EXPECT_THROW(LossKind::parse("hinge:0"), std::invalid_argument);
  EXPECT_THROW(LossKind::parse("hinge:x"), std::invalid_argument);
  EXPECT_THROW(LossKind::parse("savage"), std::invalid_argument);
}

TEST(DeltaC, Examples) {
  EXPECT_NEAR(delta_c(LossKind::hinge(1.0), 0.3), 0.4, 1e-15);
  EXPECT_EQ(delta_c(LossKind::zero_one(), 0.5), 0.0);
  EXPECT_NEAR(delta_c(LossKind::exponential(), 0.2), 0.2, 1e-15);
}

TEST(DeltaC, RejectsEtaOutsideUnitInterval) {
  EXPECT_THROW(delta_c(LossKind::hinge(1.0), -0.1), std::domain_error);
  EXPECT_THROW(delta_c(LossKind::exponential(), 1.5), std::domain_error);
  EXPECT_THROW(delta_c(LossKind::logistic(), NAN), std::domain_error);
}

TEST(DeltaC, MatchesFirstPrinciplesForms) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    const double eta = u(rng);
    for (const LossKind& loss : all_losses()) {
      EXPECT_NEAR(delta_c(loss, eta), oracle::delta_c(loss, eta), 1e-12)
          << loss.name() << " eta=" << eta;
    }
  }
  for (double eta : {0.0, 1.0, 0.5}) {
    for (const LossKind& loss : all_losses()) {
      EXPECT_NEAR(delta_c(loss, eta), oracle::delta_c(loss, eta), 1e-12) << loss.name();
    }
  }
}

TEST(CPlusMinus, HingeExamples) {
  const ConditionalRisks a = c_plus_minus(LossKind::hinge(1.0), 0.8);
  EXPECT_NEAR(a.plus, 0.4, 1e-15);
  EXPECT_NEAR(a.minus, 1.0, 1e-15);
  const ConditionalRisks b = c_plus_minus(LossKind::hinge(1.0), 0.3);
  EXPECT_NEAR(b.plus, 1.0, 1e-15);
  EXPECT_NEAR(b.minus, 0.6, 1e-15);
}

TEST(CPlusMinus, TruncatedQuadraticTiesAtHalf) {
  const ConditionalRisks r = c_plus_minus(LossKind::truncated_quadratic(), 0.5);
  EXPECT_NEAR(r.plus, r.minus, 1e-12);
}

TEST(CPlusMinus, DifferenceEqualsDeltaC) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    const double eta = u(rng);
    for (const LossKind& loss : all_losses()) {
      const ConditionalRisks r = c_plus_minus(loss, eta);
      EXPECT_NEAR(r.plus - r.minus, delta_c(loss, eta), 1e-9) << loss.name() << " " << eta;
    }
  }
}

TEST(CPlusMinus, AgreesWithGridSearch) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int t = 0; t < 60; ++t) {
    const double eta = u(rng);
    for (const LossKind& loss : smooth_losses()) {
      const ConditionalRisks r = c_plus_minus(loss, eta);
      EXPECT_NEAR(r.plus, oracle::grid_min(loss, eta, 1 - eta, 0.0, 64.0), 1e-9);
      EXPECT_NEAR(r.minus, oracle::grid_min(loss, eta, 1 - eta, -64.0, 0.0), 1e-9);
      const ConditionalRisks box = c_plus_minus(loss, eta, ScoreRange::kUnitBox);
      EXPECT_NEAR(box.plus, oracle::grid_min(loss, eta, 1 - eta, 0.0, 1.0), 1e-9);
      EXPECT_NEAR(box.minus, oracle::grid_min(loss, eta, 1 - eta, -1.0, 0.0), 1e-9);
    }
  }
}

TEST(DeltaC, HingeIsScaledZeroOneExactly) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    const double eta = u(rng);
    for (double c : {1.0, 0.5, 3.0}) {
      EXPECT_EQ(delta_c(LossKind::hinge(c), eta), c * delta_c(LossKind::zero_one(), eta));
    }
  }
}

TEST(DeltaC, SmoothLossesAreNotProportionalToZeroOne) {
  for (const LossKind& loss : smooth_losses()) {
    // Fit c on eta = 0.1 and check a second point.
    const double c = delta_c(loss, 0.1) / 0.8;
    const double eta = 0.4;
    EXPECT_GT(std::abs(delta_c(loss, eta) - c * (1 - 2 * eta)), 1e-3) << loss.name();
  }
}

TEST(DeltaC, SignFollowsOneMinusTwoEta) {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    const double eta = u(rng);
    if (std::abs(eta - 0.5) < 1e-6) continue;
    for (const LossKind& loss : all_losses()) {
      const double d = delta_c(loss, eta);
      EXPECT_EQ(d > 0, eta < 0.5) << loss.name() << " " << eta;
      EXPECT_NE(d, 0.0);
    }
  }
}

TEST(DeltaCWeighted, Examples) {
  EXPECT_NEAR(delta_c_weighted(LossKind::hinge(1.0), 2.0, 1.0, 0.5), -0.5, 1e-15);
  for (double eta : {0.0, 0.2, 0.5, 0.9}) {
    EXPECT_NEAR(delta_c_weighted(LossKind::zero_one(), 1, 1, eta), 1 - 2 * eta, 1e-15);
  }
  // mu+ = mu- = 0.75.
  EXPECT_NEAR(delta_c_weighted(LossKind::exponential(), 1.5, 1.5, 0.5), 0.0, 1e-15);
}

TEST(DeltaCWeighted, RejectsNegativeWeights) {
  EXPECT_THROW(delta_c_weighted(LossKind::hinge(1.0), -1.0, 1.0, 0.5), std::domain_error);
  EXPECT_THROW(delta_c_weighted(LossKind::exponential(), 1.0, NAN, 0.5), std::domain_error);
}

TEST(DeltaCWeighted, MatchesFirstPrinciplesForms) {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> w(0.0, 4.0);
  for (int t = 0; t < 1000; ++t) {
    const double eta = u(rng), wp = w(rng), wm = w(rng);
    for (const LossKind& loss : all_losses()) {
      EXPECT_NEAR(delta_c_weighted(loss, wp, wm, eta), oracle::delta_c_weighted(loss, wp, wm, eta),
                  1e-12)
          << loss.name();
      const ConditionalRisks r = c_plus_minus_weighted(loss, wp, wm, eta);
      EXPECT_NEAR(r.plus - r.minus, delta_c_weighted(loss, wp, wm, eta), 1e-9) << loss.name();
    }
  }
}

TEST(DeltaCWeighted, UnitWeightsReduceToUnweighted) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    const double eta = u(rng);
    for (const LossKind& loss : all_losses()) {
      EXPECT_NEAR(delta_c_weighted(loss, 1, 1, eta), delta_c(loss, eta), 1e-15) << loss.name();
    }
  }
}

TEST(Calibration, BuiltinsAreCalibrated) {
  for (const LossKind& loss : all_losses()) {
    EXPECT_TRUE(is_classification_calibrated(loss)) << loss.name();
  }
}

TEST(Calibration, DerivativeTest) {
  EXPECT_FALSE(is_classification_calibrated([](double) { return 1.0; }));
  EXPECT_FALSE(is_classification_calibrated([](double a) { return a * a; }));
  EXPECT_TRUE(is_classification_calibrated([](double a) { return std::exp(-a); }));
  EXPECT_TRUE(is_classification_calibrated([](double a) { return std::max(0.0, 1 - a); }));
  // Kink at 0.
  EXPECT_FALSE(is_classification_calibrated([](double a) { return std::max(0.0, -a); }));
}
