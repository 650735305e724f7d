#pragma once

#include <span>

#include "isoclass/distribution.hpp"
#include "isoclass/prediction_set.hpp"
#include "isoclass/rational.hpp"
#include "isoclass/surrogate_losses.hpp"

namespace isoclass {

// sign(a) = 1{a >= 0} - 1{a < 0}.
inline int sign_label(double value) { return value >= 0.0 ? 1 : -1; }

// G_f = {i : f_i >= 0}.
PredictionSet prediction_set_of(std::span<const double> scores);
PredictionSet prediction_set_of(std::span<const Rational> scores);

// R(G) = sum_x [eta 1{x not in G} + (1 - eta) 1{x in G}] P(x).
double classification_risk_at_set(const DiscreteDistribution& dist,
                                  const PredictionSet& g);
Rational classification_risk_at_set_exact(const DiscreteDistribution& dist,
                                          const PredictionSet& g);

// R_phi(G) = sum_x [Delta C_phi(eta) 1{x in G} + C_phi^-(eta)] P(x).
double surrogate_risk_at_set(const DiscreteDistribution& dist,
                             const PredictionSet& g, const LossKind& loss,
                             ScoreRange range = ScoreRange::kHalfLine);

// Exact hinge set risk: c * sum [(1 - 2 eta) 1{G} + 2 eta] P. Zero-one loss is
// also accepted and returns the classification risk.
Rational surrogate_risk_at_set_exact(const DiscreteDistribution& dist,
                                     const PredictionSet& g,
                                     const LossKind& loss);

// Surrogate risk of the step classifier 1{G} - 1{G^c}; for the hinge loss
// this is exactly 2 c R(G).
double step_surrogate_risk_at_set(const DiscreteDistribution& dist,
                                  const PredictionSet& g, const LossKind& loss);
Rational step_hinge_risk_at_set_exact(const DiscreteDistribution& dist,
                                      const PredictionSet& g,
                                      const Rational& scale);

// R^w(G) = sum [L(w+, w-, eta) 1{x in G} + w+ eta] P with
// L = -w+ eta + w- (1 - eta).
double weighted_risk_at_set(const DiscreteDistribution& dist,
                            const PredictionSet& g);
Rational weighted_risk_at_set_exact(const DiscreteDistribution& dist,
                                    const PredictionSet& g);

// Weighted surrogate set risk sum [Delta C^w 1{G} + C^{w,-}] P.
double weighted_surrogate_risk_at_set(const DiscreteDistribution& dist,
                                      const PredictionSet& g,
                                      const LossKind& loss);
Rational weighted_surrogate_risk_at_set_exact(const DiscreteDistribution& dist,
                                              const PredictionSet& g,
                                              const LossKind& loss);

// Population risks of a pointwise classifier f over the support.
double classification_risk(const DiscreteDistribution& dist,
                           std::span<const double> scores);
double surrogate_risk(const DiscreteDistribution& dist,
                      std::span<const double> scores, const LossKind& loss);
// Exact hinge risk of scores in [-1, 1]: c * sum [1 - (2 eta - 1) f] P.
Rational hinge_risk_exact(const DiscreteDistribution& dist,
                          std::span<const Rational> scores,
                          const Rational& scale);

// Empirical risk (1/n) sum w_i phi(Y_i f_i); for zero-one,
// (1/n) sum w_i 1{Y_i sign(f_i) <= 0}. Hinge requires f_i in [-1, 1].
double empirical_risk(std::span<const double> scores,
                      const WeightedSample& sample, const LossKind& loss);
// Exact path for zero-one and hinge losses.
Rational empirical_risk_exact(std::span<const Rational> scores,
                              const WeightedSample& sample,
                              const LossKind& loss);

}  // namespace isoclass
