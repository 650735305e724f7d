#pragma once

#include <string>
#include <vector>

#include "isoclass/distribution.hpp"
#include "isoclass/prediction_set.hpp"
#include "isoclass/rational.hpp"
#include "isoclass/surrogate_losses.hpp"

namespace isoclass {

// Uniform law on {0, 1, 2} with the given P(Y = +1 | X = x).
DiscreteDistribution three_point_distribution(const Rational& eta0,
                                              const Rational& eta1,
                                              const Rational& eta2);

// eta = (0.9, 0.3, 0.2): the monotone-constrained optimum is the empty set.
DiscreteDistribution first_example_distribution();
// eta = (0.6, 0.2, 0.8): the linear-class example.
DiscreteDistribution second_example_distribution();

struct SurrogateArgmin {
  LossKind loss;
  PredictionSet argmin;
  double surrogate_risk = 0.0;
  Rational classification_risk;  // R(G) at the argmin
};

struct FirstExampleResult {
  std::vector<PredictionSet> sets;
  PredictionSet constrained_optimum;
  Rational optimal_risk;
  std::vector<SurrogateArgmin> by_loss;  // zero-one, hinge, exp, tquad
};

FirstExampleResult reproduce_example_1();

// f(x) = intercept + slope * x.
struct LinearScore {
  Rational intercept;
  Rational slope;
};

struct LinearHingeFit {
  std::vector<LinearScore> vertices;  // feasible polytope vertices
  LinearScore optimum;
  Rational hinge_risk;
  PredictionSet prediction_set;
  Rational classification_risk;
};

// Hinge-risk minimization (c = 1) over {a + b x : b >= 0, |a + b x| <= 1 on
// the support} for a one-dimensional distribution, by exact vertex
// enumeration. Ties go to the lexicographically smallest (a, b).
LinearHingeFit fit_linear_hinge(const DiscreteDistribution& dist);

struct SecondExampleResult {
  std::vector<PredictionSet> sets;
  PredictionSet constrained_optimum;
  Rational optimal_risk;
  LinearHingeFit linear;
};

SecondExampleResult reproduce_example_2();

// Human-readable report of both reproductions (exact and rounded values).
std::string format_examples_report(const FirstExampleResult& first,
                                   const SecondExampleResult& second);

}  // namespace isoclass
