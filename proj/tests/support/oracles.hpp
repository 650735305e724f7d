#pragma once

#include <cstddef>
#include <vector>

#include "isoclass/point.hpp"
#include "isoclass/prediction_set.hpp"
#include "isoclass/rational.hpp"
#include "isoclass/surrogate_losses.hpp"

// Reference implementations that share no code paths with the library.
namespace oracle {

bool leq(const isoclass::Point& a, const isoclass::Point& b);

// Every subset of the points closed upward under componentwise <=, by
// exhaustive subset scan (ascending bitmask order).
std::vector<isoclass::PredictionSet> up_sets(const std::vector<isoclass::Point>& points);

struct IsotoneOptimum {
  std::vector<int> values;
  isoclass::Rational objective;
};

// Scans all of {-1, 1}^n; monotonicity is checked on every comparable pair.
// Ties go to the larger +1 set (unique since optimal sets are union-closed).
IsotoneOptimum isotone(const std::vector<isoclass::Point>& points,
                       const std::vector<isoclass::Rational>& coeffs);

// inf of eta*phi(f) + (1-eta)*phi(-f) over f in [lo, hi] by coarse grid plus
// two refinement passes.
double grid_min(const isoclass::LossKind& loss, double mu_plus, double mu_minus,
                double lo, double hi);

// Closed-form Delta C from first principles (conditional minimizers).
double delta_c(const isoclass::LossKind& loss, double eta);
double delta_c_weighted(const isoclass::LossKind& loss, double w_plus, double w_minus,
                        double eta);

// Hinge risk c * sum mass * [eta max(0, 1 - f) + (1 - eta) max(0, 1 + f)].
double hinge_risk(const std::vector<double>& mass, const std::vector<double>& eta,
                  const std::vector<double>& scores, double c);
double zero_one_risk(const std::vector<double>& mass, const std::vector<double>& eta,
                     const std::vector<double>& scores);

double binomial(int n, int k);

}  // namespace oracle
