#pragma once

#include <functional>
#include <span>
#include <vector>

#include "isoclass/distribution.hpp"
#include "isoclass/point.hpp"

namespace isoclass {

inline constexpr double kDefaultOverlap = 0.01;

struct TrialRecord {
  double outcome = 0.0;   // z
  int treatment = 1;      // d in {-1, +1}
  Point covariates;       // x
  double propensity = 0.5;  // e(x) = P(D = +1 | X = x)
};

using Policy = std::function<int(PointView)>;

// d e + (1 - d) / 2, i.e. e for treated rows and 1 - e for controls.
double assignment_probability(const TrialRecord& record);

// Throws ValidationError listing every row with e outside (kappa, 1 - kappa),
// e outside (0, 1), non-finite z, or d not in {-1, +1}.
void validate_records(std::span<const TrialRecord> records, double kappa);

// w_i = |z_i| / (d_i e_i + (1 - d_i)/2), Y_i = sign(z_i) d_i.
WeightedSample to_weighted_sample(std::span<const TrialRecord> records,
                                  double kappa = kDefaultOverlap);

// (1/n) sum z_i / (d_i e_i + (1 - d_i)/2) 1{d_i = policy(x_i)}.
double welfare_estimate(const Policy& policy,
                        std::span<const TrialRecord> records);

// (1/n) sum max{0, z_i / (d_i e_i + (1 - d_i)/2)}: welfare plus weighted
// misclassification risk equals this for every policy.
double welfare_constant(std::span<const TrialRecord> records);

// max |z| / kappa, the certified bound on the weights.
double max_weight_bound(std::span<const TrialRecord> records, double kappa);

}  // namespace isoclass
