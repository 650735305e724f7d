#pragma once

#include <cstddef>
#include <vector>

#include "isoclass/distribution.hpp"
#include "isoclass/isotone.hpp"
#include "isoclass/point.hpp"
#include "isoclass/poset.hpp"

namespace isoclass {

// Monotone nondecreasing classifier known at its (sorted, distinct) training
// support. Values are the +/-1 extreme-point solution of the hinge LP.
class MonotoneClassifier {
 public:
  // Throws ValidationError if values are not +/-1 or violate monotonicity.
  MonotoneClassifier(DominanceDag dag, std::vector<int> values);

  std::size_t dim() const { return dag_.dim(); }
  std::size_t support_size() const { return dag_.size(); }
  const std::vector<Point>& support() const { return dag_.nodes(); }
  const std::vector<int>& values() const { return values_; }
  const DominanceDag& dag() const { return dag_; }

  // sign(min{f(s) : s in support, s >= x}) if such s exists, else +1.
  int predict(PointView x) const;

  // Minimal elements of the +1 up-set and maximal elements of the -1
  // down-set; predict() depends only on the latter.
  std::vector<std::size_t> positive_minimal() const;
  const std::vector<std::size_t>& negative_maximal() const {
    return negative_frontier_;
  }

  // Same predictor restricted to the two frontiers.
  MonotoneClassifier compact() const;

 private:
  DominanceDag dag_;
  std::vector<int> values_;
  std::vector<std::size_t> negative_frontier_;
};

// Aggregated LP for a sample: distinct covariate points (lexicographically
// sorted) with coefficient sum_{i : X_i = x} w_i Y_i.
IsotoneProblem monotone_problem(const WeightedSample& sample);

// Minimizes the empirical weighted hinge risk over monotone classifiers.
MonotoneClassifier fit_monotone(const WeightedSample& sample);

}  // namespace isoclass
