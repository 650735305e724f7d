#include "isoclass/monotone_fit.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "isoclass/errors.hpp"

namespace isoclass {

MonotoneClassifier::MonotoneClassifier(DominanceDag dag, std::vector<int> values)
    : dag_(std::move(dag)), values_(std::move(values)) {
  if (values_.size() != dag_.size()) {
    throw ValidationError("monotone model needs one value per support point");
  }
  for (int v : values_) {
    if (v != 1 && v != -1) throw ValidationError("monotone model values must be -1 or +1");
  }
  for (const auto& [from, to] : dag_.cover_edges()) {
    if (values_[from] > values_[to]) {
      throw ValidationError("monotone model values decrease along the partial order");
    }
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != -1) continue;
    const auto& succ = dag_.successors(i);
    if (std::all_of(succ.begin(), succ.end(), [&](std::size_t j) { return values_[j] == 1; })) {
      negative_frontier_.push_back(i);
    }
  }
}

int MonotoneClassifier::predict(PointView x) const {
  if (x.size() != dim()) {
    throw std::invalid_argument("point has dimension " + std::to_string(x.size()) +
                                ", model expects " + std::to_string(dim()));
  }
  // The minimum over dominating support points is -1 exactly when some
  // maximal -1 point dominates x.
  for (std::size_t i : negative_frontier_) {
    if (dominates(x, dag_.node(i))) return -1;
  }
  return 1;
}

std::vector<std::size_t> MonotoneClassifier::positive_minimal() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != 1) continue;
    const auto& pred = dag_.predecessors(i);
    if (std::all_of(pred.begin(), pred.end(), [&](std::size_t j) { return values_[j] == -1; })) {
      out.push_back(i);
    }
  }
  return out;
}

MonotoneClassifier MonotoneClassifier::compact() const {
  std::vector<std::size_t> keep = negative_frontier_;
  const std::vector<std::size_t> positive = positive_minimal();
  keep.insert(keep.end(), positive.begin(), positive.end());
  std::sort(keep.begin(), keep.end(),
            [&](std::size_t a, std::size_t b) { return dag_.node(a) < dag_.node(b); });
  std::vector<Point> points;
  std::vector<int> values;
  for (std::size_t i : keep) {
    points.push_back(dag_.node(i));
    values.push_back(values_[i]);
  }
  return MonotoneClassifier(DominanceDag::build(std::move(points)), std::move(values));
}

IsotoneProblem monotone_problem(const WeightedSample& sample) {
  if (sample.empty()) throw ValidationError("cannot fit an empty sample");
  std::map<Point, Rational> aggregated;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const PointView x = sample.x(i);
    Rational& c = aggregated[Point(x.begin(), x.end())];
    if (sample.label(i) > 0) {
      c += sample.weight_exact(i);
    } else {
      c -= sample.weight_exact(i);
    }
  }
  std::vector<Point> points;
  std::vector<Rational> coeffs;
  points.reserve(aggregated.size());
  coeffs.reserve(aggregated.size());
  for (auto& [point, c] : aggregated) {
    points.push_back(point);
    coeffs.push_back(c);
  }
  return IsotoneProblem{DominanceDag::build(std::move(points)), std::move(coeffs)};
}

MonotoneClassifier fit_monotone(const WeightedSample& sample) {
  IsotoneProblem problem = monotone_problem(sample);
  IsotoneSolution solution = solve(problem);
  return MonotoneClassifier(std::move(problem.dag), std::move(solution.values));
}

}  // namespace isoclass
