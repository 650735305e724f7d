#include "isoclass/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "isoclass/errors.hpp"
#include "isoclass/prediction_set.hpp"

namespace isoclass {

PredictionSet PredictionSet::from_indices(std::size_t size,
                                          const std::vector<std::size_t>& indices) {
  PredictionSet out(size);
  for (std::size_t i : indices) out.set(i);
  return out;
}

std::size_t PredictionSet::count() const {
  return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), true));
}

std::vector<std::size_t> PredictionSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i]) out.push_back(i);
  }
  return out;
}

bool PredictionSet::is_subset_of(const PredictionSet& other) const {
  if (other.size() != size()) throw std::invalid_argument("prediction set size mismatch");
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] && !other.members_[i]) return false;
  }
  return true;
}

std::string PredictionSet::to_string() const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (std::size_t i : indices()) {
    if (!first) out << ',';
    out << i;
    first = false;
  }
  out << '}';
  return out.str();
}

namespace {

std::vector<Rational> exact_all(const std::vector<double>& values, const char* what) {
  std::vector<Rational> out;
  out.reserve(values.size());
  for (double v : values) {
    if (!std::isfinite(v)) throw ValidationError(std::string(what) + " must be finite");
    out.push_back(to_rational(v));
  }
  return out;
}

}  // namespace

DiscreteDistribution DiscreteDistribution::from_rationals(
    std::vector<Point> points, std::vector<Rational> mass, std::vector<Rational> eta,
    std::optional<std::vector<Rational>> w_plus,
    std::optional<std::vector<Rational>> w_minus) {
  DiscreteDistribution d;
  d.points_ = std::move(points);
  d.mass_ = std::move(mass);
  d.eta_ = std::move(eta);
  if (w_plus.has_value() != w_minus.has_value()) {
    throw ValidationError("w_plus and w_minus must be given together");
  }
  d.has_weights_ = w_plus.has_value();
  if (d.has_weights_) {
    d.w_plus_ = std::move(*w_plus);
    d.w_minus_ = std::move(*w_minus);
  } else {
    d.w_plus_.assign(d.points_.size(), Rational(1));
    d.w_minus_.assign(d.points_.size(), Rational(1));
  }
  for (auto* values : {&d.mass_, &d.eta_, &d.w_plus_, &d.w_minus_}) {
    for (Rational& v : *values) v.canonicalize();
  }
  d.validate_and_cache(true);
  return d;
}

DiscreteDistribution DiscreteDistribution::from_doubles(
    std::vector<Point> points, std::vector<double> mass, std::vector<double> eta,
    std::optional<std::vector<double>> w_plus, std::optional<std::vector<double>> w_minus) {
  DiscreteDistribution d;
  d.points_ = std::move(points);
  d.mass_ = exact_all(mass, "mass");
  d.eta_ = exact_all(eta, "eta");
  if (w_plus.has_value() != w_minus.has_value()) {
    throw ValidationError("w_plus and w_minus must be given together");
  }
  d.has_weights_ = w_plus.has_value();
  if (d.has_weights_) {
    d.w_plus_ = exact_all(*w_plus, "w_plus");
    d.w_minus_ = exact_all(*w_minus, "w_minus");
  } else {
    d.w_plus_.assign(d.points_.size(), Rational(1));
    d.w_minus_.assign(d.points_.size(), Rational(1));
  }
  d.validate_and_cache(false);
  return d;
}

void DiscreteDistribution::validate_and_cache(bool exact_mass) {
  const std::size_t n = points_.size();
  if (mass_.size() != n || eta_.size() != n || w_plus_.size() != n || w_minus_.size() != n) {
    throw ValidationError("distribution fields must have one entry per support point");
  }
  dim_ = n == 0 ? 0 : points_.front().size();
  std::set<Point> seen;
  for (const Point& p : points_) {
    if (p.size() != dim_) throw ValidationError("support points must share one dimension");
    for (double v : p) {
      if (!std::isfinite(v)) throw ValidationError("support coordinates must be finite");
    }
    if (!seen.insert(p).second) throw ValidationError("support points must be distinct");
  }
  Rational total(0);
  for (std::size_t i = 0; i < n; ++i) {
    if (mass_[i] < 0) throw ValidationError("masses must be nonnegative");
    if (eta_[i] < 0 || eta_[i] > 1) throw ValidationError("eta must lie in [0, 1]");
    if (w_plus_[i] < 0 || w_minus_[i] < 0) {
      throw ValidationError("conditional weights must be nonnegative");
    }
    total += mass_[i];
  }
  if (n > 0) {
    if (exact_mass) {
      if (total != 1) throw ValidationError("masses must sum to 1, got " + total.get_str());
    } else if (std::abs(to_double(total) - 1.0) > 1e-12) {
      throw ValidationError("masses must sum to 1 within 1e-12");
    }
  }
  auto to_doubles = [](const std::vector<Rational>& xs) {
    std::vector<double> out;
    out.reserve(xs.size());
    for (const Rational& x : xs) out.push_back(to_double(x));
    return out;
  };
  mass_d_ = to_doubles(mass_);
  eta_d_ = to_doubles(eta_);
  w_plus_d_ = to_doubles(w_plus_);
  w_minus_d_ = to_doubles(w_minus_);
}

WeightedSample WeightedSample::unweighted(const std::vector<int>& labels,
                                          const std::vector<Point>& covariates) {
  if (labels.size() != covariates.size()) {
    throw ValidationError("labels and covariates must have equal length");
  }
  WeightedSample out(covariates.empty() ? 0 : covariates.front().size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out.add_row(Rational(1), labels[i], covariates[i]);
  }
  return out;
}

void WeightedSample::add_row(const Rational& weight, int label, PointView x) {
  if (weight < 0) throw ValidationError("weights must be nonnegative");
  if (label != 1 && label != -1) throw ValidationError("labels must be -1 or +1");
  if (labels_.empty() && dim_ == 0) dim_ = x.size();
  if (x.size() != dim_) throw ValidationError("covariate dimension mismatch");
  for (double v : x) {
    if (!std::isfinite(v)) throw ValidationError("covariates must be finite");
  }
  weights_.push_back(weight);
  weights_.back().canonicalize();
  weights_d_.push_back(to_double(weight));
  labels_.push_back(label);
  covariates_.insert(covariates_.end(), x.begin(), x.end());
}

void WeightedSample::add_row(double weight, int label, PointView x) {
  if (!std::isfinite(weight)) throw ValidationError("weights must be finite");
  add_row(to_rational(weight), label, x);
}

Rational WeightedSample::total_weight_exact() const {
  Rational total(0);
  for (const Rational& w : weights_) total += w;
  return total;
}

}  // namespace isoclass
