#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "isoclass/point.hpp"
#include "isoclass/rational.hpp"

namespace isoclass {

// Finite-support law of (X, Y) and optional conditional weights
// w+(x) = E[w | X=x, Y=+1], w-(x) = E[w | X=x, Y=-1]. Exact rationals are the
// source of truth; binary64 copies are kept for the floating-point paths.
class DiscreteDistribution {
 public:
  // Masses must sum to exactly 1.
  static DiscreteDistribution from_rationals(
      std::vector<Point> points, std::vector<Rational> mass,
      std::vector<Rational> eta,
      std::optional<std::vector<Rational>> w_plus = std::nullopt,
      std::optional<std::vector<Rational>> w_minus = std::nullopt);

  // Masses must sum to 1 within 1e-12; values are converted exactly.
  static DiscreteDistribution from_doubles(
      std::vector<Point> points, std::vector<double> mass,
      std::vector<double> eta,
      std::optional<std::vector<double>> w_plus = std::nullopt,
      std::optional<std::vector<double>> w_minus = std::nullopt);

  std::size_t size() const { return points_.size(); }
  std::size_t dim() const { return dim_; }

  const std::vector<Point>& points() const { return points_; }
  const Point& point(std::size_t i) const { return points_.at(i); }

  const Rational& mass_exact(std::size_t i) const { return mass_.at(i); }
  const Rational& eta_exact(std::size_t i) const { return eta_.at(i); }
  const Rational& w_plus_exact(std::size_t i) const { return w_plus_.at(i); }
  const Rational& w_minus_exact(std::size_t i) const { return w_minus_.at(i); }

  double mass(std::size_t i) const { return mass_d_.at(i); }
  double eta(std::size_t i) const { return eta_d_.at(i); }
  double w_plus(std::size_t i) const { return w_plus_d_.at(i); }
  double w_minus(std::size_t i) const { return w_minus_d_.at(i); }

  bool has_weights() const { return has_weights_; }

 private:
  DiscreteDistribution() = default;
  void validate_and_cache(bool exact_mass);

  std::size_t dim_ = 0;
  std::vector<Point> points_;
  std::vector<Rational> mass_, eta_, w_plus_, w_minus_;
  std::vector<double> mass_d_, eta_d_, w_plus_d_, w_minus_d_;
  bool has_weights_ = false;
};

// Rows (w_i, Y_i, X_i) with w_i >= 0 and Y_i in {-1, +1}. Unweighted data is
// w == 1. Weights are stored exactly; doubles are derived.
class WeightedSample {
 public:
  WeightedSample() = default;
  explicit WeightedSample(std::size_t dim) : dim_(dim) {}

  // Unit weights.
  static WeightedSample unweighted(const std::vector<int>& labels,
                                   const std::vector<Point>& covariates);

  void add_row(const Rational& weight, int label, PointView x);
  void add_row(double weight, int label, PointView x);

  std::size_t size() const { return labels_.size(); }
  std::size_t dim() const { return dim_; }
  bool empty() const { return labels_.empty(); }

  double weight(std::size_t i) const { return weights_d_.at(i); }
  const Rational& weight_exact(std::size_t i) const { return weights_.at(i); }
  int label(std::size_t i) const { return labels_.at(i); }
  PointView x(std::size_t i) const {
    return PointView(covariates_).subspan(i * dim_, dim_);
  }

  Rational total_weight_exact() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Rational> weights_;
  std::vector<double> weights_d_;
  std::vector<int> labels_;
  std::vector<double> covariates_;
};

}  // namespace isoclass
