#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "isoclass/distribution.hpp"
#include "isoclass/isotone.hpp"
#include "isoclass/point.hpp"
#include "isoclass/poset.hpp"

namespace isoclass {

inline constexpr int kMaxBernsteinOrder = 500;
inline constexpr std::size_t kMaxBernsteinIndices = 1'000'000;

// b_{kj}(x) = C(k, j) x^j (1 - x)^{k - j}.
double bernstein_basis(int order, int index, double x);

// All k + 1 basis values at x.
std::vector<double> bernstein_basis_all(int order, double x);

// Affine map of raw covariates into the unit cube; identity by default.
struct CubeScaling {
  std::vector<double> min;
  std::vector<double> max;

  static CubeScaling identity(std::size_t dim);
  static CubeScaling fit(const WeightedSample& sample);
  Point apply(PointView x) const;
  bool is_identity() const;
};

// Tensor-product Bernstein polynomial with lattice-monotone coefficients in
// [-1, 1], stored row-major over multi-indices (last coordinate fastest).
class BernsteinClassifier {
 public:
  BernsteinClassifier(std::vector<int> orders, std::vector<double> theta,
                      std::optional<CubeScaling> scaling = std::nullopt);

  std::size_t dim() const { return orders_.size(); }
  const std::vector<int>& orders() const { return orders_; }
  const std::vector<double>& theta() const { return theta_; }
  const CubeScaling& scaling() const { return scaling_; }
  bool binarized() const;

  // Raw covariates are mapped through the scaling; coordinates still outside
  // [0, 1] are clamped and a warning is emitted once per process.
  double evaluate(PointView x) const;
  int predict(PointView x) const;

  BernsteinClassifier with_scaling(CubeScaling scaling) const;

 private:
  std::vector<int> orders_;
  std::vector<double> theta_;
  CubeScaling scaling_;
};

std::size_t lattice_size(const std::vector<int>& orders);

// Design coefficients c_j = sum_i w_i Y_i prod_v b_{k_v j_v}(X_iv).
std::vector<double> bernstein_coefficients(const WeightedSample& sample,
                                           const std::vector<int>& orders);

IsotoneProblem bernstein_problem(const WeightedSample& sample,
                                 const std::vector<int>& orders);

// Hinge LP over lattice-monotone theta; covariates must lie in [0, 1]^d.
BernsteinClassifier fit_bernstein(const WeightedSample& sample,
                                  const std::vector<int>& orders);

// theta_j -> sign(theta_j) with sign(0) = +1.
BernsteinClassifier binarize(const BernsteinClassifier& model);

// theta lattice-monotone and inside [-1, 1].
bool is_lattice_monotone(const std::vector<int>& orders,
                         const std::vector<double>& theta);

// Uniform order k with sqrt(log k / k) <= rate(n, d); see README.
std::vector<int> suggest_orders(std::size_t n, std::size_t dim);

// log(n)/sqrt(n) for d = 1, n^{-1/d} otherwise.
double bernstein_rate(std::size_t n, std::size_t dim);

}  // namespace isoclass
