#include "isoclass/bernstein.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>

#include "isoclass/errors.hpp"

namespace isoclass {

namespace {

void require_order(int order) {
  if (order < 1 || order > kMaxBernsteinOrder) {
    throw ValidationError("Bernstein orders must lie in [1, " +
                          std::to_string(kMaxBernsteinOrder) + "], got " +
                          std::to_string(order));
  }
}

void require_orders(const std::vector<int>& orders) {
  if (orders.empty()) throw ValidationError("Bernstein model needs at least one dimension");
  for (int k : orders) require_order(k);
  if (lattice_size(orders) > kMaxBernsteinIndices) {
    throw ValidationError("Bernstein lattice exceeds " + std::to_string(kMaxBernsteinIndices) +
                          " coefficients");
  }
}

std::vector<std::size_t> strides_of(const std::vector<int>& orders) {
  std::vector<std::size_t> strides(orders.size(), 1);
  for (std::size_t v = orders.size(); v-- > 1;) {
    strides[v - 1] = strides[v] * (static_cast<std::size_t>(orders[v]) + 1);
  }
  return strides;
}

// Sum over the lattice of weight(flat) * prod_v basis[v][j_v], visiting
// indices in row-major order.
template <class F>
void for_each_tensor_term(const std::vector<std::vector<double>>& basis, F&& visit) {
  const std::size_t d = basis.size();
  std::vector<std::size_t> index(d, 0);
  // prefix[v] = prod_{u < v} basis[u][index[u]]
  std::vector<double> prefix(d + 1, 1.0);
  for (std::size_t v = 0; v < d; ++v) prefix[v + 1] = prefix[v] * basis[v][0];
  std::size_t flat = 0;
  while (true) {
    visit(flat, prefix[d]);
    ++flat;
    std::size_t v = d;
    while (v > 0) {
      --v;
      if (++index[v] < basis[v].size()) break;
      index[v] = 0;
      if (v == 0) return;
    }
    if (index[v] == 0) return;
    for (std::size_t u = v; u < d; ++u) prefix[u + 1] = prefix[u] * basis[u][index[u]];
  }
}

std::atomic<bool> g_clamp_warned{false};

}  // namespace

double bernstein_basis(int order, int index, double x) {
  if (order < 0 || order > kMaxBernsteinOrder) throw std::domain_error("order out of range");
  if (index < 0 || index > order) throw std::domain_error("basis index out of range");
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("Bernstein basis needs x in [0, 1]");
  double binom = 1.0;
  for (int i = 1; i <= index; ++i) binom = binom * (order - index + i) / i;
  return binom * std::pow(x, index) * std::pow(1.0 - x, order - index);
}

std::vector<double> bernstein_basis_all(int order, double x) {
  if (order < 0 || order > kMaxBernsteinOrder) throw std::domain_error("order out of range");
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("Bernstein basis needs x in [0, 1]");
  std::vector<double> out(static_cast<std::size_t>(order) + 1);
  double binom = 1.0;
  for (int j = 0; j <= order; ++j) {
    out[j] = binom * std::pow(x, j) * std::pow(1.0 - x, order - j);
    binom = binom * (order - j) / (j + 1);
  }
  return out;
}

CubeScaling CubeScaling::identity(std::size_t dim) {
  return CubeScaling{std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0)};
}

CubeScaling CubeScaling::fit(const WeightedSample& sample) {
  if (sample.empty()) throw ValidationError("cannot fit a scaling to an empty sample");
  CubeScaling out = identity(sample.dim());
  for (std::size_t v = 0; v < sample.dim(); ++v) {
    double lo = sample.x(0)[v];
    double hi = lo;
    for (std::size_t i = 1; i < sample.size(); ++i) {
      lo = std::min(lo, sample.x(i)[v]);
      hi = std::max(hi, sample.x(i)[v]);
    }
    out.min[v] = lo;
    out.max[v] = hi > lo ? hi : lo + 1.0;
  }
  return out;
}

Point CubeScaling::apply(PointView x) const {
  if (x.size() != min.size()) throw std::invalid_argument("scaling dimension mismatch");
  Point out(x.size());
  for (std::size_t v = 0; v < x.size(); ++v) out[v] = (x[v] - min[v]) / (max[v] - min[v]);
  return out;
}

bool CubeScaling::is_identity() const {
  return std::all_of(min.begin(), min.end(), [](double v) { return v == 0.0; }) &&
         std::all_of(max.begin(), max.end(), [](double v) { return v == 1.0; });
}

std::size_t lattice_size(const std::vector<int>& orders) {
  std::size_t total = 1;
  for (int k : orders) {
    if (k < 0) throw ValidationError("orders must be nonnegative");
    total *= static_cast<std::size_t>(k) + 1;
    if (total > 10 * kMaxBernsteinIndices) return total;
  }
  return total;
}

bool is_lattice_monotone(const std::vector<int>& orders, const std::vector<double>& theta) {
  if (theta.size() != lattice_size(orders)) return false;
  for (double t : theta) {
    if (!(t >= -1.0 && t <= 1.0)) return false;
  }
  const auto strides = strides_of(orders);
  for (std::size_t flat = 0; flat < theta.size(); ++flat) {
    for (std::size_t v = 0; v < orders.size(); ++v) {
      const std::size_t digit = (flat / strides[v]) % (static_cast<std::size_t>(orders[v]) + 1);
      if (digit < static_cast<std::size_t>(orders[v]) && theta[flat] > theta[flat + strides[v]]) {
        return false;
      }
    }
  }
  return true;
}

BernsteinClassifier::BernsteinClassifier(std::vector<int> orders, std::vector<double> theta,
                                         std::optional<CubeScaling> scaling)
    : orders_(std::move(orders)), theta_(std::move(theta)) {
  require_orders(orders_);
  if (theta_.size() != lattice_size(orders_)) {
    throw ValidationError("theta has " + std::to_string(theta_.size()) + " entries, lattice has " +
                          std::to_string(lattice_size(orders_)));
  }
  if (!is_lattice_monotone(orders_, theta_)) {
    throw ValidationError("theta must lie in [-1, 1] and be lattice-monotone");
  }
  scaling_ = scaling ? std::move(*scaling) : CubeScaling::identity(orders_.size());
  if (scaling_.min.size() != orders_.size() || scaling_.max.size() != orders_.size()) {
    throw ValidationError("scaling dimension does not match the orders");
  }
  for (std::size_t v = 0; v < orders_.size(); ++v) {
    if (!(scaling_.max[v] > scaling_.min[v])) throw ValidationError("scaling needs max > min");
  }
}

bool BernsteinClassifier::binarized() const {
  return std::all_of(theta_.begin(), theta_.end(), [](double t) { return t == 1.0 || t == -1.0; });
}

double BernsteinClassifier::evaluate(PointView x) const {
  if (x.size() != dim()) {
    throw std::invalid_argument("point has dimension " + std::to_string(x.size()) +
                                ", model expects " + std::to_string(dim()));
  }
  Point unit = scaling_.apply(x);
  bool clamped = false;
  for (double& u : unit) {
    if (std::isnan(u)) throw std::domain_error("cannot evaluate at NaN");
    if (u < 0.0 || u > 1.0) {
      u = std::clamp(u, 0.0, 1.0);
      clamped = true;
    }
  }
  if (clamped && !g_clamp_warned.exchange(true)) {
    std::clog << "warning: covariates outside the unit cube were clamped\n";
  }
  std::vector<std::vector<double>> basis;
  basis.reserve(dim());
  for (std::size_t v = 0; v < dim(); ++v) basis.push_back(bernstein_basis_all(orders_[v], unit[v]));
  double value = 0.0;
  for_each_tensor_term(basis, [&](std::size_t flat, double b) { value += theta_[flat] * b; });
  return std::clamp(value, -1.0, 1.0);
}

int BernsteinClassifier::predict(PointView x) const { return evaluate(x) >= 0.0 ? 1 : -1; }

BernsteinClassifier BernsteinClassifier::with_scaling(CubeScaling scaling) const {
  return BernsteinClassifier(orders_, theta_, std::move(scaling));
}

std::vector<double> bernstein_coefficients(const WeightedSample& sample,
                                           const std::vector<int>& orders) {
  require_orders(orders);
  if (sample.empty()) throw ValidationError("cannot fit an empty sample");
  if (sample.dim() != orders.size()) {
    throw ValidationError("sample has dimension " + std::to_string(sample.dim()) + " but " +
                          std::to_string(orders.size()) + " orders were given");
  }
  std::vector<double> coeffs(lattice_size(orders), 0.0);
  std::vector<std::vector<double>> basis(orders.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const PointView x = sample.x(i);
    for (std::size_t v = 0; v < orders.size(); ++v) {
      if (!(x[v] >= 0.0 && x[v] <= 1.0)) {
        throw ValidationError("row " + std::to_string(i + 1) +
                              ": covariates must lie in [0, 1]; rescale them first "
                              "(the CLI offers --rescale)");
      }
      basis[v] = bernstein_basis_all(orders[v], x[v]);
    }
    const double scale = sample.weight(i) * sample.label(i);
    if (scale == 0.0) continue;
    for_each_tensor_term(basis, [&](std::size_t flat, double b) { coeffs[flat] += scale * b; });
  }
  return coeffs;
}

IsotoneProblem bernstein_problem(const WeightedSample& sample, const std::vector<int>& orders) {
  const std::vector<double> coeffs = bernstein_coefficients(sample, orders);
  IsotoneProblem problem{DominanceDag::lattice(orders), {}};
  problem.coeffs.reserve(coeffs.size());
  for (double c : coeffs) problem.coeffs.push_back(to_rational(c));
  return problem;
}

BernsteinClassifier fit_bernstein(const WeightedSample& sample, const std::vector<int>& orders) {
  const IsotoneSolution solution = solve(bernstein_problem(sample, orders));
  std::vector<double> theta(solution.values.begin(), solution.values.end());
  return BernsteinClassifier(orders, std::move(theta));
}

BernsteinClassifier binarize(const BernsteinClassifier& model) {
  std::vector<double> theta = model.theta();
  for (double& t : theta) t = t >= 0.0 ? 1.0 : -1.0;
  return BernsteinClassifier(model.orders(), std::move(theta), model.scaling());
}

double bernstein_rate(std::size_t n, std::size_t dim) {
  if (n < 2) throw ValidationError("sample size must be at least 2");
  if (dim < 1) throw ValidationError("dimension must be at least 1");
  const double nn = static_cast<double>(n);
  if (dim == 1) return std::log(nn) / std::sqrt(nn);
  return std::pow(nn, -1.0 / static_cast<double>(dim));
}

std::vector<int> suggest_orders(std::size_t n, std::size_t dim) {
  if (n < 2) throw ValidationError("sample size must be at least 2");
  // log(n)/sqrt(n) rises until n = e^2; use its nonincreasing envelope so the
  // suggestion never shrinks as n grows.
  const double rate = bernstein_rate(dim == 1 ? std::max<std::size_t>(n, 7) : n, dim);
  int cap = kMaxBernsteinOrder;
  while (cap > 1 && std::pow(cap + 1.0, static_cast<double>(dim)) >
                        static_cast<double>(kMaxBernsteinIndices)) {
    --cap;
  }
  int k = 1;
  // sqrt(log k / k) peaks at k = e with value e^{-1/2} and decreases after.
  if (rate < std::exp(-0.5)) {
    k = cap;
    for (int candidate = 3; candidate <= cap; ++candidate) {
      if (std::sqrt(std::log(candidate) / candidate) <= rate) {
        k = candidate;
        break;
      }
    }
  }
  return std::vector<int>(dim, std::min(k, cap));
}

}  // namespace isoclass
