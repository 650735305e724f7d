#include "isoclass/regret.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "isoclass/bernstein.hpp"
#include "isoclass/errors.hpp"
#include "isoclass/monotone_fit.hpp"

namespace isoclass {

namespace {

double mean_of(PointView x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

int bayes_label(const RegretConfig& config, PointView x) {
  return dgp_eta(config, x) > 0.5 ? 1 : -1;
}

// Nondecreasing score on [0, 1]; returns t with {score >= 0} = [t, 1].
template <typename Score>
double crossing_point(Score score) {
  if (score(0.0) >= 0.0) return 0.0;
  if (score(1.0) < 0.0) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (score(mid) >= 0.0 ? hi : lo) = mid;
  }
  return hi;
}

WeightedSample draw_sample(const RegretConfig& config, std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  WeightedSample sample(config.dim);
  Point x(config.dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (double& v : x) v = unif(rng);
    const int y = unif(rng) < dgp_eta(config, x) ? 1 : -1;
    sample.add_row(Rational(1), y, x);
  }
  return sample;
}

struct Task {
  std::size_t point;
  std::size_t n;
  std::size_t rep;
};

}  // namespace

double dgp_eta(const RegretConfig& config, PointView x) {
  const double m = mean_of(x);
  return config.dgp == DgpKind::kStep ? (m >= 0.5 ? 0.75 : 0.25) : m;
}

double dgp_optimal_risk(const RegretConfig& config) {
  if (config.dgp == DgpKind::kStep) return 0.25;
  // E min(m, 1 - m) = 1/2 - E|m - 1/2| with m = S / d, S Irwin-Hall.
  const std::size_t d = config.dim;
  const double c = static_cast<double>(d) / 2.0;
  double tail = 0.0;  // E (c - S)_+ = int_0^c F_S(t) dt
  double binom = 1.0;
  double fact = 1.0;
  for (std::size_t k = 1; k <= d + 1; ++k) fact *= static_cast<double>(k);
  for (std::size_t k = 0; static_cast<double>(k) <= c; ++k) {
    const double term = binom * std::pow(c - static_cast<double>(k), static_cast<double>(d + 1));
    tail += (k % 2 == 0 ? term : -term);
    binom = binom * static_cast<double>(d - k) / static_cast<double>(k + 1);
  }
  tail /= fact;
  return 0.5 - 2.0 * tail / static_cast<double>(d);
}

double dgp_interval_risk(const RegretConfig& config, double threshold) {
  if (config.dim != 1) throw ValidationError("interval risk is defined for d = 1");
  const double t = std::clamp(threshold, 0.0, 1.0);
  if (config.dgp == DgpKind::kStep) return 0.25 + 0.5 * std::abs(t - 0.5);
  return 0.25 + (t - 0.5) * (t - 0.5);
}

void validate(const RegretConfig& config) {
  if (config.dim == 0) throw ValidationError("dimension must be >= 1");
  if (config.dim > 1 && config.mc_points == 0) {
    throw ValidationError("mc_points must be >= 1 for d >= 2");
  }
  if (!config.orders.empty()) {
    if (config.estimator != Estimator::kBernstein) {
      throw ValidationError("orders apply to the Bernstein estimator only");
    }
    if (config.orders.size() != config.dim) {
      throw ValidationError("expected " + std::to_string(config.dim) + " orders, got " +
                            std::to_string(config.orders.size()));
    }
    for (int k : config.orders) {
      if (k < 1 || k > kMaxBernsteinOrder) {
        throw ValidationError("Bernstein orders must lie in [1, " +
                              std::to_string(kMaxBernsteinOrder) + "]");
      }
    }
    if (lattice_size(config.orders) > kMaxBernsteinIndices) {
      throw SizeLimitError("Bernstein lattice exceeds " + std::to_string(kMaxBernsteinIndices) +
                           " indices");
    }
  }
}

std::vector<Point> halton_points(std::size_t count, std::size_t dim) {
  std::vector<unsigned> primes;
  for (unsigned c = 2; primes.size() < dim; ++c) {
    bool prime = true;
    for (unsigned p : primes) {
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  std::vector<Point> out(count, Point(dim));
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t v = 0; v < dim; ++v) {
      const double base = primes[v];
      double f = 1.0;
      double r = 0.0;
      for (std::size_t k = i + 1; k > 0; k /= primes[v]) {
        f /= base;
        r += f * static_cast<double>(k % primes[v]);
      }
      out[i][v] = r;
    }
  }
  return out;
}

std::size_t resolve_thread_count(std::size_t requested) {
  std::size_t count = requested;
  if (count == 0) count = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ISOCLASS_THREADS")) {
    char* end = nullptr;
    const long long cap = std::strtoll(env, &end, 10);
    if (end != env && cap > 0) count = std::min(count, static_cast<std::size_t>(cap));
  }
  return std::max<std::size_t>(count, 1);
}

RegretCurve simulate_regret(const RegretConfig& config, const std::vector<std::size_t>& ns,
                            std::size_t reps, std::uint64_t seed) {
  validate(config);
  if (ns.empty()) throw ValidationError("at least one sample size is required");
  if (reps == 0) throw ValidationError("reps must be >= 1");
  for (std::size_t n : ns) {
    if (n == 0) throw ValidationError("sample sizes must be >= 1");
  }

  RegretCurve curve;
  curve.seed = seed;
  curve.exact = config.dim == 1;
  const std::vector<Point> grid =
      curve.exact ? std::vector<Point>{} : halton_points(config.mc_points, config.dim);
  const double optimum = dgp_optimal_risk(config);

  auto regret_of = [&](const std::function<int(PointView)>& predict,
                       const std::function<double(double)>& score_1d) {
    if (curve.exact) return dgp_interval_risk(config, crossing_point(score_1d)) - optimum;
    double loss = 0.0;
    for (const Point& x : grid) {
      if (predict(x) != bayes_label(config, x)) loss += std::abs(2.0 * dgp_eta(config, x) - 1.0);
    }
    return loss / static_cast<double>(grid.size());
  };

  auto run_one = [&](std::size_t n, std::size_t rep) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n >> 32),
                      static_cast<std::uint32_t>(rep), static_cast<std::uint32_t>(rep >> 32)};
    std::mt19937_64 rng(seq);
    const WeightedSample sample = draw_sample(config, n, rng);
    if (config.estimator == Estimator::kMonotone) {
      const MonotoneClassifier model = fit_monotone(sample);
      return regret_of([&](PointView x) { return model.predict(x); },
                       [&](double x) { return static_cast<double>(model.predict(PointView(&x, 1))); });
    }
    const std::vector<int> orders =
        config.orders.empty() ? suggest_orders(n, config.dim) : config.orders;
    const BernsteinClassifier model = fit_bernstein(sample, orders);
    return regret_of([&](PointView x) { return model.predict(x); },
                     [&](double x) { return model.evaluate(PointView(&x, 1)); });
  };

  std::vector<Task> tasks;
  for (std::size_t p = 0; p < ns.size(); ++p) {
    for (std::size_t r = 0; r < reps; ++r) tasks.push_back({p, ns[p], r});
  }
  std::vector<std::vector<double>> regrets(ns.size(), std::vector<double>(reps, 0.0));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        regrets[tasks[i].point][tasks[i].rep] = run_one(tasks[i].n, tasks[i].rep);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };
  const std::size_t threads = std::min(resolve_thread_count(config.threads), tasks.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  for (std::size_t p = 0; p < ns.size(); ++p) {
    RegretPoint point;
    point.n = ns[p];
    point.reps = reps;
    point.regrets = std::move(regrets[p]);
    const double mean =
        std::accumulate(point.regrets.begin(), point.regrets.end(), 0.0) / static_cast<double>(reps);
    double ss = 0.0;
    for (double r : point.regrets) {
      ss += (r - mean) * (r - mean);
      point.any_negative = point.any_negative || r < 0.0;
    }
    point.mean_regret = mean;
    point.standard_error =
        reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1) / static_cast<double>(reps)) : 0.0;
    curve.points.push_back(std::move(point));
  }
  return curve;
}

std::string RegretCurve::to_csv() const {
  std::ostringstream out;
  out << "n,mean_regret,se,reps\n";
  char buf[96];
  for (const RegretPoint& p : points) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%zu\n", p.n, p.mean_regret, p.standard_error,
                  p.reps);
    out << buf;
  }
  return out.str();
}

}  // namespace isoclass
