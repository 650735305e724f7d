#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "isoclass/point.hpp"

namespace isoclass {

enum class DgpKind {
  kStep,    // eta = 0.25 + 0.5 * 1{mean(x) >= 0.5}
  kLinear,  // eta = mean(x)
};

enum class Estimator { kMonotone, kBernstein };

struct RegretConfig {
  DgpKind dgp = DgpKind::kStep;
  std::size_t dim = 1;
  Estimator estimator = Estimator::kMonotone;
  std::vector<int> orders;  // Bernstein only; empty = suggest_orders(n, d)
  std::size_t mc_points = 100'000;
  std::size_t threads = 0;  // 0 = auto, capped by ISOCLASS_THREADS
};

// eta(x) for the configured DGP; X ~ U[0,1]^d.
double dgp_eta(const RegretConfig& config, PointView x);

// min over monotone prediction sets of R(G), which equals the Bayes risk for
// both DGPs (their eta is monotone).
double dgp_optimal_risk(const RegretConfig& config);

// Exact R((t, 1]) for d = 1.
double dgp_interval_risk(const RegretConfig& config, double threshold);

struct RegretPoint {
  std::size_t n = 0;
  double mean_regret = 0.0;
  double standard_error = 0.0;
  std::size_t reps = 0;
  bool any_negative = false;
  std::vector<double> regrets;  // raw, one per replication
};

struct RegretCurve {
  std::vector<RegretPoint> points;
  std::uint64_t seed = 0;
  bool exact = false;  // exact integration vs quasi-Monte Carlo

  std::string to_csv() const;  // n,mean_regret,se,reps
};

// Validates the config; throws ValidationError.
void validate(const RegretConfig& config);

// Replication r at size n draws from a generator seeded by (seed, n, r),
// so the curve does not depend on thread scheduling.
RegretCurve simulate_regret(const RegretConfig& config,
                            const std::vector<std::size_t>& ns,
                            std::size_t reps, std::uint64_t seed);

// Halton points in [0,1]^d (bases 2, 3, 5, ...), skipping index 0.
std::vector<Point> halton_points(std::size_t count, std::size_t dim);

// Worker count: requested (0 = hardware concurrency) capped by
// ISOCLASS_THREADS when set to a positive value.
std::size_t resolve_thread_count(std::size_t requested);

}  // namespace isoclass
