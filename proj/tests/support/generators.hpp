#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "isoclass/distribution.hpp"
#include "isoclass/isotone.hpp"
#include "isoclass/policy.hpp"
#include "isoclass/poset.hpp"

namespace gen {

using Rng = std::mt19937_64;

std::size_t uniform_int(Rng& rng, std::size_t lo, std::size_t hi);
double uniform(Rng& rng, double lo = 0.0, double hi = 1.0);

// n distinct points in d dims with integer coordinates in [0, levels).
std::vector<isoclass::Point> distinct_grid_points(Rng& rng, std::size_t n, std::size_t d,
                                                  int levels = 4);

// Random rational in [lo, hi] with denominator den.
isoclass::Rational rational(Rng& rng, long lo, long hi, long den);

// Finite distribution with rational masses and eta (denominators <= 60),
// optional weights w+/w- in [0, 3].
isoclass::DiscreteDistribution distribution(Rng& rng, std::size_t n, std::size_t d,
                                            bool weighted = false);

// Isotone problem over random distinct points with rational coefficients.
isoclass::IsotoneProblem isotone_problem(Rng& rng, std::size_t n, std::size_t d);

// n rows on a coarse grid (duplicates likely), random labels and weights.
isoclass::WeightedSample sample(Rng& rng, std::size_t n, std::size_t d, bool weighted,
                                int levels = 3);

// Rows with covariates in [0, 1]^d and labels from a monotone eta.
isoclass::WeightedSample cube_sample(Rng& rng, std::size_t n, std::size_t d);

std::vector<isoclass::TrialRecord> trials(Rng& rng, std::size_t n, std::size_t d);

}  // namespace gen
