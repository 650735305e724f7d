#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isoclass/distribution.hpp"
#include "isoclass/poset.hpp"
#include "isoclass/prediction_set.hpp"
#include "isoclass/rational.hpp"
#include "isoclass/surrogate_losses.hpp"

namespace isoclass {

struct CalibrationRow {
  PredictionSet set;
  Rational classification_risk;
  std::vector<double> surrogate_risks;  // one per requested loss
  std::vector<std::optional<Rational>> exact_surrogate_risks;
};

struct PairAgreement {
  std::size_t first_loss = 0;
  std::size_t second_loss = 0;
  bool agree = true;
  // Indices into rows of the first pair (a, b) with opposite orderings.
  std::optional<std::pair<std::size_t, std::size_t>> violation;
};

struct CalibrationReport {
  std::vector<LossKind> losses;
  std::vector<CalibrationRow> rows;
  std::vector<PairAgreement> pairs;

  // Looks up the agreement entry for two losses in either order.
  const PairAgreement* find_pair(const LossKind& a, const LossKind& b) const;

  // CSV `set,risk_zero_one,risk_<loss>...,risk_zero_one_exact`; zero-one is
  // not repeated when it is among the losses.
  std::string to_csv() const;
};

inline constexpr double kOrderingTieTolerance = 1e-12;

// Enumerates the up-sets of the distribution's support under the
// componentwise order and compares set-risk orderings for all loss pairs.
CalibrationReport calibration_table(const DiscreteDistribution& dist,
                                    const std::vector<LossKind>& losses,
                                    std::size_t node_limit = kDefaultNodeLimit);

// Order agreement of weighted 0-1 and weighted surrogate set risks over the
// up-sets; true iff no pair of sets is ordered oppositely.
bool weighted_orderings_agree(const DiscreteDistribution& dist,
                              const LossKind& loss,
                              std::size_t node_limit = kDefaultNodeLimit);

}  // namespace isoclass
