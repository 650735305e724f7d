#include "isoclass/risk.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "isoclass/errors.hpp"

namespace isoclass {

namespace {

void require_conformal(const DiscreteDistribution& dist, const PredictionSet& g) {
  if (g.size() != dist.size()) {
    throw ValidationError("prediction set has " + std::to_string(g.size()) +
                          " flags but the distribution has " +
                          std::to_string(dist.size()) + " support points");
  }
}

void require_scores(std::size_t scores, std::size_t support) {
  if (scores != support) {
    throw ValidationError("expected one score per support point");
  }
}

Rational exact_scale(const LossKind& loss) {
  switch (loss.family()) {
    case LossFamily::kHinge: return to_rational(loss.scale());
    case LossFamily::kZeroOne: return Rational(1);
    default:
      throw std::invalid_argument("exact risks are available for zero-one and hinge only, not " +
                                  loss.name());
  }
}

}  // namespace

PredictionSet prediction_set_of(std::span<const double> scores) {
  PredictionSet out(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) out.set(i, scores[i] >= 0.0);
  return out;
}

PredictionSet prediction_set_of(std::span<const Rational> scores) {
  PredictionSet out(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) out.set(i, scores[i] >= 0);
  return out;
}

double classification_risk_at_set(const DiscreteDistribution& dist, const PredictionSet& g) {
  require_conformal(dist, g);
  double risk = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double eta = dist.eta(i);
    risk += (g.contains(i) ? 1.0 - eta : eta) * dist.mass(i);
  }
  return risk;
}

Rational classification_risk_at_set_exact(const DiscreteDistribution& dist,
                                          const PredictionSet& g) {
  require_conformal(dist, g);
  Rational risk(0);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const Rational& eta = dist.eta_exact(i);
    risk += (g.contains(i) ? Rational(1 - eta) : eta) * dist.mass_exact(i);
  }
  return risk;
}

double surrogate_risk_at_set(const DiscreteDistribution& dist, const PredictionSet& g,
                             const LossKind& loss, ScoreRange range) {
  require_conformal(dist, g);
  double risk = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const ConditionalRisks c = c_plus_minus(loss, dist.eta(i), range);
    risk += (g.contains(i) ? c.plus : c.minus) * dist.mass(i);
  }
  return risk;
}

Rational surrogate_risk_at_set_exact(const DiscreteDistribution& dist,
                                     const PredictionSet& g, const LossKind& loss) {
  require_conformal(dist, g);
  if (loss.family() == LossFamily::kZeroOne) return classification_risk_at_set_exact(dist, g);
  const Rational c = exact_scale(loss);
  const Rational half(1, 2);
  Rational risk(0);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const Rational& eta = dist.eta_exact(i);
    Rational value;
    if (g.contains(i)) {
      value = eta > half ? Rational(2 * c * (1 - eta)) : c;
    } else {
      value = eta > half ? c : Rational(2 * c * eta);
    }
    risk += value * dist.mass_exact(i);
  }
  return risk;
}

double step_surrogate_risk_at_set(const DiscreteDistribution& dist, const PredictionSet& g,
                                  const LossKind& loss) {
  require_conformal(dist, g);
  double risk = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double f = g.contains(i) ? 1.0 : -1.0;
    risk += conditional_risk(loss, f, dist.eta(i)) * dist.mass(i);
  }
  return risk;
}

Rational step_hinge_risk_at_set_exact(const DiscreteDistribution& dist,
                                      const PredictionSet& g, const Rational& scale) {
  require_conformal(dist, g);
  Rational risk(0);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const Rational& eta = dist.eta_exact(i);
    risk += 2 * scale * (g.contains(i) ? Rational(1 - eta) : eta) * dist.mass_exact(i);
  }
  return risk;
}

double weighted_risk_at_set(const DiscreteDistribution& dist, const PredictionSet& g) {
  require_conformal(dist, g);
  double risk = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double mu_plus = dist.w_plus(i) * dist.eta(i);
    const double mu_minus = dist.w_minus(i) * (1.0 - dist.eta(i));
    risk += ((g.contains(i) ? -mu_plus + mu_minus : 0.0) + mu_plus) * dist.mass(i);
  }
  return risk;
}

Rational weighted_risk_at_set_exact(const DiscreteDistribution& dist, const PredictionSet& g) {
  require_conformal(dist, g);
  Rational risk(0);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const Rational mu_plus = dist.w_plus_exact(i) * dist.eta_exact(i);
    const Rational mu_minus = dist.w_minus_exact(i) * (1 - dist.eta_exact(i));
    risk += (g.contains(i) ? mu_minus : mu_plus) * dist.mass_exact(i);
  }
  return risk;
}

double weighted_surrogate_risk_at_set(const DiscreteDistribution& dist,
                                      const PredictionSet& g, const LossKind& loss) {
  require_conformal(dist, g);
  double risk = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const ConditionalRisks c =
        c_plus_minus_weighted(loss, dist.w_plus(i), dist.w_minus(i), dist.eta(i));
    risk += (g.contains(i) ? c.plus : c.minus) * dist.mass(i);
  }
  return risk;
}

Rational weighted_surrogate_risk_at_set_exact(const DiscreteDistribution& dist,
                                              const PredictionSet& g,
                                              const LossKind& loss) {
  require_conformal(dist, g);
  if (loss.family() == LossFamily::kZeroOne) return weighted_risk_at_set_exact(dist, g);
  const Rational c = exact_scale(loss);
  Rational risk(0);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const Rational mu_plus = dist.w_plus_exact(i) * dist.eta_exact(i);
    const Rational mu_minus = dist.w_minus_exact(i) * (1 - dist.eta_exact(i));
    const Rational both = c * (mu_plus + mu_minus);
    Rational value;
    if (g.contains(i)) {
      value = mu_plus > mu_minus ? Rational(2 * c * mu_minus) : both;
    } else {
      value = mu_plus <= mu_minus ? Rational(2 * c * mu_plus) : both;
    }
    risk += value * dist.mass_exact(i);
  }
  return risk;
}

double classification_risk(const DiscreteDistribution& dist, std::span<const double> scores) {
  require_scores(scores.size(), dist.size());
  return classification_risk_at_set(dist, prediction_set_of(scores));
}

double surrogate_risk(const DiscreteDistribution& dist, std::span<const double> scores,
                      const LossKind& loss) {
  require_scores(scores.size(), dist.size());
  double risk = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    risk += conditional_risk(loss, scores[i], dist.eta(i)) * dist.mass(i);
  }
  return risk;
}

Rational hinge_risk_exact(const DiscreteDistribution& dist, std::span<const Rational> scores,
                          const Rational& scale) {
  require_scores(scores.size(), dist.size());
  Rational risk(0);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const Rational& f = scores[i];
    if (f < -1 || f > 1) throw ValidationError("hinge scores must lie in [-1, 1]");
    risk += scale * (1 - (2 * dist.eta_exact(i) - 1) * f) * dist.mass_exact(i);
  }
  return risk;
}

double empirical_risk(std::span<const double> scores, const WeightedSample& sample,
                      const LossKind& loss) {
  if (sample.empty()) throw ValidationError("empty sample");
  require_scores(scores.size(), sample.size());
  double total = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = scores[i];
    if (!std::isfinite(f)) throw std::domain_error("scores must be finite");
    const int y = sample.label(i);
    double loss_value;
    if (loss.family() == LossFamily::kZeroOne) {
      loss_value = y * sign_label(f) <= 0 ? 1.0 : 0.0;
    } else {
      if (loss.family() == LossFamily::kHinge && (f < -1.0 || f > 1.0)) {
        throw ValidationError("hinge scores must lie in [-1, 1]");
      }
      loss_value = phi(loss, y * f);
    }
    total += sample.weight(i) * loss_value;
  }
  return total / static_cast<double>(sample.size());
}

Rational empirical_risk_exact(std::span<const Rational> scores, const WeightedSample& sample,
                              const LossKind& loss) {
  if (sample.empty()) throw ValidationError("empty sample");
  require_scores(scores.size(), sample.size());
  const Rational c = exact_scale(loss);
  Rational total(0);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const Rational& f = scores[i];
    const int y = sample.label(i);
    if (loss.family() == LossFamily::kZeroOne) {
      const int predicted = f >= 0 ? 1 : -1;
      if (y * predicted <= 0) total += sample.weight_exact(i);
    } else {
      if (f < -1 || f > 1) throw ValidationError("hinge scores must lie in [-1, 1]");
      total += sample.weight_exact(i) * c * (1 - y * f);
    }
  }
  return total / static_cast<long>(sample.size());
}

}  // namespace isoclass
