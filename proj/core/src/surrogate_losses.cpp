#include "isoclass/surrogate_losses.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace isoclass {

namespace {

constexpr double kHalfLineBound = 64.0;
constexpr double kGoldenTolerance = 1e-12;

void require_probability(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::domain_error("eta must lie in [0, 1], got " + std::to_string(eta));
  }
}

void require_weight(double w, const char* what) {
  if (!std::isfinite(w) || w < 0.0) {
    throw std::domain_error(std::string(what) + " must be finite and nonnegative");
  }
}

std::string shortest(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

// x log x with 0 log 0 = 0.
double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

template <class F>
double golden_min(F&& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 400 && (b - a) > kGoldenTolerance; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return std::min({f(0.5 * (a + b)), fc, fd, f(lo), f(hi)});
}

// mu_plus * phi(f) + mu_minus * phi(-f) for generic margins.
double weighted_conditional(const LossKind& loss, double score, double mu_plus,
                            double mu_minus) {
  double out = 0.0;
  if (mu_plus != 0.0) out += mu_plus * phi(loss, score);
  if (mu_minus != 0.0) out += mu_minus * phi(loss, -score);
  return out;
}

ConditionalRisks conditional_pair(const LossKind& loss, double mu_plus,
                                  double mu_minus, ScoreRange range) {
  const double c = loss.scale();
  switch (loss.family()) {
    case LossFamily::kZeroOne:
      // f > 0 errs on negatives; f < 0 errs on positives.
      return {mu_minus, mu_plus};
    case LossFamily::kHinge: {
      const double both = c * (mu_plus + mu_minus);
      return {mu_plus > mu_minus ? 2.0 * c * mu_minus : both,
              mu_plus <= mu_minus ? 2.0 * c * mu_plus : both};
    }
    default:
      break;
  }
  const double bound = range == ScoreRange::kHalfLine ? kHalfLineBound : 1.0;
  auto objective = [&](double f) {
    return weighted_conditional(loss, f, mu_plus, mu_minus);
  };
  return {golden_min(objective, 0.0, bound), golden_min(objective, -bound, 0.0)};
}

}  // namespace

LossKind LossKind::hinge(double scale) {
  if (!std::isfinite(scale) || scale <= 0.0) {
    throw std::domain_error("hinge scale must be positive and finite");
  }
  return LossKind(LossFamily::kHinge, scale);
}

LossKind LossKind::parse(std::string_view name) {
  if (name == "zero-one" || name == "0-1" || name == "zero_one") return zero_one();
  if (name == "exp" || name == "exponential") return exponential();
  if (name == "logistic") return logistic();
  if (name == "quad" || name == "quadratic") return quadratic();
  if (name == "tquad" || name == "truncated-quadratic") return truncated_quadratic();
  if (name == "hinge") return hinge(1.0);
  if (name.starts_with("hinge:")) {
    std::string_view rest = name.substr(6);
    double scale = 0.0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), scale);
    if (ec != std::errc() || ptr != rest.data() + rest.size()) {
      throw std::invalid_argument("bad hinge scale in '" + std::string(name) + "'");
    }
    try {
      return hinge(scale);
    } catch (const std::domain_error& e) {
      throw std::invalid_argument(e.what());
    }
  }
  throw std::invalid_argument("unknown loss '" + std::string(name) +
                              "' (expected zero-one, hinge:<c>, exp, logistic, quad, tquad)");
}

std::string LossKind::name() const {
  switch (family_) {
    case LossFamily::kZeroOne: return "zero-one";
    case LossFamily::kHinge: return scale_ == 1.0 ? "hinge" : "hinge:" + shortest(scale_);
    case LossFamily::kExponential: return "exp";
    case LossFamily::kLogistic: return "logistic";
    case LossFamily::kQuadratic: return "quad";
    case LossFamily::kTruncatedQuadratic: return "tquad";
  }
  return "unknown";
}

double phi(const LossKind& loss, double margin) {
  if (!std::isfinite(margin)) throw std::domain_error("margin must be finite");
  switch (loss.family()) {
    case LossFamily::kZeroOne:
      return margin <= 0.0 ? 1.0 : 0.0;
    case LossFamily::kHinge:
      return loss.scale() * std::max(0.0, 1.0 - margin);
    case LossFamily::kExponential:
      return std::exp(-margin);
    case LossFamily::kLogistic:
      return margin >= 0.0 ? std::log1p(std::exp(-margin))
                           : -margin + std::log1p(std::exp(margin));
    case LossFamily::kQuadratic:
      return (1.0 - margin) * (1.0 - margin);
    case LossFamily::kTruncatedQuadratic: {
      const double t = std::max(0.0, 1.0 - margin);
      return t * t;
    }
  }
  return 0.0;
}

double conditional_risk(const LossKind& loss, double score, double eta) {
  require_probability(eta);
  return weighted_conditional(loss, score, eta, 1.0 - eta);
}

double delta_c(const LossKind& loss, double eta) {
  require_probability(eta);
  const double lower = eta < 0.5 ? 1.0 : -1.0;  // branch sign
  switch (loss.family()) {
    case LossFamily::kZeroOne:
      return 1.0 - 2.0 * eta;
    case LossFamily::kHinge:
      return loss.scale() * (1.0 - 2.0 * eta);
    case LossFamily::kExponential:
      return lower * (1.0 - 2.0 * std::sqrt(eta * (1.0 - eta)));
    case LossFamily::kLogistic:
      return lower * (std::log(2.0) + xlogx(eta) + xlogx(1.0 - eta));
    case LossFamily::kQuadratic:
    case LossFamily::kTruncatedQuadratic:
      return lower * (1.0 - 2.0 * eta) * (1.0 - 2.0 * eta);
  }
  return 0.0;
}

ConditionalRisks c_plus_minus(const LossKind& loss, double eta, ScoreRange range) {
  require_probability(eta);
  return conditional_pair(loss, eta, 1.0 - eta, range);
}

double delta_c_weighted(const LossKind& loss, double w_plus, double w_minus,
                        double eta) {
  require_weight(w_plus, "w_plus");
  require_weight(w_minus, "w_minus");
  require_probability(eta);
  const double mu_plus = w_plus * eta;
  const double mu_minus = w_minus * (1.0 - eta);
  const double lower = mu_plus <= mu_minus ? 1.0 : -1.0;
  const double total = mu_plus + mu_minus;
  switch (loss.family()) {
    case LossFamily::kZeroOne:
      return -mu_plus + mu_minus;
    case LossFamily::kHinge:
      return loss.scale() * (-mu_plus + mu_minus);
    case LossFamily::kExponential: {
      const double gap = std::sqrt(mu_plus) - std::sqrt(mu_minus);
      return lower * gap * gap;
    }
    case LossFamily::kLogistic: {
      if (total == 0.0) return 0.0;
      auto term = [total](double mu) {
        return mu > 0.0 ? mu * std::log(2.0 * mu / total) : 0.0;
      };
      return lower * (term(mu_plus) + term(mu_minus));
    }
    case LossFamily::kQuadratic:
    case LossFamily::kTruncatedQuadratic: {
      if (total == 0.0) return 0.0;
      const double gap = mu_plus - mu_minus;
      return lower * gap * gap / total;
    }
  }
  return 0.0;
}

ConditionalRisks c_plus_minus_weighted(const LossKind& loss, double w_plus,
                                       double w_minus, double eta,
                                       ScoreRange range) {
  require_weight(w_plus, "w_plus");
  require_weight(w_minus, "w_minus");
  require_probability(eta);
  return conditional_pair(loss, w_plus * eta, w_minus * (1.0 - eta), range);
}

bool is_classification_calibrated(const LossKind& loss) {
  // All six built-in losses are convex (or 0-1) with the calibration property;
  // the hinge scale is positive by construction.
  (void)loss;
  return true;
}

bool is_classification_calibrated(const std::function<double(double)>& loss,
                                  double step) {
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  const double at0 = loss(0.0);
  const double right = (loss(step) - at0) / step;
  const double left = (at0 - loss(-step)) / step;
  const double central = (loss(step) - loss(-step)) / (2.0 * step);
  if (!std::isfinite(right) || !std::isfinite(left)) return false;
  const double kink_tol = 1e-3 * std::max(1.0, std::abs(central));
  if (std::abs(right - left) > kink_tol) return false;
  return central < -1e-8;
}

}  // namespace isoclass
