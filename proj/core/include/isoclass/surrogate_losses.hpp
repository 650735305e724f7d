#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace isoclass {

enum class LossFamily {
  kZeroOne,
  kHinge,
  kExponential,
  kLogistic,
  kQuadratic,
  kTruncatedQuadratic,
};

// A built-in margin loss phi(alpha). Only the hinge loss carries a scale.
class LossKind {
 public:
  static LossKind zero_one() { return LossKind(LossFamily::kZeroOne, 1.0); }
  static LossKind hinge(double scale = 1.0);
  static LossKind exponential() { return LossKind(LossFamily::kExponential, 1.0); }
  static LossKind logistic() { return LossKind(LossFamily::kLogistic, 1.0); }
  static LossKind quadratic() { return LossKind(LossFamily::kQuadratic, 1.0); }
  static LossKind truncated_quadratic() {
    return LossKind(LossFamily::kTruncatedQuadratic, 1.0);
  }

  // Accepts `zero-one`, `hinge:<c>` (or bare `hinge` for c=1), `exp`,
  // `logistic`, `quad`, `tquad`.
  static LossKind parse(std::string_view name);

  LossFamily family() const { return family_; }
  double scale() const { return scale_; }

  // Inverse of parse(); hinge renders as `hinge` for c = 1, else `hinge:<c>`.
  std::string name() const;

  friend bool operator==(const LossKind&, const LossKind&) = default;

 private:
  LossKind(LossFamily family, double scale) : family_(family), scale_(scale) {}

  LossFamily family_;
  double scale_;
};

// Range the score f is allowed to take when computing C_phi^+ and C_phi^-.
// kHalfLine: f in [0, inf) and (-inf, 0); reproduces the closed-form tables.
// kUnitBox:  f in [0, 1] and [-1, 0).
enum class ScoreRange { kHalfLine, kUnitBox };

struct ConditionalRisks {
  double plus;   // inf over f >= 0 of C_phi(f, eta)
  double minus;  // inf over f < 0 of C_phi(f, eta)
};

double phi(const LossKind& loss, double margin);

// C_phi(f, eta) = eta * phi(f) + (1 - eta) * phi(-f).
double conditional_risk(const LossKind& loss, double score, double eta);

// Closed-form Delta C_phi(eta) = C^+ - C^-.
double delta_c(const LossKind& loss, double eta);

ConditionalRisks c_plus_minus(const LossKind& loss, double eta,
                              ScoreRange range = ScoreRange::kHalfLine);

// Weighted analogues with mu+ = w_plus * eta and mu- = w_minus * (1 - eta).
double delta_c_weighted(const LossKind& loss, double w_plus, double w_minus,
                        double eta);

ConditionalRisks c_plus_minus_weighted(const LossKind& loss, double w_plus,
                                       double w_minus, double eta,
                                       ScoreRange range = ScoreRange::kHalfLine);

bool is_classification_calibrated(const LossKind& loss);

// Derivative test for a user-supplied convex loss: differentiable at 0 with
// phi'(0) < 0, both judged by finite differences with the given step.
bool is_classification_calibrated(const std::function<double(double)>& loss,
                                  double step = 1e-5);

}  // namespace isoclass
