#include "isoclass/examples.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "isoclass/errors.hpp"
#include "isoclass/poset.hpp"
#include "isoclass/risk.hpp"

namespace isoclass {

DiscreteDistribution three_point_distribution(const Rational& eta0, const Rational& eta1,
                                              const Rational& eta2) {
  const Rational third(1, 3);
  return DiscreteDistribution::from_rationals({{0.0}, {1.0}, {2.0}}, {third, third, third},
                                              {eta0, eta1, eta2});
}

DiscreteDistribution first_example_distribution() {
  return three_point_distribution(ratio(9, 10), ratio(3, 10), ratio(2, 10));
}

DiscreteDistribution second_example_distribution() {
  return three_point_distribution(ratio(6, 10), ratio(2, 10), ratio(8, 10));
}

namespace {

std::vector<PredictionSet> monotone_sets(const DiscreteDistribution& dist) {
  return enumerate_up_sets(DominanceDag::build(dist.points()));
}

bool has_exact_path(const LossKind& loss) {
  return loss.family() == LossFamily::kZeroOne || loss.family() == LossFamily::kHinge;
}

SurrogateArgmin argmin_for(const DiscreteDistribution& dist,
                           const std::vector<PredictionSet>& sets, const LossKind& loss) {
  SurrogateArgmin out{loss, sets.front(), 0.0, Rational(0)};
  if (has_exact_path(loss)) {
    Rational best = surrogate_risk_at_set_exact(dist, sets.front(), loss);
    for (const PredictionSet& g : sets) {
      const Rational r = surrogate_risk_at_set_exact(dist, g, loss);
      if (r < best) {
        best = r;
        out.argmin = g;
      }
    }
    out.surrogate_risk = to_double(best);
  } else {
    double best = surrogate_risk_at_set(dist, sets.front(), loss);
    for (const PredictionSet& g : sets) {
      const double r = surrogate_risk_at_set(dist, g, loss);
      if (r < best - 1e-12) {
        best = r;
        out.argmin = g;
      }
    }
    out.surrogate_risk = best;
  }
  out.classification_risk = classification_risk_at_set_exact(dist, out.argmin);
  return out;
}

}  // namespace

FirstExampleResult reproduce_example_1() {
  const DiscreteDistribution dist = first_example_distribution();
  FirstExampleResult out;
  out.sets = monotone_sets(dist);
  for (const LossKind& loss : {LossKind::zero_one(), LossKind::hinge(1.0),
                               LossKind::exponential(), LossKind::truncated_quadratic()}) {
    out.by_loss.push_back(argmin_for(dist, out.sets, loss));
  }
  out.constrained_optimum = out.by_loss.front().argmin;
  out.optimal_risk = out.by_loss.front().classification_risk;
  return out;
}

LinearHingeFit fit_linear_hinge(const DiscreteDistribution& dist) {
  if (dist.dim() != 1 || dist.size() < 2) {
    throw ValidationError("linear hinge fit needs a one-dimensional law with >= 2 support points");
  }
  // Half-planes a0 * intercept + a1 * slope <= rhs.
  struct HalfPlane {
    Rational a0, a1, rhs;
  };
  std::vector<HalfPlane> planes{{Rational(0), Rational(-1), Rational(0)}};
  std::vector<Rational> xs;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const Rational x = to_rational(dist.point(i)[0]);
    xs.push_back(x);
    planes.push_back({Rational(1), x, Rational(1)});
    planes.push_back({Rational(-1), Rational(-x), Rational(1)});
  }
  auto feasible = [&](const LinearScore& s) {
    for (const HalfPlane& h : planes) {
      if (h.a0 * s.intercept + h.a1 * s.slope > h.rhs) return false;
    }
    return true;
  };
  auto hinge = [&](const LinearScore& s) {
    Rational risk(0);
    for (std::size_t i = 0; i < dist.size(); ++i) {
      const Rational f = s.intercept + s.slope * xs[i];
      risk += (1 - (2 * dist.eta_exact(i) - 1) * f) * dist.mass_exact(i);
    }
    return risk;
  };
  auto less = [](const LinearScore& a, const LinearScore& b) {
    return a.intercept < b.intercept || (a.intercept == b.intercept && a.slope < b.slope);
  };

  LinearHingeFit out;
  for (std::size_t p = 0; p < planes.size(); ++p) {
    for (std::size_t q = p + 1; q < planes.size(); ++q) {
      const Rational det = planes[p].a0 * planes[q].a1 - planes[p].a1 * planes[q].a0;
      if (det == 0) continue;
      LinearScore s{(planes[p].rhs * planes[q].a1 - planes[p].a1 * planes[q].rhs) / det,
                    (planes[p].a0 * planes[q].rhs - planes[p].rhs * planes[q].a0) / det};
      if (!feasible(s)) continue;
      const bool seen = std::any_of(out.vertices.begin(), out.vertices.end(), [&](const auto& v) {
        return v.intercept == s.intercept && v.slope == s.slope;
      });
      if (!seen) out.vertices.push_back(s);
    }
  }
  std::sort(out.vertices.begin(), out.vertices.end(), less);
  out.optimum = out.vertices.front();
  out.hinge_risk = hinge(out.optimum);
  for (const LinearScore& v : out.vertices) {
    const Rational r = hinge(v);
    if (r < out.hinge_risk) {
      out.hinge_risk = r;
      out.optimum = v;
    }
  }
  std::vector<Rational> scores;
  for (const Rational& x : xs) scores.push_back(out.optimum.intercept + out.optimum.slope * x);
  out.prediction_set = prediction_set_of(scores);
  out.classification_risk = classification_risk_at_set_exact(dist, out.prediction_set);
  return out;
}

SecondExampleResult reproduce_example_2() {
  const DiscreteDistribution dist = second_example_distribution();
  SecondExampleResult out;
  out.sets = monotone_sets(dist);
  out.constrained_optimum = out.sets.front();
  out.optimal_risk = classification_risk_at_set_exact(dist, out.sets.front());
  for (const PredictionSet& g : out.sets) {
    const Rational r = classification_risk_at_set_exact(dist, g);
    if (r < out.optimal_risk) {
      out.optimal_risk = r;
      out.constrained_optimum = g;
    }
  }
  out.linear = fit_linear_hinge(dist);
  return out;
}

namespace {

std::string exact_and_rounded(const Rational& r) {
  std::ostringstream out;
  out << to_string(r);
  const std::string over30 = to_string_over(r, 30);
  if (over30 != to_string(r)) out << " = " << over30;
  out << " ~ " << std::fixed << std::setprecision(2) << to_double(r);
  return out.str();
}

}  // namespace

std::string format_examples_report(const FirstExampleResult& first,
                                   const SecondExampleResult& second) {
  std::ostringstream out;
  out << "Example 1: X uniform on {0,1,2}, eta = (0.9, 0.3, 0.2), monotone prediction sets\n";
  out << "  constrained optimum " << first.constrained_optimum.to_string() << "  R = "
      << exact_and_rounded(first.optimal_risk) << "\n";
  for (const SurrogateArgmin& a : first.by_loss) {
    out << "  " << std::left << std::setw(10) << a.loss.name() << " argmin "
        << std::setw(9) << a.argmin.to_string() << " R_phi = " << std::setprecision(6)
        << std::defaultfloat << a.surrogate_risk << "  R = "
        << exact_and_rounded(a.classification_risk) << "\n";
  }
  out << "Example 2: X uniform on {0,1,2}, eta = (0.6, 0.2, 0.8), linear monotone scores\n";
  out << "  constrained optimum " << second.constrained_optimum.to_string() << "  R = "
      << exact_and_rounded(second.optimal_risk) << "\n";
  out << "  hinge over linear class: f(x) = " << to_string(second.linear.optimum.intercept)
      << " + " << to_string(second.linear.optimum.slope) << " x, set "
      << second.linear.prediction_set.to_string() << "  R = "
      << exact_and_rounded(second.linear.classification_risk) << "\n";
  return out.str();
}

}  // namespace isoclass
