#include "isoclass/calibration.hpp"

#include <cstdio>
#include <sstream>

#include "isoclass/risk.hpp"

namespace isoclass {

namespace {

bool exact_loss(const LossKind& loss) {
  return loss.family() == LossFamily::kZeroOne || loss.family() == LossFamily::kHinge;
}

int compare(double a, double b) {
  if (a < b - kOrderingTieTolerance) return -1;
  if (a > b + kOrderingTieTolerance) return 1;
  return 0;
}

int compare(const Rational& a, const Rational& b) { return cmp(a, b) < 0 ? -1 : (a == b ? 0 : 1); }

// Ordering of rows a and b under loss k.
int compare_rows(const CalibrationRow& a, const CalibrationRow& b, std::size_t k) {
  if (a.exact_surrogate_risks[k] && b.exact_surrogate_risks[k]) {
    return compare(*a.exact_surrogate_risks[k], *b.exact_surrogate_risks[k]);
  }
  return compare(a.surrogate_risks[k], b.surrogate_risks[k]);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string column_name(const LossKind& loss) {
  std::string name = loss.name();
  for (char& ch : name) {
    if (ch == '-' || ch == ':' || ch == '.') ch = '_';
  }
  return name;
}

}  // namespace

const PairAgreement* CalibrationReport::find_pair(const LossKind& a, const LossKind& b) const {
  for (const PairAgreement& p : pairs) {
    const LossKind& f = losses[p.first_loss];
    const LossKind& s = losses[p.second_loss];
    if ((f == a && s == b) || (f == b && s == a)) return &p;
  }
  return nullptr;
}

std::string CalibrationReport::to_csv() const {
  std::ostringstream out;
  out << "set,risk_zero_one";
  for (const LossKind& loss : losses) {
    if (loss.family() != LossFamily::kZeroOne) out << ",risk_" << column_name(loss);
  }
  out << ",risk_zero_one_exact\n";
  for (const CalibrationRow& row : rows) {
    out << '"' << row.set.to_string() << "\"," << format_double(to_double(row.classification_risk));
    for (std::size_t k = 0; k < losses.size(); ++k) {
      if (losses[k].family() == LossFamily::kZeroOne) continue;
      out << ',' << format_double(row.surrogate_risks[k]);
    }
    out << ',' << to_string(row.classification_risk) << "\n";
  }
  return out.str();
}

CalibrationReport calibration_table(const DiscreteDistribution& dist,
                                    const std::vector<LossKind>& losses,
                                    std::size_t node_limit) {
  CalibrationReport report;
  report.losses = losses;
  const std::vector<PredictionSet> sets =
      enumerate_up_sets(DominanceDag::build(dist.points()), node_limit);
  for (const PredictionSet& g : sets) {
    CalibrationRow row{g, classification_risk_at_set_exact(dist, g), {}, {}};
    for (const LossKind& loss : losses) {
      if (exact_loss(loss)) {
        Rational r = surrogate_risk_at_set_exact(dist, g, loss);
        row.surrogate_risks.push_back(to_double(r));
        row.exact_surrogate_risks.emplace_back(std::move(r));
      } else {
        row.surrogate_risks.push_back(surrogate_risk_at_set(dist, g, loss));
        row.exact_surrogate_risks.emplace_back(std::nullopt);
      }
    }
    report.rows.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < losses.size(); ++i) {
    for (std::size_t j = i + 1; j < losses.size(); ++j) {
      PairAgreement pair{i, j, true, std::nullopt};
      for (std::size_t a = 0; a < report.rows.size() && pair.agree; ++a) {
        for (std::size_t b = a + 1; b < report.rows.size(); ++b) {
          const int first = compare_rows(report.rows[a], report.rows[b], i);
          const int second = compare_rows(report.rows[a], report.rows[b], j);
          if (first * second < 0) {
            pair.agree = false;
            pair.violation = std::make_pair(a, b);
            break;
          }
        }
      }
      report.pairs.push_back(pair);
    }
  }
  return report;
}

bool weighted_orderings_agree(const DiscreteDistribution& dist, const LossKind& loss,
                              std::size_t node_limit) {
  const std::vector<PredictionSet> sets =
      enumerate_up_sets(DominanceDag::build(dist.points()), node_limit);
  std::vector<Rational> base;
  std::vector<Rational> exact;
  std::vector<double> approx;
  for (const PredictionSet& g : sets) {
    base.push_back(weighted_risk_at_set_exact(dist, g));
    if (exact_loss(loss)) {
      exact.push_back(weighted_surrogate_risk_at_set_exact(dist, g, loss));
    } else {
      approx.push_back(weighted_surrogate_risk_at_set(dist, g, loss));
    }
  }
  for (std::size_t a = 0; a < sets.size(); ++a) {
    for (std::size_t b = a + 1; b < sets.size(); ++b) {
      const int first = compare(base[a], base[b]);
      const int second =
          exact.empty() ? compare(approx[a], approx[b]) : compare(exact[a], exact[b]);
      if (first * second < 0) return false;
    }
  }
  return true;
}

}  // namespace isoclass
