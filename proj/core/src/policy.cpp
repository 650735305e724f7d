#include "isoclass/policy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "isoclass/errors.hpp"

namespace isoclass {

double assignment_probability(const TrialRecord& record) {
  return record.treatment * record.propensity + (1.0 - record.treatment) / 2.0;
}

void validate_records(std::span<const TrialRecord> records, double kappa) {
  if (!(kappa > 0.0 && kappa < 0.5)) throw ValidationError("kappa must lie in (0, 1/2)");
  std::ostringstream bad;
  std::size_t count = 0;
  auto flag = [&](std::size_t row, const std::string& why) {
    if (count < 20) bad << "\n  row " << row + 1 << ": " << why;
    ++count;
  };
  const std::size_t dim = records.empty() ? 0 : records.front().covariates.size();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const TrialRecord& r = records[i];
    if (!std::isfinite(r.outcome)) flag(i, "outcome is not finite");
    if (r.treatment != 1 && r.treatment != -1) flag(i, "treatment must be -1 or +1");
    if (r.covariates.size() != dim) flag(i, "covariate dimension differs from row 1");
    if (!(r.propensity > 0.0 && r.propensity < 1.0)) {
      flag(i, "propensity " + std::to_string(r.propensity) + " outside (0, 1)");
    } else if (!(r.propensity > kappa && r.propensity < 1.0 - kappa)) {
      std::ostringstream why;
      why << "propensity " << r.propensity << " violates overlap (" << kappa << ", "
          << 1.0 - kappa << ")";
      flag(i, why.str());
    }
  }
  if (count > 0) {
    std::ostringstream msg;
    msg << count << " invalid trial record(s):" << bad.str();
    if (count > 20) msg << "\n  ...";
    throw ValidationError(msg.str());
  }
}

WeightedSample to_weighted_sample(std::span<const TrialRecord> records, double kappa) {
  validate_records(records, kappa);
  WeightedSample out(records.empty() ? 0 : records.front().covariates.size());
  for (const TrialRecord& r : records) {
    const double weight = std::abs(r.outcome) / assignment_probability(r);
    const int label = (r.outcome >= 0.0 ? 1 : -1) * r.treatment;
    out.add_row(weight, label, r.covariates);
  }
  return out;
}

double welfare_estimate(const Policy& policy, std::span<const TrialRecord> records) {
  if (records.empty()) throw ValidationError("no trial records");
  double total = 0.0;
  for (const TrialRecord& r : records) {
    if (policy(r.covariates) == r.treatment) total += r.outcome / assignment_probability(r);
  }
  return total / static_cast<double>(records.size());
}

double welfare_constant(std::span<const TrialRecord> records) {
  if (records.empty()) throw ValidationError("no trial records");
  double total = 0.0;
  for (const TrialRecord& r : records) {
    total += std::max(0.0, r.outcome / assignment_probability(r));
  }
  return total / static_cast<double>(records.size());
}

double max_weight_bound(std::span<const TrialRecord> records, double kappa) {
  if (!(kappa > 0.0 && kappa <= 0.5)) throw ValidationError("kappa must lie in (0, 1/2]");
  double largest = 0.0;
  for (const TrialRecord& r : records) largest = std::max(largest, std::abs(r.outcome));
  return largest / kappa;
}

}  // namespace isoclass
