#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "isoclass/bernstein.hpp"
#include "isoclass/errors.hpp"
#include "isoclass/distribution.hpp"
#include "isoclass/monotone_fit.hpp"
#include "isoclass/point.hpp"
#include "isoclass/policy.hpp"

namespace isoclass {

// CSV error carrying the 1-based line number.
class CsvError : public ValidationError {
 public:
  CsvError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class SampleSchema {
  kAuto,      // by the first header field: y -> plain, w -> weighted, z -> trial
  kPlain,     // y,x1,...,xd
  kWeighted,  // w,y,x1,...,xd
  kTrial,     // z,d,x1,...,xd[,e]
};

// kExact parses decimal literals as exact rationals (weights only; covariates
// are always binary64). kFloat rounds weights to binary64 first.
enum class NumberMode { kExact, kFloat };

struct LoadOptions {
  SampleSchema schema = SampleSchema::kAuto;
  NumberMode mode = NumberMode::kExact;
  // Trial files without an `e` column use this propensity.
  std::optional<double> propensity;
};

using LoadedSample = std::variant<WeightedSample, std::vector<TrialRecord>>;

LoadedSample read_sample(std::istream& in, const LoadOptions& options = {});
LoadedSample load_sample(const std::filesystem::path& path,
                         const LoadOptions& options = {});

// Convenience wrappers that reject the other schema.
WeightedSample load_weighted_sample(const std::filesystem::path& path,
                                    const LoadOptions& options = {});
std::vector<TrialRecord> load_trial_records(const std::filesystem::path& path,
                                            const LoadOptions& options = {});

// `mass,eta,<covariates...>[,w_plus,w_minus]`; exact parsing of mass/eta.
DiscreteDistribution read_distribution(std::istream& in);
DiscreteDistribution load_distribution(const std::filesystem::path& path);

// Header row of covariate names, then one point per row.
std::vector<Point> read_points(std::istream& in);
std::vector<Point> load_points(const std::filesystem::path& path);

// `w,y,x1..xd` with weights in shortest round-trip form.
std::string weighted_sample_to_csv(const WeightedSample& sample);

// Model JSON:
//   {"type":"monotone","dim":d,"support":[[...]],"values":[...]}
//   {"type":"bernstein","orders":[...],"theta":[...],
//    "scale":{"min":[...],"max":[...]}}
std::string model_to_json(const MonotoneClassifier& model, bool compact = false);
std::string model_to_json(const BernsteinClassifier& model);

using AnyModel = std::variant<MonotoneClassifier, BernsteinClassifier>;

AnyModel model_from_json(std::string_view text);
AnyModel load_model(const std::filesystem::path& path);

int predict(const AnyModel& model, PointView x);

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over the target.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view contents);

}  // namespace isoclass
