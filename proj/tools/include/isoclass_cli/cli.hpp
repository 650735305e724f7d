#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace isoclass::cli {

struct RunConfig {
  std::string subcommand;
  std::string input;
  std::string output;
  std::string model;
  std::string out_dir;
  std::string summary;
  std::string losses = "zero-one,hinge,exp,logistic,quad,tquad";
  std::string orders;
  std::optional<double> propensity;
  double kappa = 0.01;
  std::uint64_t seed = 7;
  std::size_t node_limit = 15;
  bool float_mode = false;
  bool compact = false;
  bool rescale = false;
  bool binarize = false;
  int example = 0;
  // simulate-regret
  std::string dgp = "step";
  std::string ns = "100,400,1600";
  std::size_t reps = 200;
  std::size_t dim = 1;
  std::string estimator = "monotone";
  std::size_t mc_points = 100'000;
  std::size_t threads = 0;
};

// Parses argv and runs the subcommand. Returns 0 on success, 2 on usage or
// validation errors, 1 on internal errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Runs an already-parsed configuration; throws on failure.
void run(const RunConfig& config, std::ostream& out);

}  // namespace isoclass::cli
