#include "isoclass_cli/cli.hpp"

#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "isoclass/calibration.hpp"
#include "isoclass/examples.hpp"
#include "isoclass/io.hpp"
#include "isoclass/regret.hpp"
#include "isoclass/risk.hpp"
#include "json.hpp"

namespace isoclass::cli {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

long long parse_integer(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ValidationError(what + " must be an integer, got '" + text + "'");
  }
  return value;
}

std::vector<std::size_t> parse_sizes(const std::string& text, const std::string& what) {
  std::vector<std::size_t> out;
  for (const std::string& item : split_list(text)) {
    const long long v = parse_integer(item, what);
    if (v < 1) throw ValidationError(what + " must be >= 1, got " + item);
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw ValidationError(what + " list is empty");
  return out;
}

// Empty result means "auto".
std::vector<int> parse_orders(const std::string& text) {
  if (text == "auto") return {};
  std::vector<int> out;
  for (const std::string& item : split_list(text)) {
    const long long v = parse_integer(item, "Bernstein order");
    if (v < 1) throw ValidationError("Bernstein order must be >= 1, got " + item);
    if (v > kMaxBernsteinOrder) {
      throw ValidationError("Bernstein order must be <= " + std::to_string(kMaxBernsteinOrder) +
                            ", got " + item);
    }
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw ValidationError("--orders needs k1,...,kd or 'auto'");
  return out;
}

std::vector<LossKind> parse_losses(const std::string& text) {
  std::vector<LossKind> out;
  for (const std::string& item : split_list(text)) out.push_back(LossKind::parse(item));
  if (out.empty()) throw ValidationError("--losses is empty");
  return out;
}

LoadOptions load_options(const RunConfig& c) {
  LoadOptions o;
  o.mode = c.float_mode ? NumberMode::kFloat : NumberMode::kExact;
  o.propensity = c.propensity;
  return o;
}

void require(const std::string& value, const std::string& flag) {
  if (value.empty()) throw ValidationError(flag + " is required");
}

// Artifacts are staged and written only after every computation succeeded.
struct Artifacts {
  std::vector<std::pair<fs::path, std::string>> files;
  std::string stdout_text;

  void emit(const std::string& path, std::string contents) {
    if (path.empty()) {
      stdout_text += contents;
    } else {
      files.emplace_back(path, std::move(contents));
    }
  }
  void flush(std::ostream& out) {
    for (const auto& [path, contents] : files) write_file_atomic(path, contents);
    out << stdout_text;
  }
};

void add_summary(Artifacts& a, const RunConfig& c, json summary) {
  summary["command"] = c.subcommand;
  if (!c.summary.empty()) a.files.emplace_back(c.summary, summary.dump(2) + "\n");
}

Rational empirical_zero_one(const WeightedSample& sample, const std::function<int(PointView)>& f) {
  std::vector<Rational> scores;
  for (std::size_t i = 0; i < sample.size(); ++i) scores.emplace_back(f(sample.x(i)));
  return empirical_risk_exact(scores, sample, LossKind::zero_one());
}

json monotone_summary(const MonotoneClassifier& model, const WeightedSample& sample) {
  const Rational risk = empirical_zero_one(sample, [&](PointView x) { return model.predict(x); });
  return {{"n", sample.size()},
          {"dim", sample.dim()},
          {"support", model.support_size()},
          {"negative_maximal", model.negative_maximal().size()},
          {"positive_minimal", model.positive_minimal().size()},
          {"empirical_zero_one_risk", to_string(risk)},
          {"empirical_zero_one_risk_value", to_double(risk)}};
}

void fit_monotone_cmd(const RunConfig& c, Artifacts& a) {
  require(c.input, "--in");
  const WeightedSample sample = load_weighted_sample(c.input, load_options(c));
  if (sample.empty()) throw ValidationError("sample is empty");
  const MonotoneClassifier model = fit_monotone(sample);
  a.emit(c.output, model_to_json(model, c.compact));
  const json s = monotone_summary(model, sample);
  if (!c.output.empty()) {
    a.stdout_text += "monotone fit: n=" + std::to_string(sample.size()) +
                     " support=" + std::to_string(model.support_size()) +
                     " empirical 0-1 risk=" + s["empirical_zero_one_risk"].get<std::string>() + "\n";
  }
  add_summary(a, c, s);
}

WeightedSample scaled_sample(const WeightedSample& sample, const CubeScaling& scaling) {
  WeightedSample out(sample.dim());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    out.add_row(sample.weight_exact(i), sample.label(i), scaling.apply(sample.x(i)));
  }
  return out;
}

void fit_bernstein_cmd(const RunConfig& c, Artifacts& a) {
  require(c.input, "--in");
  require(c.orders, "--orders");
  std::vector<int> orders = parse_orders(c.orders);
  const WeightedSample raw = load_weighted_sample(c.input, load_options(c));
  if (raw.empty()) throw ValidationError("sample is empty");
  if (orders.empty()) orders = suggest_orders(raw.size(), raw.dim());
  if (orders.size() != raw.dim()) {
    throw ValidationError("expected " + std::to_string(raw.dim()) + " orders, got " +
                          std::to_string(orders.size()));
  }
  const CubeScaling scaling = c.rescale ? CubeScaling::fit(raw) : CubeScaling::identity(raw.dim());
  const WeightedSample sample = c.rescale ? scaled_sample(raw, scaling) : raw;
  BernsteinClassifier model = fit_bernstein(sample, orders);
  if (c.binarize) model = binarize(model);
  if (c.rescale) model = model.with_scaling(scaling);
  a.emit(c.output, model_to_json(model));
  const Rational risk = empirical_zero_one(raw, [&](PointView x) { return model.predict(x); });
  if (!c.output.empty()) {
    a.stdout_text += "bernstein fit: n=" + std::to_string(raw.size()) +
                     " indices=" + std::to_string(model.theta().size()) +
                     " empirical 0-1 risk=" + to_string(risk) + "\n";
  }
  add_summary(a, c,
              {{"n", raw.size()},
               {"orders", orders},
               {"indices", model.theta().size()},
               {"binarized", model.binarized()},
               {"rescaled", c.rescale},
               {"empirical_zero_one_risk", to_string(risk)},
               {"empirical_zero_one_risk_value", to_double(risk)}});
}

void predict_cmd(const RunConfig& c, Artifacts& a) {
  require(c.model, "--model");
  require(c.input, "--in");
  const AnyModel model = load_model(c.model);
  const std::vector<Point> points = load_points(c.input);
  const std::size_t dim =
      std::visit([](const auto& m) { return m.dim(); }, model);
  std::string csv = "prediction\n";
  std::size_t positives = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim) {
      throw ValidationError("point " + std::to_string(i + 1) + " has dimension " +
                            std::to_string(points[i].size()) + ", model expects " +
                            std::to_string(dim));
    }
    const int y = predict(model, points[i]);
    positives += y > 0;
    csv += std::to_string(y) + "\n";
  }
  a.emit(c.output, csv);
  add_summary(a, c, {{"points", points.size()}, {"positive", positives}});
}

std::vector<TrialRecord> trials(const RunConfig& c) {
  require(c.input, "--in");
  return load_trial_records(c.input, load_options(c));
}

void policy_weights_cmd(const RunConfig& c, Artifacts& a) {
  const std::vector<TrialRecord> records = trials(c);
  const WeightedSample sample = to_weighted_sample(records, c.kappa);
  a.emit(c.output, weighted_sample_to_csv(sample));
  add_summary(a, c,
              {{"n", records.size()},
               {"kappa", c.kappa},
               {"max_weight_bound", max_weight_bound(records, c.kappa)},
               {"welfare_constant", welfare_constant(records)}});
}

void policy_fit_cmd(const RunConfig& c, Artifacts& a) {
  const std::vector<TrialRecord> records = trials(c);
  const WeightedSample sample = to_weighted_sample(records, c.kappa);
  const MonotoneClassifier model = fit_monotone(sample);
  a.emit(c.output, model_to_json(model, c.compact));
  const double welfare =
      welfare_estimate([&](PointView x) { return model.predict(x); }, records);
  if (!c.output.empty()) {
    a.stdout_text += "policy fit: n=" + std::to_string(records.size()) +
                     " estimated welfare=" + std::to_string(welfare) + "\n";
  }
  json s = monotone_summary(model, sample);
  s["welfare_estimate"] = welfare;
  s["welfare_constant"] = welfare_constant(records);
  s["kappa"] = c.kappa;
  add_summary(a, c, s);
}

json agreement_json(const CalibrationReport& report) {
  json pairs = json::array();
  for (const PairAgreement& p : report.pairs) {
    json entry = {{"first", report.losses[p.first_loss].name()},
                  {"second", report.losses[p.second_loss].name()},
                  {"agree", p.agree}};
    if (p.violation) {
      entry["witness"] = {report.rows[p.violation->first].set.to_string(),
                          report.rows[p.violation->second].set.to_string()};
    }
    pairs.push_back(entry);
  }
  return pairs;
}

DiscreteDistribution example_distribution(int which) {
  if (which == 1) return first_example_distribution();
  if (which == 2) return second_example_distribution();
  throw ValidationError("--example must be 1 or 2");
}

void calibration_table_cmd(const RunConfig& c, Artifacts& a) {
  if (c.input.empty() == (c.example == 0)) {
    throw ValidationError("give exactly one of --in or --example");
  }
  const DiscreteDistribution dist =
      c.example != 0 ? example_distribution(c.example) : load_distribution(c.input);
  const CalibrationReport report = calibration_table(dist, parse_losses(c.losses), c.node_limit);
  a.emit(c.output, report.to_csv());
  const json pairs = agreement_json(report);
  if (!c.output.empty()) {
    for (const json& p : pairs) {
      a.stdout_text += p["first"].get<std::string>() + " vs " + p["second"].get<std::string>() +
                       (p["agree"].get<bool>() ? ": orderings agree\n" : ": orderings differ\n");
    }
  }
  add_summary(a, c, {{"sets", report.rows.size()}, {"pairs", pairs}});
}

json set_risk(const PredictionSet& g, const Rational& r) {
  return {{"set", g.to_string()}, {"risk", to_string(r)}, {"risk_value", to_double(r)}};
}

void reproduce_examples_cmd(const RunConfig& c, Artifacts& a) {
  const FirstExampleResult first = reproduce_example_1();
  const SecondExampleResult second = reproduce_example_2();
  const std::string report = format_examples_report(first, second);
  a.stdout_text += report;

  json by_loss = json::array();
  for (const SurrogateArgmin& s : first.by_loss) {
    json entry = set_risk(s.argmin, s.classification_risk);
    entry["loss"] = s.loss.name();
    entry["surrogate_risk"] = s.surrogate_risk;
    by_loss.push_back(entry);
  }
  json summary = {
      {"example_1", {{"optimum", set_risk(first.constrained_optimum, first.optimal_risk)},
                     {"surrogate_argmins", by_loss}}},
      {"example_2",
       {{"optimum", set_risk(second.constrained_optimum, second.optimal_risk)},
        {"linear_hinge",
         {{"intercept", to_string(second.linear.optimum.intercept)},
          {"slope", to_string(second.linear.optimum.slope)},
          {"hinge_risk", to_string(second.linear.hinge_risk)},
          {"set", second.linear.prediction_set.to_string()},
          {"risk", to_string(second.linear.classification_risk)},
          {"risk_value", to_double(second.linear.classification_risk)}}}}}};
  if (!c.out_dir.empty()) {
    fs::create_directories(c.out_dir);
    const fs::path dir(c.out_dir);
    const std::vector<LossKind> losses{LossKind::zero_one(), LossKind::hinge(1.0),
                                       LossKind::exponential(), LossKind::truncated_quadratic()};
    a.files.emplace_back(dir / "report.txt", report);
    a.files.emplace_back(dir / "example_1_calibration.csv",
                         calibration_table(first_example_distribution(), losses).to_csv());
    a.files.emplace_back(dir / "example_2_calibration.csv",
                         calibration_table(second_example_distribution(), losses).to_csv());
    summary["command"] = c.subcommand;
    a.files.emplace_back(dir / "summary.json", summary.dump(2) + "\n");
  }
  add_summary(a, c, summary);
}

void simulate_regret_cmd(const RunConfig& c, Artifacts& a) {
  RegretConfig config;
  if (c.dgp == "step") {
    config.dgp = DgpKind::kStep;
  } else if (c.dgp == "linear") {
    config.dgp = DgpKind::kLinear;
  } else {
    throw ValidationError("--dgp must be step or linear, got '" + c.dgp + "'");
  }
  if (c.estimator == "monotone") {
    config.estimator = Estimator::kMonotone;
  } else if (c.estimator == "bernstein") {
    config.estimator = Estimator::kBernstein;
  } else {
    throw ValidationError("--estimator must be monotone or bernstein, got '" + c.estimator + "'");
  }
  config.dim = c.dim;
  if (!c.orders.empty()) config.orders = parse_orders(c.orders);
  config.mc_points = c.mc_points;
  config.threads = c.threads;
  const RegretCurve curve = simulate_regret(config, parse_sizes(c.ns, "sample size"), c.reps, c.seed);
  a.emit(c.output, curve.to_csv());
  json points = json::array();
  for (const RegretPoint& p : curve.points) {
    points.push_back({{"n", p.n},
                      {"mean_regret", p.mean_regret},
                      {"se", p.standard_error},
                      {"reps", p.reps},
                      {"any_negative", p.any_negative}});
  }
  add_summary(a, c,
              {{"dgp", c.dgp},
               {"dim", c.dim},
               {"estimator", c.estimator},
               {"seed", c.seed},
               {"exact", curve.exact},
               {"points", points}});
}

}  // namespace

void run(const RunConfig& c, std::ostream& out) {
  Artifacts a;
  if (c.subcommand == "fit-monotone") {
    fit_monotone_cmd(c, a);
  } else if (c.subcommand == "fit-bernstein") {
    fit_bernstein_cmd(c, a);
  } else if (c.subcommand == "predict") {
    predict_cmd(c, a);
  } else if (c.subcommand == "policy-weights") {
    policy_weights_cmd(c, a);
  } else if (c.subcommand == "policy-fit") {
    policy_fit_cmd(c, a);
  } else if (c.subcommand == "calibration-table") {
    calibration_table_cmd(c, a);
  } else if (c.subcommand == "reproduce-examples") {
    reproduce_examples_cmd(c, a);
  } else if (c.subcommand == "simulate-regret") {
    simulate_regret_cmd(c, a);
  } else {
    throw ValidationError("unknown subcommand '" + c.subcommand + "'");
  }
  a.flush(out);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Constrained classification and policy learning with exact hinge-loss fits",
               "isoclass"};
  app.require_subcommand(1);

  auto io = [&](CLI::App* sub, bool needs_in) {
    auto* in = sub->add_option("--in", c.input, "Input CSV");
    if (needs_in) in->required();
    sub->add_option("--out", c.output, "Output path (default: stdout)");
    sub->add_option("--summary", c.summary, "Write a JSON run summary here");
  };
  auto sample_flags = [&](CLI::App* sub) {
    sub->add_flag("--float", c.float_mode, "Round decimal weights to binary64 on input");
  };

  auto* fm = app.add_subcommand("fit-monotone", "Fit the exact monotone hinge classifier");
  io(fm, true);
  sample_flags(fm);
  fm->add_flag("--compact", c.compact, "Store only the boundary support points");

  auto* fb = app.add_subcommand("fit-bernstein", "Fit the Bernstein sieve classifier");
  io(fb, true);
  sample_flags(fb);
  fb->add_option("--orders", c.orders, "k1,...,kd or auto")->required();
  fb->add_flag("--rescale", c.rescale, "Map covariates into the unit cube first");
  fb->add_flag("--binarize", c.binarize, "Replace coefficients by their signs");

  auto* pr = app.add_subcommand("predict", "Predict labels with a saved model");
  io(pr, true);
  pr->add_option("--model", c.model, "Model JSON")->required();

  auto* pw = app.add_subcommand("policy-weights", "Turn trial records into a weighted sample");
  io(pw, true);
  pw->add_option("--kappa", c.kappa, "Overlap bound")->check(CLI::Range(0.0, 0.5));
  pw->add_option("--propensity", c.propensity, "Constant propensity when e is absent")
      ->check(CLI::Range(0.0, 1.0));

  auto* pf = app.add_subcommand("policy-fit", "Fit a monotone treatment policy");
  io(pf, true);
  pf->add_option("--kappa", c.kappa, "Overlap bound")->check(CLI::Range(0.0, 0.5));
  pf->add_option("--propensity", c.propensity, "Constant propensity when e is absent")
      ->check(CLI::Range(0.0, 1.0));
  pf->add_flag("--compact", c.compact, "Store only the boundary support points");

  auto* ct = app.add_subcommand("calibration-table", "Compare set-risk orderings across losses");
  io(ct, false);
  ct->add_option("--losses", c.losses, "Comma-separated losses");
  ct->add_option("--example", c.example, "Use built-in example 1 or 2");
  ct->add_option("--node-limit", c.node_limit, "Maximum support size to enumerate")
      ->check(CLI::Range(1, 64));

  auto* re = app.add_subcommand("reproduce-examples", "Reproduce the two worked examples");
  re->add_option("--out-dir", c.out_dir, "Write report, tables and summary here");
  re->add_option("--summary", c.summary, "Write a JSON run summary here");

  auto* sr = app.add_subcommand("simulate-regret", "Monte Carlo regret curve");
  sr->add_option("--out", c.output, "Curve CSV (default: stdout)");
  sr->add_option("--summary", c.summary, "Write a JSON run summary here");
  sr->add_option("--dgp", c.dgp, "step or linear");
  sr->add_option("--ns", c.ns, "Comma-separated sample sizes");
  sr->add_option("--reps", c.reps, "Replications per size")->check(CLI::PositiveNumber);
  sr->add_option("--seed", c.seed, "Base seed");
  sr->add_option("--d", c.dim, "Covariate dimension")->check(CLI::PositiveNumber);
  sr->add_option("--estimator", c.estimator, "monotone or bernstein");
  sr->add_option("--orders", c.orders, "Bernstein orders (default: suggested)");
  sr->add_option("--mc-points", c.mc_points, "Quasi-random points for d >= 2")
      ->check(CLI::PositiveNumber);
  sr->add_option("--threads", c.threads, "Worker threads (0 = auto)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }
  c.subcommand = app.get_subcommands().front()->get_name();

  try {
    run(c, out);
    return 0;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace isoclass::cli
