#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "generators.hpp"
#include "isoclass/io.hpp"
#include "isoclass_cli/cli.hpp"
#include "json.hpp"

using namespace isoclass;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "isoclass");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("isoclass_cli_" + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    write_file_atomic(dir_ / name, text);
    return path(name);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, ReproduceExamples) {
  const Result r = run({"reproduce-examples", "--out-dir", path("rep")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("14/30"), std::string::npos);
  EXPECT_NE(r.out.find("8/15"), std::string::npos);
  for (const char* f : {"report.txt", "example_1_calibration.csv", "example_2_calibration.csv",
                        "summary.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / "rep" / f)) << f;
  }
  const auto summary = nlohmann::json::parse(read_file(dir_ / "rep" / "summary.json"));
  EXPECT_EQ(summary["example_1"]["optimum"]["risk"], "7/15");
  EXPECT_EQ(summary["example_2"]["linear_hinge"]["risk"], "8/15");
}

TEST_F(CliTest, FitThenPredictMatchesInSample) {
  gen::Rng rng(101);
  const WeightedSample s = gen::sample(rng, 50, 2, false, 5);
  std::string train = "y,x1,x2\n", pts = "x1,x2\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::string x = std::to_string(s.x(i)[0]) + "," + std::to_string(s.x(i)[1]);
    train += std::to_string(s.label(i)) + "," + x + "\n";
    pts += x + "\n";
  }
  write("train.csv", train);
  write("pts.csv", pts);
  const Result fit = run({"fit-monotone", "--in", path("train.csv"), "--out", path("m.json"),
                          "--summary", path("s.json")});
  ASSERT_EQ(fit.code, 0) << fit.err;
  EXPECT_NE(fit.out.find("monotone fit: n=50"), std::string::npos);
  const Result pred = run({"predict", "--model", path("m.json"), "--in", path("pts.csv")});
  ASSERT_EQ(pred.code, 0) << pred.err;
  const MonotoneClassifier m = std::get<MonotoneClassifier>(load_model(path("m.json")));
  std::string expected = "prediction\n";
  for (std::size_t i = 0; i < s.size(); ++i) expected += std::to_string(m.predict(s.x(i))) + "\n";
  EXPECT_EQ(pred.out, expected);
  const auto summary = nlohmann::json::parse(read_file(path("s.json")));
  EXPECT_EQ(summary["command"], "fit-monotone");
  EXPECT_EQ(summary["n"], 50);
}

TEST_F(CliTest, FitBernsteinAndBadOrders) {
  write("cube.csv", "y,x1,x2\n1,0.9,0.8\n-1,0.1,0.2\n1,0.7,0.4\n-1,0.3,0.1\n");
  EXPECT_EQ(run({"fit-bernstein", "--in", path("cube.csv"), "--orders", "2,2"}).code, 0);
  const Result bad = run({"fit-bernstein", "--in", path("cube.csv"), "--orders", "0,3",
                          "--out", path("b.json")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("Bernstein order must be >= 1, got 0"), std::string::npos) << bad.err;
  EXPECT_FALSE(fs::exists(path("b.json")));
  write("wide.csv", "y,x1\n1,3\n-1,0\n");
  const Result outside = run({"fit-bernstein", "--in", path("wide.csv"), "--orders", "2"});
  EXPECT_EQ(outside.code, 2);
  EXPECT_NE(outside.err.find("rescale"), std::string::npos) << outside.err;
  EXPECT_EQ(run({"fit-bernstein", "--in", path("wide.csv"), "--orders", "2", "--rescale"}).code,
            0);
}

TEST_F(CliTest, UsageErrors) {
  const Result unknown = run({"frobnicate"});
  EXPECT_EQ(unknown.code, 2);
  EXPECT_NE(unknown.err.find("Usage"), std::string::npos) << unknown.err;
  EXPECT_EQ(run({"fit-monotone", "--bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"policy-weights", "--in", "x.csv", "--kappa", "0.7"}).code, 2);
  const Result help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("simulate-regret"), std::string::npos);
}

TEST_F(CliTest, ErrorsWriteNothing) {
  write("neg.csv", "w,y,x1\n1,1,0\n-1,1,1\n");
  const Result r = run({"fit-monotone", "--in", path("neg.csv"), "--out", path("m.json"),
                        "--summary", path("s.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("row 2 has negative weight"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(path("m.json")));
  EXPECT_FALSE(fs::exists(path("s.json")));
  const Result missing = run({"fit-monotone", "--in", path("absent.csv"), "--out", path("m.json")});
  EXPECT_NE(missing.code, 0);
  EXPECT_FALSE(fs::exists(path("m.json")));
}

TEST_F(CliTest, PolicyCommands) {
  write("trial.csv", "z,d,x1\n2,1,0\n-1,-1,1\n0.5,1,2\n3,-1,3\n");
  const Result w = run({"policy-weights", "--in", path("trial.csv"), "--propensity", "0.5"});
  ASSERT_EQ(w.code, 0) << w.err;
  EXPECT_EQ(w.out.substr(0, w.out.find('\n')), "w,y,x1");
  EXPECT_EQ(run({"policy-weights", "--in", path("trial.csv")}).code, 2);
  const Result f = run({"policy-fit", "--in", path("trial.csv"), "--propensity", "0.5",
                        "--out", path("p.json")});
  ASSERT_EQ(f.code, 0) << f.err;
  EXPECT_NE(f.out.find("estimated welfare"), std::string::npos);
}

TEST_F(CliTest, CalibrationTable) {
  const Result r = run({"calibration-table", "--example", "1", "--losses", "zero-one,hinge,exp",
                        "--out", path("t.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("zero-one vs hinge: orderings agree"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("zero-one vs exp: orderings differ"), std::string::npos) << r.out;
  EXPECT_EQ(run({"calibration-table"}).code, 2);
  write("d.csv", "mass,eta,x1\n1/2,0.3,0\n1/2,0.8,1\n");
  EXPECT_EQ(run({"calibration-table", "--in", path("d.csv")}).code, 0);
}

TEST_F(CliTest, SimulateRegret) {
  const Result r = run({"simulate-regret", "--ns", "20,40", "--reps", "3", "--summary",
                        path("s.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,mean_regret,se,reps");
  const auto summary = nlohmann::json::parse(read_file(path("s.json")));
  EXPECT_EQ(summary["points"].size(), 2u);
  EXPECT_TRUE(summary["exact"].get<bool>());
  EXPECT_EQ(run({"simulate-regret", "--dgp", "wavy"}).code, 2);
  EXPECT_EQ(run({"simulate-regret", "--ns", "10", "--reps", "2", "--d", "2", "--mc-points", "500",
                 "--dgp", "linear"})
                .code,
            0);
}
