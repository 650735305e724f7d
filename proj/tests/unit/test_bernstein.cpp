#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "generators.hpp"
#include "isoclass/bernstein.hpp"
#include "isoclass/errors.hpp"
#include "isoclass/risk.hpp"
#include "oracles.hpp"

using namespace isoclass;

namespace {

double hinge_of(const BernsteinClassifier& m, const WeightedSample& s) {
  std::vector<double> f;
  for (std::size_t i = 0; i < s.size(); ++i) f.push_back(m.evaluate(s.x(i)));
  return empirical_risk(f, s, LossKind::hinge());
}

// Random lattice-monotone theta: a max of shifted monotone ramps, clipped.
std::vector<double> random_monotone_theta(gen::Rng& rng, const std::vector<int>& orders) {
  const DominanceDag lattice = DominanceDag::lattice(orders);
  std::vector<double> w(orders.size());
  for (double& v : w) v = gen::uniform(rng, 0, 1);
  const double shift = gen::uniform(rng, -1, 1);
  std::vector<double> theta;
  for (const Point& j : lattice.nodes()) {
    double s = shift;
    for (std::size_t v = 0; v < j.size(); ++v) s += w[v] * j[v] / orders[v];
    theta.push_back(std::clamp(s, -1.0, 1.0));
  }
  return theta;
}

}  // namespace

TEST(Basis, Examples) {
  EXPECT_DOUBLE_EQ(bernstein_basis(2, 1, 0.5), 0.5);
  for (int k = 0; k <= 10; ++k) EXPECT_EQ(bernstein_basis(k, 0, 0.0), 1.0);
  double sum = 0;
  for (int j = 0; j <= 3; ++j) sum += bernstein_basis(3, j, 0.3);
  EXPECT_NEAR(sum, 1.0, 1e-15);
}

TEST(Basis, RejectsBadArguments) {
  EXPECT_THROW(bernstein_basis(3, 4, 0.5), std::domain_error);
  EXPECT_THROW(bernstein_basis(3, -1, 0.5), std::domain_error);
  EXPECT_THROW(bernstein_basis(3, 1, 1.5), std::domain_error);
  EXPECT_THROW(bernstein_basis(3, 1, NAN), std::domain_error);
}

TEST(Basis, MatchesBinomialFormula) {
  gen::Rng rng(61);
  for (int t = 0; t < 500; ++t) {
    const int k = static_cast<int>(gen::uniform_int(rng, 1, 40));
    const int j = static_cast<int>(gen::uniform_int(rng, 0, k));
    const double x = gen::uniform(rng);
    const double want = oracle::binomial(k, j) * std::pow(x, j) * std::pow(1 - x, k - j);
    EXPECT_NEAR(bernstein_basis(k, j, x), want, 1e-13 * std::max(1.0, want));
  }
}

TEST(Basis, PartitionOfUnity) {
  gen::Rng rng(62);
  for (int t = 0; t < 300; ++t) {
    const std::size_t d = gen::uniform_int(rng, 1, 3);
    std::vector<int> orders(d);
    for (int& k : orders) k = static_cast<int>(gen::uniform_int(rng, 1, 30));
    const BernsteinClassifier ones(orders, std::vector<double>(lattice_size(orders), 1.0));
    Point x(d);
    for (double& v : x) v = gen::uniform(rng);
    EXPECT_NEAR(ones.evaluate(x), 1.0, 1e-12);
  }
  const std::vector<double> wide = bernstein_basis_all(500, 0.37);
  EXPECT_NEAR(std::accumulate(wide.begin(), wide.end(), 0.0), 1.0, 1e-12);
}

TEST(Evaluate, Examples) {
  const BernsteinClassifier lin({1}, {-1.0, 1.0});
  EXPECT_DOUBLE_EQ(lin.evaluate(Point{0.75}), 0.5);
  EXPECT_EQ(lin.predict(Point{0.5}), 1);
  const BernsteinClassifier neg({3, 2}, std::vector<double>(12, -1.0));
  EXPECT_EQ(neg.predict(Point{0.9, 0.9}), -1);
  EXPECT_THROW(lin.evaluate(Point{0.1, 0.2}), std::invalid_argument);
}

TEST(Evaluate, ClampsOutsideCube) {
  const BernsteinClassifier lin({1}, {-1.0, 1.0});
  EXPECT_EQ(lin.evaluate(Point{1.7}), 1.0);
  EXPECT_EQ(lin.evaluate(Point{-3}), -1.0);
}

TEST(Evaluate, MonotoneWhenThetaIsLatticeMonotone) {
  gen::Rng rng(63);
  for (int t = 0; t < 50; ++t) {
    const std::vector<int> orders{static_cast<int>(gen::uniform_int(rng, 1, 6)),
                                  static_cast<int>(gen::uniform_int(rng, 1, 6))};
    const BernsteinClassifier m(orders, random_monotone_theta(rng, orders));
    for (int k = 0; k < 100; ++k) {
      const Point a{gen::uniform(rng), gen::uniform(rng)};
      const Point b{std::min(1.0, a[0] + gen::uniform(rng, 0, 0.3)),
                    std::min(1.0, a[1] + gen::uniform(rng, 0, 0.3))};
      EXPECT_LE(m.evaluate(a), m.evaluate(b) + 1e-12);
      EXPECT_LE(m.predict(a), m.predict(b));
    }
  }
}

TEST(Classifier, RejectsBadTheta) {
  EXPECT_THROW(BernsteinClassifier({1}, {1.0, -1.0}), ValidationError);
  EXPECT_THROW(BernsteinClassifier({1}, {-1.0, 1.5}), ValidationError);
  EXPECT_THROW(BernsteinClassifier({2}, {-1.0, 1.0}), ValidationError);
  EXPECT_THROW(BernsteinClassifier({0}, {1.0}), ValidationError);
}

TEST(Fit, LinearTwoPoints) {
  const WeightedSample s = WeightedSample::unweighted({-1, 1}, {{0.0}, {1.0}});
  EXPECT_EQ(bernstein_coefficients(s, {1}), (std::vector<double>{-1.0, 1.0}));
  EXPECT_EQ(fit_bernstein(s, {1}).theta(), (std::vector<double>{-1.0, 1.0}));
}

TEST(Fit, AllPositiveLabels) {
  gen::Rng rng(64);
  WeightedSample s(2);
  for (int i = 0; i < 20; ++i) s.add_row(Rational(1), 1, Point{gen::uniform(rng), gen::uniform(rng)});
  const BernsteinClassifier m = fit_bernstein(s, {3, 2});
  for (double t : m.theta()) EXPECT_EQ(t, 1.0);
}

TEST(Fit, CornerPoints) {
  const WeightedSample s =
      WeightedSample::unweighted({-1, 1, 1, 1}, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  const BernsteinClassifier m = fit_bernstein(s, {1, 1});
  EXPECT_TRUE(is_lattice_monotone({1, 1}, m.theta()));
  const IsotoneSolution brute = brute_force_solve(bernstein_problem(s, {1, 1}));
  EXPECT_EQ(m.theta(), std::vector<double>(brute.values.begin(), brute.values.end()));
  EXPECT_EQ(m.theta(), (std::vector<double>{-1, 1, 1, 1}));
}

TEST(Fit, RejectsOutsideCubeAndBadOrders) {
  const WeightedSample s = WeightedSample::unweighted({-1, 1}, {{0.0}, {1.5}});
  EXPECT_THROW(fit_bernstein(s, {2}), ValidationError);
  const WeightedSample ok = WeightedSample::unweighted({-1, 1}, {{0.0}, {0.5}});
  EXPECT_THROW(fit_bernstein(ok, {0}), ValidationError);
  EXPECT_THROW(fit_bernstein(ok, {501}), ValidationError);
  EXPECT_THROW(fit_bernstein(ok, {2, 2}), ValidationError);
  EXPECT_THROW(fit_bernstein(WeightedSample(1), {2}), ValidationError);
}

TEST(Fit, ThetaMonotoneAndValuesBounded) {
  gen::Rng rng(65);
  for (int t = 0; t < 20; ++t) {
    const std::size_t d = gen::uniform_int(rng, 1, 3);
    const WeightedSample s = gen::cube_sample(rng, 80, d);
    std::vector<int> orders(d);
    for (int& k : orders) k = static_cast<int>(gen::uniform_int(rng, 1, d == 1 ? 20 : 5));
    const BernsteinClassifier m = fit_bernstein(s, orders);
    EXPECT_TRUE(is_lattice_monotone(orders, m.theta()));
    EXPECT_TRUE(m.binarized());
    for (int k = 0; k < 50; ++k) {
      Point x(d);
      for (double& v : x) v = gen::uniform(rng);
      const double f = m.evaluate(x);
      EXPECT_GE(f, -1.0 - 1e-12);
      EXPECT_LE(f, 1.0 + 1e-12);
    }
  }
}

TEST(Fit, ObjectiveMatchesBruteForceOnSmallLattices) {
  gen::Rng rng(66);
  const std::vector<std::vector<int>> shapes{{11}, {1, 1}, {2, 1}, {2, 2}, {1, 5}, {1, 1, 1}, {3, 2}};
  for (int t = 0; t < 70; ++t) {
    const std::vector<int>& orders = shapes[t % shapes.size()];
    const WeightedSample s = gen::cube_sample(rng, gen::uniform_int(rng, 1, 25), orders.size());
    const IsotoneProblem p = bernstein_problem(s, orders);
    const IsotoneSolution brute = brute_force_solve(p);
    const IsotoneSolution fast = solve(p);
    EXPECT_EQ(fast.objective, brute.objective);
    EXPECT_EQ(fast.values, brute.values);
  }
}

TEST(Binarize, Examples) {
  EXPECT_EQ(binarize(BernsteinClassifier({1}, {-0.2, 0.7})).theta(), (std::vector<double>{-1, 1}));
  const BernsteinClassifier pm({1}, {-1, 1});
  EXPECT_EQ(binarize(pm).theta(), pm.theta());
  const BernsteinClassifier zero = binarize(BernsteinClassifier({1}, {0.0, 0.5}));
  EXPECT_EQ(zero.theta(), (std::vector<double>{1, 1}));
  EXPECT_TRUE(is_lattice_monotone({1}, zero.theta()));
}

TEST(Binarize, IdempotentAndNotWorseOnFits) {
  gen::Rng rng(67);
  for (int t = 0; t < 30; ++t) {
    const WeightedSample s = gen::cube_sample(rng, 40, 2);
    const std::vector<int> orders{3, 3};
    const BernsteinClassifier fit = fit_bernstein(s, orders);
    const BernsteinClassifier b = binarize(fit);
    EXPECT_EQ(binarize(b).theta(), b.theta());
    EXPECT_LE(hinge_of(b, s), hinge_of(fit, s) + 1e-12);
    for (int k = 0; k < 100; ++k) {
      const BernsteinClassifier other(orders, random_monotone_theta(rng, orders));
      EXPECT_LE(hinge_of(b, s), hinge_of(other, s) + 1e-12);
    }
  }
}

TEST(Scaling, RoundTripsThroughUnitCube) {
  WeightedSample s(2);
  s.add_row(Rational(1), -1, Point{10, -4});
  s.add_row(Rational(1), 1, Point{20, 6});
  const CubeScaling sc = CubeScaling::fit(s);
  EXPECT_EQ(sc.apply(Point{10, -4}), (Point{0, 0}));
  EXPECT_EQ(sc.apply(Point{20, 6}), (Point{1, 1}));
  EXPECT_EQ(sc.apply(Point{15, 1}), (Point{0.5, 0.5}));
  EXPECT_FALSE(sc.is_identity());
  EXPECT_TRUE(CubeScaling::identity(2).is_identity());
}

TEST(SuggestOrders, SmallSamplesGetOrderOne) {
  EXPECT_EQ(suggest_orders(2, 1), (std::vector<int>{1}));
  EXPECT_THROW(suggest_orders(1, 1), ValidationError);
}

TEST(SuggestOrders, SmallestOrderMeetingRate) {
  for (std::size_t n : {10, 50, 100, 400, 1600, 10000, 100000}) {
    const double rate = bernstein_rate(n, 1);
    const int k = suggest_orders(n, 1).front();
    if (rate >= std::exp(-0.5)) {
      EXPECT_EQ(k, 1);
      continue;
    }
    if (k == kMaxBernsteinOrder) continue;
    EXPECT_LE(std::sqrt(std::log(k) / k), rate) << n;
    EXPECT_GT(std::sqrt(std::log(k - 1.0) / (k - 1.0)), rate) << n;
  }
}

TEST(SuggestOrders, NondecreasingInNAndCapped) {
  for (std::size_t d = 1; d <= 4; ++d) {
    std::vector<int> prev = suggest_orders(2, d);
    for (std::size_t n = 3; n < 5000; n += 1 + n / 10) {
      const std::vector<int> cur = suggest_orders(n, d);
      ASSERT_EQ(cur.size(), d);
      EXPECT_GE(cur.front(), prev.front()) << "n=" << n << " d=" << d;
      EXPECT_LE(lattice_size(cur), kMaxBernsteinIndices);
      prev = cur;
    }
  }
}
