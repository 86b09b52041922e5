#include <cmath>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "synthbench/featsel/information.hpp"
#include "synthbench/featsel/selection.hpp"
#include "synthbench/util/error.hpp"
#include "test_support.hpp"

using namespace synthbench;

namespace {

// Independent plug-in MI: count value pairs directly with ordered maps.
double brute_force_mi(const std::vector<double>& x, const std::vector<double>& y) {
  std::map<double, double> px, py;
  std::map<std::pair<double, double>, double> pxy;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    px[x[i]] += 1 / n;
    py[y[i]] += 1 / n;
    pxy[{x[i], y[i]}] += 1 / n;
  }
  double mi = 0;
  for (const auto& [k, p] : pxy) mi += p * std::log(p / (px[k.first] * py[k.second]));
  return mi;
}

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace

TEST(Entropy, ConstantIsZero) { EXPECT_EQ(entropy(Eigen::VectorXd::Constant(50, 3.0), 8), 0.0); }

TEST(Entropy, FairBinaryIsLn2) {
  Eigen::VectorXd x(1000);
  for (Index i = 0; i < 1000; ++i) x[i] = i % 2;
  EXPECT_DOUBLE_EQ(entropy(x, 64), std::log(2.0));
}

TEST(Entropy, HandComputedExactValues) {
  const double expected = -(0.5 * std::log(0.5) + 2 * 0.25 * std::log(0.25));
  EXPECT_NEAR(entropy(vec({1, 1, 2, 3}), 8), expected, 1e-15);
  EXPECT_NEAR(expected, 1.0397, 1e-4);
}

TEST(Entropy, EmptyIsAnError) { EXPECT_THROW(entropy(Eigen::VectorXd(0), 4), ArgumentError); }

TEST(Discretize, EqualFrequencyBins) {
  Eigen::VectorXd x(100);
  for (Index i = 0; i < 100; ++i) x[i] = static_cast<double>((i * 37) % 100);
  const auto d = discretize(x, 4);
  EXPECT_EQ(d.levels, 4);
  std::vector<int> counts(4, 0);
  for (int c : d.codes) ++counts[static_cast<std::size_t>(c)];
  EXPECT_EQ(counts, (std::vector<int>{25, 25, 25, 25}));
  EXPECT_NEAR(entropy(d), std::log(4.0), 1e-12);
}

TEST(Discretize, HeavyAtomKeepsOneBin) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(100);
  for (Index i = 90; i < 100; ++i) x[i] = static_cast<double>(i);
  const auto d = discretize(x, 4);
  for (Index i = 0; i < 90; ++i) EXPECT_EQ(d.codes[static_cast<std::size_t>(i)], 0);
  EXPECT_GT(d.codes[99], 0);
}

TEST(MutualInformation, MatchesBruteForceOnExactValues) {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<int> u(0, 4);
  std::vector<double> x(500), y(500);
  Eigen::VectorXd ex(500), ey(500);
  for (int i = 0; i < 500; ++i) {
    x[i] = ex[i] = u(gen);
    y[i] = ey[i] = (u(gen) + static_cast<int>(x[i])) % 3;
  }
  EXPECT_NEAR(mutual_information(ex, ey, 8).mi, brute_force_mi(x, y), 1e-12);
}

TEST(MutualInformation, SelfInformationEqualsEntropy) {
  Eigen::VectorXd x(400);
  std::mt19937_64 gen(1);
  std::lognormal_distribution<double> ln(0.0, 2.0);
  for (Index i = 0; i < x.size(); ++i) x[i] = ln(gen);
  const auto d = discretize(x, 20);
  const auto e = mutual_information(d, d);
  EXPECT_EQ(e.mi, e.h_x);
  Eigen::VectorXd b(6);
  b << 0, 1, 1, 0, 1, 1;
  const auto eb = mutual_information(b, b, 4);
  EXPECT_EQ(eb.mi, entropy(b, 4));
}

TEST(MutualInformation, IndependentCoinsNearZero) {
  std::mt19937_64 gen(77);
  Eigen::VectorXd x(1000000), y(1000000);
  for (Index i = 0; i < x.size(); ++i) {
    x[i] = static_cast<double>(gen() & 1);
    y[i] = static_cast<double>(gen() & 1);
  }
  EXPECT_LT(mutual_information(x, y, 2).mi, 0.002);
}

TEST(MutualInformation, LengthMismatch) {
  EXPECT_THROW(mutual_information(vec({1, 2}), vec({1}), 4), ArgumentError);
  EXPECT_THROW(information_gain(vec({1, 2}), vec({1}), 4), ArgumentError);
}

TEST(MutualInformation, PropertySymmetryIdentityAndGain) {
  std::mt19937_64 gen(2024);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 50 + trial * 13;
    Eigen::VectorXd x(n), y(n);
    for (Index i = 0; i < n; ++i) {
      x[i] = n01(gen);
      y[i] = (trial % 2) ? static_cast<double>(x[i] + n01(gen) > 0) : x[i] * x[i] + 0.3 * n01(gen);
    }
    const int bins = default_bins(n);
    const auto xy = mutual_information(x, y, bins);
    const auto yx = mutual_information(y, x, bins);
    EXPECT_NEAR(xy.mi, yx.mi, 1e-12);
    EXPECT_GE(xy.mi, 0.0);
    EXPECT_NEAR(xy.mi, xy.h_x + xy.h_y - xy.h_xy, 1e-12);
    EXPECT_NEAR(information_gain(y, x, bins), xy.mi, 1e-9);
    const auto xx = mutual_information(x, x, bins);
    EXPECT_EQ(xx.mi, xx.h_x);
  }
}

TEST(InformationGain, DegenerateCases) {
  EXPECT_EQ(information_gain(Eigen::VectorXd::Constant(10, 1.0), Eigen::VectorXd::LinSpaced(10, 0, 9), 4), 0.0);
  Eigen::VectorXd b(8);
  b << 0, 1, 0, 1, 0, 1, 0, 1;
  EXPECT_NEAR(information_gain(b, b, 4), std::log(2.0), 1e-15);
}

TEST(Pearson, HandComputed) {
  EXPECT_NEAR(*pearson_correlation(vec({1, 2, 3, 4}), vec({2, 1, 4, 3})), 0.6, 1e-15);
  const auto x = vec({0.5, 1, 7, -2, 3});
  EXPECT_NEAR(*pearson_correlation(x, (2 * x.array() + 3).matrix()), 1.0, 1e-15);
  EXPECT_NEAR(*pearson_correlation(x, (-x).eval()), -1.0, 1e-15);
  EXPECT_FALSE(pearson_correlation(x, Eigen::VectorXd::Constant(5, 2.0)).has_value());
}

TEST(Pearson, AffineInvariance) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> n01;
  for (int t = 0; t < 20; ++t) {
    Eigen::VectorXd x(200), y(200);
    for (Index i = 0; i < 200; ++i) {
      x[i] = n01(gen);
      y[i] = 0.5 * x[i] + n01(gen);
    }
    const double r = *pearson_correlation(x, y);
    EXPECT_NEAR(*pearson_correlation((3.5 * x.array() - 11).matrix(), y), r, 1e-12);
    EXPECT_NEAR(*pearson_correlation(x, (0.01 * y.array() + 4).matrix()), r, 1e-12);
    EXPECT_LE(std::abs(r), 1.0);
  }
}

TEST(Selection, FeatureEqualToTargetRanksFirst) {
  auto d = test::make_table(400, 8, 0.3, 12, 0.2);
  Eigen::MatrixXd v = d.values();
  v.col(5) = v.col(8);
  auto schema = d.schema();
  schema[5] = infer_numeric_schema("leak", v.col(5));
  d = Dataset(schema, v, 8);
  const auto sel = select_top_quartile(d);
  EXPECT_EQ(sel.ranking.entries.front().feature, "leak");
  EXPECT_EQ(sel.ranking.entries.size(), 8u);
  EXPECT_EQ(sel.reduced.cols(), 3);
  EXPECT_EQ(sel.reduced.names().front(), "leak");
  EXPECT_EQ(sel.reduced.names().back(), "target");
  EXPECT_EQ(sel.reduced.target(), 2);
}

TEST(Selection, IndependentOfColumnOrderAndTiesByName) {
  const auto d = test::make_table(300, 9, 0.4, 13);
  std::vector<Index> perm{4, 2, 9, 0, 8, 1, 7, 3, 6, 5};
  const auto p = d.select_columns(perm);
  const auto a = select_top_quartile(d);
  const auto b = select_top_quartile(p);
  EXPECT_EQ(a.reduced.names(), b.reduced.names());
  EXPECT_EQ(a.ranking.to_csv(), b.ranking.to_csv());
  // duplicate columns tie; the lexically smaller name comes first
  Eigen::MatrixXd v(20, 5);
  v.setZero();
  for (Index i = 0; i < 20; ++i) v(i, 4) = i % 2;
  std::vector<ColumnSchema> s;
  for (const char* n : {"b", "a", "d", "c"}) s.push_back(infer_numeric_schema(n, v.col(0)));
  s.push_back(infer_numeric_schema("target", v.col(4)));
  const auto r = rank_features(Dataset(s, v, 4));
  EXPECT_EQ(r.entries[0].feature, "a");
  EXPECT_EQ(r.entries[3].feature, "d");
}

TEST(Selection, CountsAndErrors) {
  EXPECT_EQ(quartile_count(123), 31u);
  EXPECT_EQ(quartile_count(77), 20u);
  EXPECT_EQ(quartile_count(4), 1u);
  EXPECT_THROW(select_top_quartile(test::make_table(50, 3, 0.5, 1)), DataError);
  const auto sel = select_top_quartile(test::make_table(100, 40, 0.5, 1), 25);
  EXPECT_EQ(sel.reduced.cols(), 26);
}

TEST(Selection, RankingCsvRoundTrip) {
  const auto r = rank_features(test::make_table(100, 6, 0.5, 2));
  const auto back = MiRanking::from_csv(r.to_csv());
  ASSERT_EQ(back.entries.size(), r.entries.size());
  for (std::size_t k = 0; k < r.entries.size(); ++k) {
    EXPECT_EQ(back.entries[k].feature, r.entries[k].feature);
    EXPECT_EQ(back.entries[k].score, r.entries[k].score);
  }
}
