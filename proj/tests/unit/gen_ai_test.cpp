#include <cmath>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "synthbench/gen_ai/bayes_net.hpp"
#include "synthbench/gen_ai/condition.hpp"
#include "synthbench/gen_ai/copula.hpp"
#include "synthbench/gen_ai/ctgan.hpp"
#include "synthbench/gen_ai/diffusion.hpp"
#include "synthbench/gen_ai/mode_normalizer.hpp"
#include "synthbench/gen_ai/tabular_codec.hpp"
#include "synthbench/gen_ai/tvae.hpp"
#include "synthbench/util/error.hpp"
#include "synthbench/util/log.hpp"
#include "test_support.hpp"

using namespace synthbench;

namespace {

Dataset table_of(const Eigen::MatrixXd& m, const std::vector<std::string>& names, Index target) {
  std::vector<ColumnSchema> s;
  for (Index j = 0; j < m.cols(); ++j) s.push_back(infer_numeric_schema(names[static_cast<std::size_t>(j)], m.col(j)));
  return Dataset(s, m, target);
}

/// Mixed table: two numerics, one binary feature, binary target.
Dataset mixed_table(Index n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd m(n, 4);
  for (Index i = 0; i < n; ++i) {
    const double y = u(gen) < 0.3 ? 1.0 : 0.0;
    m(i, 0) = 5.0 + z(gen) + 2.0 * y;
    m(i, 1) = std::exp(z(gen));
    m(i, 2) = u(gen) < (y > 0 ? 0.8 : 0.2) ? 1.0 : 0.0;
    m(i, 3) = y;
  }
  return table_of(m, {"a", "b", "flag", "target"}, 3);
}

double skewness(const Eigen::VectorXd& x) {
  const double mu = x.mean();
  const double var = (x.array() - mu).square().mean();
  return (x.array() - mu).cube().mean() / std::pow(var, 1.5);
}

double kurtosis(const Eigen::VectorXd& x) {
  const double mu = x.mean();
  const double var = (x.array() - mu).square().mean();
  return (x.array() - mu).pow(4).mean() / (var * var);
}

void expect_same_schema(const Dataset& a, const Dataset& b) {
  ASSERT_EQ(a.cols(), b.cols());
  for (Index j = 0; j < a.cols(); ++j) {
    EXPECT_EQ(a.column(j).name, b.column(j).name);
    EXPECT_EQ(a.column(j).kind, b.column(j).kind);
  }
  EXPECT_EQ(a.target(), b.target());
}

void expect_binary_target(const Dataset& d) {
  for (Index i = 0; i < d.rows(); ++i) {
    const double y = d.values()(i, d.target());
    ASSERT_TRUE(y == 0.0 || y == 1.0) << "row " << i;
  }
}

}  // namespace

TEST(ModeNormalizer, OwnModeRoundTripAndWeights) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> a(-3.0, 0.5), b(4.0, 2.0);
  Eigen::VectorXd x(4000);
  for (Index i = 0; i < x.size(); ++i) x[i] = i % 3 ? a(gen) : b(gen);
  const auto mn = ModeNormalizer::fit(x, {});
  double total = 0.0;
  for (const auto& m : mn.modes()) total += m.weight;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_LE(mn.size(), 10);
  for (Index i = 0; i < x.size(); ++i) {
    const auto code = mn.encode(x[i]);
    EXPECT_EQ(code.mode, mn.responsible_mode(x[i]));
    ASSERT_NEAR(mn.decode(code.alpha, code.mode), x[i], 1e-6);
  }
}

TEST(ModeNormalizer, SeparatesTwoModes) {
  std::mt19937_64 gen(2);
  std::normal_distribution<double> a(0.0, 0.1), b(10.0, 0.1);
  Eigen::VectorXd x(2000);
  for (Index i = 0; i < x.size(); ++i) x[i] = i % 2 ? a(gen) : b(gen);
  const auto mn = ModeNormalizer::fit(x, {});
  ASSERT_GE(mn.size(), 2);
  EXPECT_NE(mn.responsible_mode(0.0), mn.responsible_mode(10.0));
}

TEST(Copula, RoundTripWithinHalfRankGap) {
  std::mt19937_64 gen(3);
  std::exponential_distribution<double> e(1.0);
  Eigen::VectorXd x(3000);
  for (Index i = 0; i < x.size(); ++i) x[i] = std::round(e(gen) * 100.0) / 10.0;
  const auto m = CopulaMarginal::fit(x);
  const auto& knots = m.knots();
  for (std::size_t k = 0; k < knots.size(); ++k) {
    double gap = std::numeric_limits<double>::infinity();
    if (k > 0) gap = std::min(gap, knots[k] - knots[k - 1]);
    if (k + 1 < knots.size()) gap = std::min(gap, knots[k + 1] - knots[k]);
    ASSERT_LE(std::abs(m.from_score(m.to_score(knots[k])) - knots[k]), 0.5 * gap);
  }
  EXPECT_EQ(m.from_score(40.0), knots.back());
  EXPECT_EQ(m.from_score(-40.0), knots.front());
}

TEST(Copula, MidRankCdfByHand) {
  Eigen::VectorXd x(4);
  x << 2.0, 1.0, 2.0, 5.0;
  const auto m = CopulaMarginal::fit(x);
  // ranks: 1 -> 1, 2 -> (2+3)/2 = 2.5, 5 -> 4; divided by n + 1 = 5
  ASSERT_EQ(m.cdf().size(), 3u);
  EXPECT_DOUBLE_EQ(m.cdf()[0], 0.2);
  EXPECT_DOUBLE_EQ(m.cdf()[1], 0.5);
  EXPECT_DOUBLE_EQ(m.cdf()[2], 0.8);
  EXPECT_NEAR(m.to_score(2.0), 0.0, 1e-12);
}

TEST(Copula, UniformColumnScoresAreNormal) {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::VectorXd x(100000);
  for (Index i = 0; i < x.size(); ++i) x[i] = u(gen);
  const auto m = CopulaMarginal::fit(x);
  Eigen::VectorXd z(x.size());
  for (Index i = 0; i < x.size(); ++i) z[i] = m.to_score(x[i]);
  EXPECT_NEAR(z.mean(), 0.0, 0.01);
  EXPECT_LT(std::abs(skewness(z)), 0.1);
  EXPECT_LT(std::abs(kurtosis(z) - 3.0), 0.3);
}

TEST(Copula, TransformKeepsBinaryAndRejectsCategorical) {
  const auto d = mixed_table(500, 5);
  const auto t = CopulaTransform::fit(d);
  const auto f = t.forward(d);
  EXPECT_EQ(f.col(2), d.col(2));
  const auto back = t.inverse(f, d);
  EXPECT_LT((back.values() - d.values()).cwiseAbs().maxCoeff(), 1e-9);
  auto schema = d.schema();
  schema[2].kind = ColumnKind::Categorical;
  schema[2].categories = {"x", "y"};
  EXPECT_THROW(CopulaTransform::fit(Dataset(schema, d.values(), d.target_index())), DataError);
}

TEST(TabularCodec, EncodedRowsAreValidAndDecodeBack) {
  const auto d = mixed_table(800, 6);
  const auto codec = TabularCodec::fit(d, {});
  const auto e = codec.encode(d);
  ASSERT_EQ(e.cols(), codec.width());
  for (const auto& s : codec.spans()) {
    if (s.kind != OutputSpan::Kind::Softmax) continue;
    for (Index i = 0; i < e.rows(); ++i) {
      ASSERT_DOUBLE_EQ(e.row(i).segment(s.start, s.width).sum(), 1.0);
      ASSERT_EQ((e.row(i).segment(s.start, s.width).array() == 1.0).count(), 1);
    }
  }
  const auto back = codec.decode(e, false);
  EXPECT_LT((back - d.values()).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(TabularCodec, ActivationGradientMatchesFiniteDifference) {
  const auto d = mixed_table(300, 7);
  const auto codec = TabularCodec::fit(d, {});
  std::mt19937_64 gen(8);
  std::normal_distribution<double> z(0.0, 1.0);
  Eigen::MatrixXd logits(3, codec.width()), weights(3, codec.width());
  for (Index i = 0; i < logits.size(); ++i) {
    logits.data()[i] = z(gen);
    weights.data()[i] = z(gen);
  }
  const auto loss = [&](const Eigen::MatrixXd& l) { return codec.activate(l).cwiseProduct(weights).sum(); };
  const auto grad = codec.activate_backward(codec.activate(logits), weights);
  for (Index i = 0; i < logits.size(); ++i) {
    Eigen::MatrixXd up = logits, down = logits;
    up.data()[i] += 1e-6;
    down.data()[i] -= 1e-6;
    EXPECT_NEAR(grad.data()[i], (loss(up) - loss(down)) / 2e-6, 1e-6);
  }
}

TEST(TabularCodec, GumbelArgmaxFollowsSoftmax) {
  const auto d = mixed_table(300, 40);
  const auto codec = TabularCodec::fit(d, {});
  const auto& block = codec.discrete().front();
  Eigen::MatrixXd logits = Eigen::MatrixXd::Zero(20000, codec.width());
  logits.col(block.offset + 1).setConstant(std::log(3.0));  // p(1) = 0.75
  Rng rng(41);
  const auto g = codec.activate_gumbel(logits, 0.2, rng);
  const double ones = (g.col(block.offset + 1).array() > g.col(block.offset).array()).cast<double>().mean();
  EXPECT_NEAR(ones, 0.75, 0.01);
  EXPECT_NEAR(g.middleCols(block.offset, 2).rowwise().sum().minCoeff(), 1.0, 1e-12);

  // With tau the backward pass carries the 1 / tau factor.
  Eigen::MatrixXd l(1, codec.width()), w(1, codec.width());
  for (Index j = 0; j < l.cols(); ++j) {
    l(0, j) = 0.1 * static_cast<double>(j % 5);
    w(0, j) = 1.0 - 0.3 * static_cast<double>(j % 3);
  }
  const auto scaled = [&](const Eigen::MatrixXd& x) { return codec.activate(x / 0.5).cwiseProduct(w).sum(); };
  const auto act = codec.activate(l / 0.5);
  auto grad = codec.activate_backward(act, w, 0.5);
  for (const auto& s : codec.spans())
    if (s.kind == OutputSpan::Kind::Scalar) grad(0, s.start) = w(0, s.start) / 0.5;
  for (Index j = 0; j < l.cols(); ++j) {
    Eigen::MatrixXd up = l, down = l;
    up(0, j) += 1e-6;
    down(0, j) -= 1e-6;
    EXPECT_NEAR(grad(0, j), (scaled(up) - scaled(down)) / 2e-6, 1e-6);
  }
}

TEST(TabularCodec, RejectsCategorical) {
  auto d = mixed_table(50, 9);
  auto schema = d.schema();
  schema[0].kind = ColumnKind::Categorical;
  EXPECT_THROW(TabularCodec::fit(Dataset(schema, d.values(), d.target_index()), {}), DataError);
}

TEST(ConditionSampler, OneHotValidityAndMatchingRows) {
  const auto d = mixed_table(1000, 10);
  const auto codec = TabularCodec::fit(d, {});
  const ConditionSampler sampler(d, codec);
  ASSERT_EQ(sampler.width(), 4);
  Rng rng(11);
  Eigen::RowVectorXd v(sampler.width());
  for (int trial = 0; trial < 5000; ++trial) {
    const auto c = sampler.draw(rng);
    sampler.write(c, v);
    ASSERT_EQ((v.array() == 1.0).count(), 1);
    ASSERT_EQ((v.array() == 0.0).count(), v.size() - 1);
    ASSERT_EQ(v[2 * c.block + c.value], 1.0);
    const auto& block = codec.discrete()[static_cast<std::size_t>(c.block)];
    ASSERT_EQ(d.values()(sampler.matching_row(c, rng), block.column), static_cast<double>(c.value));
  }
}

TEST(ConditionSampler, ValueFrequencyFollowsLogCounts) {
  const auto d = mixed_table(2000, 12);
  const auto codec = TabularCodec::fit(d, {});
  const ConditionSampler sampler(d, codec);
  const auto counts = d.class_counts();
  const double l0 = std::log(1.0 + static_cast<double>(counts[0]));
  const double l1 = std::log(1.0 + static_cast<double>(counts[1]));
  const Index target_block = sampler.block_of(d.target());
  Rng rng(13);
  int hits = 0, ones = 0;
  for (int trial = 0; trial < 200000; ++trial) {
    const auto c = sampler.draw(rng);
    if (c.block != target_block) continue;
    ++hits;
    ones += c.value;
  }
  EXPECT_NEAR(static_cast<double>(hits) / 200000.0, 0.5, 0.01);
  EXPECT_NEAR(static_cast<double>(ones) / hits, l1 / (l0 + l1), 0.01);
}

TEST(Ctgan, ConditionedTargetIsBalancedAndSchemaKept) {
  const auto d = mixed_table(600, 14);
  GanOptions o;
  o.epochs = 3;
  o.batch = 64;
  o.seed = 15;
  const auto r = ctgan_fit_sample(d, o);
  expect_same_schema(r.data, d);
  ASSERT_EQ(r.data.rows(), d.rows());
  expect_binary_target(r.data);
  const auto counts = r.data.class_counts();
  EXPECT_EQ(counts[0], 300);
  EXPECT_EQ(counts[1], 300);
  for (Index i = 0; i < r.data.rows(); ++i) ASSERT_EQ(r.data.values()(i, d.target()), static_cast<double>(i % 2));
  for (Index i = 0; i < r.data.rows(); ++i) {
    ASSERT_GE(r.data.values()(i, 0), d.col(0).minCoeff());
    ASSERT_LE(r.data.values()(i, 0), d.col(0).maxCoeff());
  }
  EXPECT_EQ(r.trace.rows.size(), 3u);
}

TEST(Ctgan, DeterministicForSeed) {
  const auto d = mixed_table(300, 16);
  GanOptions o;
  o.epochs = 2;
  o.batch = 64;
  o.seed = 17;
  const auto a = ctgan_fit_sample(d, o);
  const auto b = ctgan_fit_sample(d, o);
  EXPECT_EQ(a.data.values(), b.data.values());
  o.seed = 18;
  EXPECT_NE(ctgan_fit_sample(d, o).data.values(), a.data.values());
}

TEST(Ctgan, RejectsBadBatch) {
  GanOptions o;
  o.batch = 16;
  EXPECT_THROW(ctgan_fit_sample(mixed_table(100, 1), o), ArgumentError);
  o.batch = 100;
  EXPECT_THROW(ctgan_fit_sample(mixed_table(100, 1), o), ArgumentError);
}

TEST(Ctgan, TwoModeProportions) {
  std::mt19937_64 gen(19);
  std::normal_distribution<double> a(0.0, 0.1), b(10.0, 0.1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Index n = 2000;
  Eigen::MatrixXd m(n, 2);
  for (Index i = 0; i < n; ++i) {
    m(i, 0) = u(gen) < 0.5 ? a(gen) : b(gen);
    m(i, 1) = u(gen) < 0.5 ? 1.0 : 0.0;
  }
  const auto d = table_of(m, {"x", "target"}, 1);
  GanOptions o;
  o.epochs = 60;
  o.batch = 128;
  o.seed = 20;
  o.rows = 4000;
  const auto r = ctgan_fit_sample(d, o);
  const double high = (r.data.col(0).array() > 5.0).cast<double>().mean();
  EXPECT_NEAR(high, 0.5, 0.05);
}

TEST(CopulaGan, SchemaRangeAndDeterminism) {
  const auto d = mixed_table(400, 21);
  GanOptions o;
  o.epochs = 2;
  o.batch = 64;
  o.seed = 22;
  const auto a = copulagan_fit_sample(d, o);
  expect_same_schema(a.data, d);
  expect_binary_target(a.data);
  for (Index j : {0, 1}) {
    EXPECT_GE(a.data.col(j).minCoeff(), d.col(j).minCoeff());
    EXPECT_LE(a.data.col(j).maxCoeff(), d.col(j).maxCoeff());
  }
  EXPECT_EQ(copulagan_fit_sample(d, o).data.values(), a.data.values());
}

TEST(Tvae, MatchesTwoDimensionalGaussianMoments) {
  std::mt19937_64 gen(23);
  std::normal_distribution<double> z(0.0, 1.0);
  const Index n = 4000;
  Eigen::MatrixXd m(n, 3);
  for (Index i = 0; i < n; ++i) {
    const double a = z(gen), b = z(gen);
    m(i, 0) = 1.0 + a;
    m(i, 1) = -2.0 + 0.6 * a + 0.8 * b;
    m(i, 2) = i % 2;
  }
  const auto d = table_of(m, {"x", "y", "target"}, 2);
  VaeOptions o;
  o.epochs = 100;
  o.batch = 256;
  o.hidden = 64;
  o.adam.lr = 2e-3;
  o.seed = 24;
  const auto r = tvae_fit_sample(d, o);
  expect_same_schema(r.data, d);
  expect_binary_target(r.data);
  const Eigen::MatrixXd real = m.leftCols(2), synth = r.data.values().leftCols(2);
  const Eigen::RowVectorXd mr = real.colwise().mean(), ms = synth.colwise().mean();
  const Eigen::MatrixXd cr = (real.rowwise() - mr).transpose() * (real.rowwise() - mr) / static_cast<double>(n);
  const Eigen::MatrixXd cs = (synth.rowwise() - ms).transpose() * (synth.rowwise() - ms) / static_cast<double>(synth.rows());
  EXPECT_LT((mr - ms).cwiseAbs().maxCoeff(), 0.1);
  EXPECT_LT((cr - cs).norm(), 0.2);

  // Smoothed loss (blocks of 10 epochs) never rises.
  std::vector<double> smooth;
  for (std::size_t e = 0; e + 10 <= r.trace.rows.size(); e += 10) {
    double s = 0.0;
    for (std::size_t k = e; k < e + 10; ++k) s += r.trace.rows[k][2];
    smooth.push_back(s / 10.0);
  }
  for (std::size_t k = 1; k < smooth.size(); ++k) EXPECT_LE(smooth[k], smooth[k - 1] + 1e-9) << "block " << k;
}

TEST(Tvae, DeterministicForSeed) {
  const auto d = mixed_table(300, 25);
  VaeOptions o;
  o.epochs = 2;
  o.batch = 64;
  o.seed = 26;
  EXPECT_EQ(tvae_fit_sample(d, o).data.values(), tvae_fit_sample(d, o).data.values());
}

TEST(DiffusionSchedule, Invariants) {
  const DiffusionSchedule s(100);
  EXPECT_LT(s.alpha_bar(100), 0.01);
  for (int t = 1; t <= 100; ++t) {
    EXPECT_GT(s.beta(t), 0.0);
    EXPECT_LT(s.beta(t), 1.0);
    EXPECT_GT(s.alpha_bar(t), 0.0);
    EXPECT_LT(s.alpha_bar(t), 1.0);
    if (t > 1) {
      EXPECT_GT(s.beta(t), s.beta(t - 1));
      EXPECT_LT(s.alpha_bar(t), s.alpha_bar(t - 1));
    }
  }
  const DiffusionSchedule full(1000);
  EXPECT_DOUBLE_EQ(full.beta(1), 1e-4);
  EXPECT_DOUBLE_EQ(full.beta(1000), 0.02);
  EXPECT_THROW(DiffusionSchedule(1), ArgumentError);
}

TEST(DiffusionSchedule, ExactNoiseRecoversInputsAtTwoSteps) {
  const DiffusionSchedule s(2);
  Rng rng(27);
  Eigen::MatrixXd x0(5, 3);
  for (Index i = 0; i < x0.size(); ++i) x0.data()[i] = rng.normal() * 3.0;
  Eigen::MatrixXd eps(5, 3);
  for (Index i = 0; i < eps.size(); ++i) eps.data()[i] = rng.normal();
  const Eigen::MatrixXd xT = std::sqrt(s.alpha_bar(2)) * x0 + std::sqrt(1.0 - s.alpha_bar(2)) * eps;
  // Oracle noise for a point mass at x0: eps = (x_t - sqrt(abar) x0) / sqrt(1 - abar).
  const NoisePredictor oracle = [&](const Eigen::MatrixXd& x, int t) -> Eigen::MatrixXd {
    return (x - std::sqrt(s.alpha_bar(t)) * x0) / std::sqrt(1.0 - s.alpha_bar(t));
  };
  const auto back = reverse_sample(s, xT, oracle, rng);
  EXPECT_LT((back - x0).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Diffusion, StandardNormalMoments) {
  std::mt19937_64 gen(28);
  std::normal_distribution<double> z(0.0, 1.0);
  const Index n = 4000;
  Eigen::MatrixXd m(n, 2);
  for (Index i = 0; i < n; ++i) {
    m(i, 0) = z(gen);
    m(i, 1) = i % 2;
  }
  const auto d = table_of(m, {"x", "target"}, 1);
  DiffusionOptions o;
  o.epochs = 40;
  o.batch = 256;
  o.hidden = 64;
  o.seed = 29;
  o.rows = 10000;
  const auto r = diffusion_fit_sample(d, o);
  expect_same_schema(r.data, d);
  expect_binary_target(r.data);
  const Eigen::VectorXd x = r.data.col(0);
  const double mu = x.mean();
  const double var = (x.array() - mu).square().mean();
  EXPECT_LT(std::abs(mu), 0.1);
  EXPECT_GE(var, 0.8);
  EXPECT_LE(var, 1.2);
}

TEST(Diffusion, DeterministicAndRejectsShortSchedule) {
  const auto d = mixed_table(200, 30);
  DiffusionOptions o;
  o.epochs = 2;
  o.batch = 64;
  o.hidden = 32;
  o.steps = 10;
  o.seed = 31;
  EXPECT_EQ(diffusion_fit_sample(d, o).data.values(), diffusion_fit_sample(d, o).data.values());
  o.steps = 1;
  EXPECT_THROW(diffusion_fit_sample(d, o), ArgumentError);
}

namespace {

/// Chain target -> y -> z over bits with the given flip probabilities.
Dataset chain_table(Index n, double p_target, double flip_y, double flip_z, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd m(n, 3);
  for (Index i = 0; i < n; ++i) {
    const double x = u(gen) < p_target ? 1.0 : 0.0;
    const double y = u(gen) < flip_y ? 1.0 - x : x;
    const double z = u(gen) < flip_z ? 1.0 - y : y;
    m(i, 0) = y;
    m(i, 1) = z;
    m(i, 2) = x;
  }
  return table_of(m, {"y", "z", "target"}, 2);
}

double chain_law(int x, int y, int z, double p, double fy, double fz) {
  return (x ? p : 1.0 - p) * (y != x ? fy : 1.0 - fy) * (z != y ? fz : 1.0 - fz);
}

double chain_tv(const Eigen::MatrixXd& s, double p, double fy, double fz) {
  std::map<int, double> freq;
  for (Index i = 0; i < s.rows(); ++i)
    freq[static_cast<int>(s(i, 2)) * 4 + static_cast<int>(s(i, 0)) * 2 + static_cast<int>(s(i, 1))] += 1.0 / static_cast<double>(s.rows());
  double tv = 0.0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) tv += std::abs(freq[x * 4 + y * 2 + z] - chain_law(x, y, z, p, fy, fz));
  return 0.5 * tv;
}

}  // namespace

TEST(ChowLiu, ChainJointMatchesExactLaw) {
  for (const auto& [fy, fz] : {std::pair{0.0, 0.0}, std::pair{0.1, 0.2}}) {
    const auto d = chain_table(100000, 0.3, fy, fz, 32);
    const auto bn = ChowLiuBn::fit(d, 8, 1.0);
    const auto edges = bn.edges();
    ASSERT_EQ(edges.size(), 2u);
    if (fy > 0.0) {
      EXPECT_EQ(edges[0], (std::pair<Index, Index>{2, 0}));
      EXPECT_EQ(edges[1], (std::pair<Index, Index>{0, 1}));
    }
    EXPECT_LT(chain_tv(bn.sample(100000, 33), 0.3, fy, fz), 0.02);
  }
}

TEST(ChowLiu, IndependentColumnsKeepMarginals) {
  std::mt19937_64 gen(34);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Index n = 100000;
  Eigen::MatrixXd m(n, 3);
  for (Index i = 0; i < n; ++i) {
    m(i, 0) = u(gen) < 0.2 ? 1.0 : 0.0;
    m(i, 1) = u(gen) < 0.7 ? 1.0 : 0.0;
    m(i, 2) = u(gen) < 0.4 ? 1.0 : 0.0;
  }
  const auto d = table_of(m, {"a", "b", "target"}, 2);
  const auto bn = ChowLiuBn::fit(d, 8, 1.0);
  const auto s = bn.sample(n, 35);
  for (Index j = 0; j < 3; ++j) EXPECT_NEAR(s.col(j).mean(), m.col(j).mean(), 0.02);
  for (const auto& node : bn.nodes()) {
    if (node.parent < 0) continue;
    // conditional rows nearly equal when the parent carries no information
    EXPECT_LT((node.cpt.row(0) - node.cpt.row(1)).cwiseAbs().maxCoeff(), 0.02);
  }
}

TEST(ChowLiu, TreeAndCptInvariants) {
  auto d = test::make_table(3000, 6, 0.3, 36);
  Eigen::MatrixXd m = d.values();
  m.col(3).setConstant(7.5);
  d = table_of(m, d.names(), d.target());
  WarningCapture warnings;
  const auto bn = ChowLiuBn::fit(d, 8, 1.0);
  EXPECT_TRUE(warnings.contains("f3"));
  const auto& nodes = bn.nodes();
  ASSERT_EQ(nodes.size(), 6u);
  EXPECT_EQ(bn.edges().size(), nodes.size() - 1);
  EXPECT_EQ(nodes[0].column, d.target());
  EXPECT_EQ(nodes[0].parent, -1);
  for (std::size_t k = 1; k < nodes.size(); ++k) {
    EXPECT_GE(nodes[k].parent, 0);
    EXPECT_LT(nodes[k].parent, static_cast<int>(k));
  }
  for (const auto& node : nodes) {
    EXPECT_LE(node.levels, 8);
    for (Index r = 0; r < node.cpt.rows(); ++r) EXPECT_NEAR(node.cpt.row(r).sum(), 1.0, 1e-9);
  }
  const auto out = bn_fit_sample(d, 8, 1.0, 37);
  expect_same_schema(out, d);
  expect_binary_target(out);
  EXPECT_TRUE((out.col(3).array() == 7.5).all());
  for (Index j : {0, 1, 2, 4, 5}) {
    EXPECT_GE(out.col(j).minCoeff(), d.col(j).minCoeff());
    EXPECT_LE(out.col(j).maxCoeff(), d.col(j).maxCoeff());
  }
  EXPECT_EQ(bn_fit_sample(d, 8, 1.0, 37).values(), out.values());
  EXPECT_THROW(ChowLiuBn::fit(d, 1, 1.0), ArgumentError);
}
