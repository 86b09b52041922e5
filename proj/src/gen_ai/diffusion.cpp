#include "synthbench/gen_ai/diffusion.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "synthbench/util/error.hpp"

namespace synthbench {

DiffusionSchedule::DiffusionSchedule(int steps) {
  if (steps < 2) throw ArgumentError("diffusion needs at least 2 steps, got " + std::to_string(steps));
  const double scale = 1000.0 / steps;
  const double lo = 1e-4 * scale;
  const double hi = std::min(0.02 * scale, 0.999);
  double bar = 1.0;
  for (int t = 0; t < steps; ++t) {
    const double b = lo + (hi - lo) * t / (steps - 1);
    betas_.push_back(b);
    bar *= 1.0 - b;
    alpha_bars_.push_back(bar);
  }
}

double DiffusionSchedule::posterior_variance(int t) const {
  const double prev = t > 1 ? alpha_bar(t - 1) : 1.0;
  return beta(t) * (1.0 - prev) / (1.0 - alpha_bar(t));
}

Eigen::MatrixXd reverse_sample(const DiffusionSchedule& schedule, Eigen::MatrixXd x,
                               const NoisePredictor& predict, Rng& rng) {
  for (int t = schedule.steps(); t >= 1; --t) {
    const Eigen::MatrixXd eps = predict(x, t);
    const double coef = schedule.beta(t) / std::sqrt(1.0 - schedule.alpha_bar(t));
    x = (x - coef * eps) / std::sqrt(schedule.alpha(t));
    if (t > 1) {
      const double sd = std::sqrt(schedule.posterior_variance(t));
      for (Index i = 0; i < x.rows(); ++i)
        for (Index j = 0; j < x.cols(); ++j) x(i, j) += sd * rng.normal();
    }
  }
  return x;
}

Eigen::RowVectorXd time_embedding(int t, Index width) {
  if (width % 2 != 0) throw ArgumentError("time embedding width must be even");
  const Index half = width / 2;
  Eigen::RowVectorXd e(width);
  for (Index k = 0; k < half; ++k) {
    const double freq = std::exp(-std::log(10000.0) * static_cast<double>(k) / static_cast<double>(half));
    e[k] = std::sin(t * freq);
    e[half + k] = std::cos(t * freq);
  }
  return e;
}

namespace {

struct Standardizer {
  Eigen::RowVectorXd mean;
  Eigen::RowVectorXd scale;
  std::vector<bool> binary;

  static Standardizer fit(const Dataset& d) {
    Standardizer s;
    s.mean.resize(d.cols());
    s.scale.resize(d.cols());
    for (Index j = 0; j < d.cols(); ++j) {
      const auto kind = d.column(j).kind;
      if (kind == ColumnKind::Categorical) throw DataError("column '" + d.column(j).name + "' is categorical; encode categoricals first");
      s.binary.push_back(kind == ColumnKind::Binary);
      if (kind == ColumnKind::Binary) {
        s.mean[j] = 0.5;
        s.scale[j] = 0.5;
      } else {
        const auto col = d.col(j).array();
        s.mean[j] = col.mean();
        const double sd = std::sqrt((col - s.mean[j]).square().mean());
        s.scale[j] = sd > 0.0 ? sd : 1.0;
      }
    }
    return s;
  }

  Eigen::MatrixXd forward(const Eigen::MatrixXd& v) const {
    return (v.rowwise() - mean).array().rowwise() / scale.array();
  }

  Eigen::MatrixXd inverse(const Eigen::MatrixXd& z) const {
    Eigen::MatrixXd v = (z.array().rowwise() * scale.array()).matrix().rowwise() + mean;
    for (Index j = 0; j < v.cols(); ++j)
      if (binary[static_cast<std::size_t>(j)])
        for (Index i = 0; i < v.rows(); ++i) v(i, j) = z(i, j) > 0.0 ? 1.0 : 0.0;
    return v;
  }
};

}  // namespace

DiffusionResult diffusion_fit_sample(const Dataset& d, const DiffusionOptions& o) {
  const DiffusionSchedule schedule(o.steps);
  if (o.batch < 1 || o.epochs < 1) throw ArgumentError("batch and epochs must be positive");
  if (d.rows() == 0) throw DataError("cannot train on an empty dataset");
  const auto standardizer = Standardizer::fit(d);
  const Eigen::MatrixXd x0_all = standardizer.forward(d.values());
  const Index w = d.cols();

  std::vector<Eigen::RowVectorXd> embeddings;
  for (int t = 1; t <= schedule.steps(); ++t) embeddings.push_back(time_embedding(t, o.embedding));

  nn::Mlp net({{w + o.embedding, o.hidden, o.hidden, w},
               {nn::Activation::ReLU, nn::Activation::ReLU, nn::Activation::Identity},
               Rng::derive(o.seed, 1)});
  nn::Adam opt(net, o.adam);
  Rng rng(Rng::derive(o.seed, 4));
  std::vector<Index> order(static_cast<std::size_t>(d.rows()));
  std::iota(order.begin(), order.end(), Index{0});
  LossTrace trace{{"mse"}, {}};

  Index steps = (d.rows() + o.batch - 1) / o.batch;
  if (o.max_steps_per_epoch > 0) steps = std::min(steps, o.max_steps_per_epoch);

  for (int epoch = 1; epoch <= o.epochs; ++epoch) {
    rng.shuffle(std::span<Index>(order));
    double sum = 0.0;
    Index seen = 0;
    for (Index s = 0; s < steps; ++s) {
      const Index start = s * o.batch;
      const Index b = std::min(o.batch, d.rows() - start);
      Eigen::MatrixXd in(b, w + o.embedding);
      Eigen::MatrixXd eps(b, w);
      for (Index i = 0; i < b; ++i) {
        const int t = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(schedule.steps())));
        const double ab = schedule.alpha_bar(t);
        for (Index j = 0; j < w; ++j) eps(i, j) = rng.normal();
        in.row(i).head(w) = std::sqrt(ab) * x0_all.row(order[static_cast<std::size_t>(start + i)]) + std::sqrt(1.0 - ab) * eps.row(i);
        in.row(i).tail(o.embedding) = embeddings[static_cast<std::size_t>(t - 1)];
      }
      const auto cache = net.forward(in);
      const Eigen::MatrixXd diff = cache.output() - eps;
      const double loss = diff.squaredNorm();
      if (!std::isfinite(loss)) throw TrainingError("non-finite diffusion loss at epoch " + std::to_string(epoch));
      opt.step(net, net.backward(cache, diff * (2.0 / static_cast<double>(b * w))));
      sum += loss / static_cast<double>(w);
      seen += b;
    }
    trace.add({sum / static_cast<double>(seen)});
  }

  Rng sampler(Rng::derive(o.seed, 5));
  const Index n = o.rows > 0 ? o.rows : d.rows();
  Eigen::MatrixXd values(n, w);
  const NoisePredictor predict = [&](const Eigen::MatrixXd& x, int t) {
    Eigen::MatrixXd in(x.rows(), w + o.embedding);
    in.leftCols(w) = x;
    in.rightCols(o.embedding) = embeddings[static_cast<std::size_t>(t - 1)].replicate(x.rows(), 1);
    return net.predict(in);
  };
  for (Index start = 0; start < n; start += o.batch) {
    const Index b = std::min(o.batch, n - start);
    Eigen::MatrixXd x(b, w);
    for (Index i = 0; i < b; ++i)
      for (Index j = 0; j < w; ++j) x(i, j) = sampler.normal();
    values.middleRows(start, b) = standardizer.inverse(reverse_sample(schedule, std::move(x), predict, sampler));
  }
  return {d.with_values(std::move(values)), std::move(trace)};
}

}  // namespace synthbench
