#include "synthbench/gen_ai/tvae.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "synthbench/gen_ai/tabular_codec.hpp"
#include "synthbench/util/error.hpp"
#include "synthbench/util/log.hpp"
#include "synthbench/util/random.hpp"

namespace synthbench {

namespace {

constexpr double kMinSigma = 0.01;
constexpr double kMaxSigma = 1.0;

nn::Mlp make_net(Index in, Index hidden, Index out, std::uint64_t seed) {
  return nn::Mlp({{in, hidden, hidden, out},
                  {nn::Activation::ReLU, nn::Activation::ReLU, nn::Activation::Identity},
                  seed});
}

}  // namespace

VaeResult tvae_fit_sample(const Dataset& d, const VaeOptions& o) {
  if (o.batch < 1 || o.epochs < 1 || o.latent_dim < 1) throw ArgumentError("batch, epochs and latent_dim must be positive");
  if (d.rows() == 0) throw DataError("cannot train on an empty dataset");
  if (d.column(d.target()).kind != ColumnKind::Binary) throw DataError("target column must be binary");

  ModeOptions modes = o.modes;
  modes.seed = Rng::derive(o.seed, 3);
  const auto codec = TabularCodec::fit(d, modes);
  const Eigen::MatrixXd encoded = codec.encode(d);
  const Index w = codec.width();
  const Index l = o.latent_dim;

  std::vector<Index> scalars;
  for (const auto& s : codec.spans())
    if (s.kind == OutputSpan::Kind::Scalar) scalars.push_back(s.start);
  const Index ns = static_cast<Index>(scalars.size());

  nn::Mlp encoder = make_net(w, o.hidden, 2 * l, Rng::derive(o.seed, 1));
  nn::Mlp decoder = make_net(l, o.hidden, w, Rng::derive(o.seed, 2));
  nn::Adam enc_opt(encoder, o.adam);
  nn::Adam dec_opt(decoder, o.adam);
  Eigen::VectorXd log_sigma = Eigen::VectorXd::Constant(ns, std::log(0.1));
  nn::AdamConfig sigma_config = o.adam;
  sigma_config.weight_decay = 0.0;
  nn::OptimizerState sigma_opt(sigma_config, ns);

  Rng rng(Rng::derive(o.seed, 4));
  std::vector<Index> order(static_cast<std::size_t>(d.rows()));
  std::iota(order.begin(), order.end(), Index{0});
  LossTrace trace{{"reconstruction", "kl", "loss"}, {}};
  bool warned = false;

  Index steps = (d.rows() + o.batch - 1) / o.batch;
  if (o.max_steps_per_epoch > 0) steps = std::min(steps, o.max_steps_per_epoch);

  for (int epoch = 1; epoch <= o.epochs; ++epoch) {
    rng.shuffle(std::span<Index>(order));
    double sum_rec = 0.0, sum_kl = 0.0;
    Index seen = 0;
    for (Index s = 0; s < steps; ++s) {
      const Index start = s * o.batch;
      const Index b = std::min(o.batch, d.rows() - start);
      const double inv_b = 1.0 / static_cast<double>(b);
      Eigen::MatrixXd x(b, w);
      for (Index i = 0; i < b; ++i) x.row(i) = encoded.row(order[static_cast<std::size_t>(start + i)]);

      const auto enc_cache = encoder.forward(x);
      const Eigen::MatrixXd mu = enc_cache.output().leftCols(l);
      const Eigen::MatrixXd logvar = enc_cache.output().rightCols(l);
      Eigen::MatrixXd eps(b, l);
      for (Index i = 0; i < b; ++i)
        for (Index k = 0; k < l; ++k) eps(i, k) = rng.normal();
      const Eigen::MatrixXd half_std = (0.5 * logvar.array()).exp().matrix();
      const Eigen::MatrixXd z = mu + half_std.cwiseProduct(eps);

      const auto dec_cache = decoder.forward(z);
      const Eigen::MatrixXd& logits = dec_cache.output();
      const Eigen::MatrixXd act = codec.activate(logits);

      double rec = 0.0;
      Eigen::MatrixXd dlogits(b, w);
      for (const auto& span : codec.spans()) {
        if (span.kind == OutputSpan::Kind::Softmax) {
          for (Index i = 0; i < b; ++i)
            for (Index k = 0; k < span.width; ++k) {
              const double target = x(i, span.start + k);
              if (target > 0.5) rec -= std::log(std::max(act(i, span.start + k), 1e-12));
              dlogits(i, span.start + k) = (act(i, span.start + k) - target) * inv_b;
            }
        }
      }
      Eigen::VectorXd dlog_sigma = Eigen::VectorXd::Zero(ns);
      for (Index j = 0; j < ns; ++j) {
        const Index c = scalars[static_cast<std::size_t>(j)];
        const double sigma = std::exp(log_sigma[j]);
        const double var = sigma * sigma;
        for (Index i = 0; i < b; ++i) {
          const double r = logits(i, c) - x(i, c);
          rec += r * r / (2.0 * var) + log_sigma[j];
          dlogits(i, c) = r / var * inv_b;
          dlog_sigma[j] += (1.0 - r * r / var) * inv_b;
        }
      }
      const double kl = -0.5 * (1.0 + logvar.array() - mu.array().square() - logvar.array().exp()).sum();
      if (!std::isfinite(rec) || !std::isfinite(kl))
        throw TrainingError("non-finite VAE loss at epoch " + std::to_string(epoch));

      const auto dec_grads = decoder.backward(dec_cache, dlogits);
      const Eigen::MatrixXd& dz = dec_grads.input;
      Eigen::MatrixXd denc(b, 2 * l);
      denc.leftCols(l) = dz + mu * inv_b;
      denc.rightCols(l) = (dz.array() * 0.5 * half_std.array() * eps.array() +
                           0.5 * (logvar.array().exp() - 1.0) * inv_b).matrix();
      const auto enc_grads = encoder.backward(enc_cache, denc);
      dec_opt.step(decoder, dec_grads);
      enc_opt.step(encoder, enc_grads);
      nn::adam_step(sigma_opt, log_sigma, dlog_sigma);
      log_sigma = log_sigma.cwiseMax(std::log(kMinSigma)).cwiseMin(std::log(kMaxSigma));

      sum_rec += rec;
      sum_kl += kl;
      seen += b;
    }
    const double n = static_cast<double>(seen);
    trace.add({sum_rec / n, sum_kl / n, (sum_rec + sum_kl) / n});
    if (sum_kl / n < 1e-3 && !warned) {
      log_warn("VAE KL term collapsed below 1e-3 at epoch " + std::to_string(epoch));
      warned = true;
    }
  }

  Rng sampler(Rng::derive(o.seed, 5));
  const Index n = o.rows > 0 ? o.rows : d.rows();
  Eigen::MatrixXd values(n, d.cols());
  for (Index start = 0; start < n; start += o.batch) {
    const Index b = std::min(o.batch, n - start);
    Eigen::MatrixXd z(b, l);
    for (Index i = 0; i < b; ++i)
      for (Index k = 0; k < l; ++k) z(i, k) = sampler.normal();
    Eigen::MatrixXd act = codec.activate(decoder.predict(z));
    for (Index j = 0; j < ns; ++j) {
      const double sigma = std::exp(log_sigma[j]);
      for (Index i = 0; i < b; ++i) act(i, scalars[static_cast<std::size_t>(j)]) += sigma * sampler.normal();
    }
    values.middleRows(start, b) = codec.decode(act, true);
  }
  return {d.with_values(std::move(values)), std::move(trace)};
}

}  // namespace synthbench
