#include "synthbench/gen_ai/ctgan.hpp"

#include <cmath>
#include <string>

#include "synthbench/gen_ai/condition.hpp"
#include "synthbench/gen_ai/copula.hpp"
#include "synthbench/gen_ai/tabular_codec.hpp"
#include "synthbench/util/error.hpp"
#include "synthbench/util/log.hpp"

namespace synthbench {

namespace {

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }
double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

nn::Mlp make_net(Index in, Index hidden, Index out, std::uint64_t seed) {
  return nn::Mlp({{in, hidden, hidden, out},
                  {nn::Activation::ReLU, nn::Activation::ReLU, nn::Activation::Identity},
                  seed});
}

/// Packs groups of `pac` consecutive rows side by side.
Eigen::MatrixXd pack(const Eigen::MatrixXd& in, Index pac) {
  const Index w = in.cols();
  Eigen::MatrixXd out(in.rows() / pac, pac * w);
  for (Index r = 0; r < out.rows(); ++r)
    for (Index k = 0; k < pac; ++k) out.block(r, k * w, 1, w) = in.row(r * pac + k);
  return out;
}

Eigen::MatrixXd unpack(const Eigen::MatrixXd& in, Index pac) {
  const Index w = in.cols() / pac;
  Eigen::MatrixXd out(in.rows() * pac, w);
  for (Index r = 0; r < in.rows(); ++r)
    for (Index k = 0; k < pac; ++k) out.row(r * pac + k) = in.block(r, k * w, 1, w);
  return out;
}

void check_finite(double loss, const char* what, int epoch) {
  if (!std::isfinite(loss))
    throw TrainingError(std::string("non-finite ") + what + " loss at epoch " + std::to_string(epoch));
}

class Gan {
 public:
  Gan(const Dataset& d, const GanOptions& o)
      : o_(o),
        codec_(TabularCodec::fit(d, with_seed(o.modes, Rng::derive(o.seed, 3)))),
        sampler_(d, codec_),
        encoded_(codec_.encode(d)),
        gen_(make_net(o.noise_dim + sampler_.width(), o.hidden, codec_.width(), Rng::derive(o.seed, 1))),
        disc_(make_net(o.pac * (codec_.width() + sampler_.width()), o.hidden, 1, Rng::derive(o.seed, 2))),
        gen_opt_(gen_, o.adam),
        disc_opt_(disc_, o.adam) {}

  LossTrace train(Index rows) {
    LossTrace trace{{"discriminator", "generator", "condition"}, {}};
    Rng rng(Rng::derive(o_.seed, 4));
    Index steps = (rows + o_.batch - 1) / o_.batch;
    if (o_.max_steps_per_epoch > 0) steps = std::min(steps, o_.max_steps_per_epoch);
    int collapsed = 0;
    bool warned = false;
    for (int epoch = 1; epoch <= o_.epochs; ++epoch) {
      double sum_d = 0.0, sum_g = 0.0, sum_c = 0.0;
      for (Index s = 0; s < steps; ++s) {
        sum_d += discriminator_step(rng);
        const auto [g, c] = generator_step(rng);
        sum_g += g;
        sum_c += c;
      }
      const double n = static_cast<double>(steps);
      check_finite(sum_d, "discriminator", epoch);
      check_finite(sum_g + sum_c, "generator", epoch);
      trace.add({sum_d / n, sum_g / n, sum_c / n});
      collapsed = sum_d / n < 1e-3 ? collapsed + 1 : 0;
      if (collapsed >= 5 && !warned) {
        log_warn("discriminator loss near zero for 5 epochs (possible mode collapse) at epoch " + std::to_string(epoch));
        warned = true;
      }
    }
    return trace;
  }

  /// Alternates target conditions 0, 1, 0, ... over `n` rows.
  Eigen::MatrixXd sample(Index n, Index target_column) {
    Rng rng(Rng::derive(o_.seed, 5));
    const Index block = sampler_.block_of(target_column);
    Eigen::MatrixXd out(n, 0);
    Eigen::MatrixXd values;
    for (Index start = 0; start < n; start += o_.batch) {
      const Index b = std::min(o_.batch, n - start);
      std::vector<Condition> conds(static_cast<std::size_t>(b));
      for (Index i = 0; i < b; ++i) conds[static_cast<std::size_t>(i)] = {block, static_cast<int>((start + i) % 2)};
      const Eigen::MatrixXd fake = codec_.activate_gumbel(gen_.predict(generator_input(conds, rng)), o_.tau, rng);
      Eigen::MatrixXd decoded = codec_.decode(fake, true);
      for (Index i = 0; i < b; ++i) decoded(i, target_column) = static_cast<double>((start + i) % 2);
      if (values.size() == 0) values.resize(n, decoded.cols());
      values.middleRows(start, b) = decoded;
    }
    return values;
  }

 private:
  static ModeOptions with_seed(ModeOptions m, std::uint64_t seed) {
    m.seed = seed;
    return m;
  }

  std::vector<Condition> draw_conditions(Rng& rng) const {
    std::vector<Condition> conds(static_cast<std::size_t>(o_.batch));
    for (auto& c : conds) c = sampler_.draw(rng);
    return conds;
  }

  Eigen::MatrixXd generator_input(const std::vector<Condition>& conds, Rng& rng) const {
    const Index b = static_cast<Index>(conds.size());
    Eigen::MatrixXd in(b, o_.noise_dim + sampler_.width());
    for (Index i = 0; i < b; ++i) {
      for (Index k = 0; k < o_.noise_dim; ++k) in(i, k) = rng.normal();
      sampler_.write(conds[static_cast<std::size_t>(i)], in.row(i).tail(sampler_.width()));
    }
    return in;
  }

  void write_conditions(const std::vector<Condition>& conds, Eigen::MatrixXd& in, Index offset) const {
    for (std::size_t i = 0; i < conds.size(); ++i)
      sampler_.write(conds[i], in.row(static_cast<Index>(i)).segment(offset, sampler_.width()));
  }

  double discriminator_step(Rng& rng) {
    const Index b = o_.batch;
    const Index w = codec_.width();
    const auto conds = draw_conditions(rng);
    Eigen::MatrixXd in(2 * b, w + sampler_.width());
    for (Index i = 0; i < b; ++i) in.row(i).head(w) = encoded_.row(sampler_.matching_row(conds[static_cast<std::size_t>(i)], rng));
    in.bottomRows(b).leftCols(w) = codec_.activate_gumbel(gen_.predict(generator_input(conds, rng)), o_.tau, rng);
    write_conditions(conds, in, w);
    in.bottomRows(b).rightCols(sampler_.width()) = in.topRows(b).rightCols(sampler_.width());

    const auto cache = disc_.forward(pack(in, o_.pac));
    const auto& logit = cache.output();
    const Index m = b / o_.pac;
    Eigen::MatrixXd grad(2 * m, 1);
    double loss = 0.0;
    for (Index i = 0; i < m; ++i) {
      loss += softplus(-logit(i, 0)) + softplus(logit(m + i, 0));
      grad(i, 0) = (sigmoid(logit(i, 0)) - 1.0) / static_cast<double>(m);
      grad(m + i, 0) = sigmoid(logit(m + i, 0)) / static_cast<double>(m);
    }
    disc_opt_.step(disc_, disc_.backward(cache, grad));
    return loss / static_cast<double>(m);
  }

  std::pair<double, double> generator_step(Rng& rng) {
    const Index b = o_.batch;
    const Index w = codec_.width();
    const Index m = b / o_.pac;
    const double inv_b = 1.0 / static_cast<double>(b);
    const auto conds = draw_conditions(rng);
    const auto gen_cache = gen_.forward(generator_input(conds, rng));
    const Eigen::MatrixXd& logits = gen_cache.output();
    const Eigen::MatrixXd fake = codec_.activate_gumbel(logits, o_.tau, rng);

    Eigen::MatrixXd in(b, w + sampler_.width());
    in.leftCols(w) = fake;
    write_conditions(conds, in, w);
    const auto disc_cache = disc_.forward(pack(in, o_.pac));
    const auto& logit = disc_cache.output();
    Eigen::MatrixXd grad(m, 1);
    double adv = 0.0;
    for (Index i = 0; i < m; ++i) {
      adv += softplus(-logit(i, 0));
      grad(i, 0) = (sigmoid(logit(i, 0)) - 1.0) / static_cast<double>(m);
    }
    const auto through = unpack(disc_.backward(disc_cache, grad).input, o_.pac);
    Eigen::MatrixXd dlogits = codec_.activate_backward(fake, through.leftCols(w), o_.tau);

    // Condition consistency: cross-entropy of the conditioned block's softmax.
    double cond_loss = 0.0;
    for (Index i = 0; i < b; ++i) {
      const auto& c = conds[static_cast<std::size_t>(i)];
      const Index off = sampler_.codec_offset(c);
      const Eigen::RowVectorXd p = nn::softmax_rows(logits.block(i, off, 1, 2));
      cond_loss -= std::log(std::max(p[c.value], 1e-12));
      for (int k = 0; k < 2; ++k) dlogits(i, off + k) += (p[k] - (k == c.value ? 1.0 : 0.0)) * inv_b;
    }
    gen_opt_.step(gen_, gen_.backward(gen_cache, dlogits));
    return {adv / static_cast<double>(m), cond_loss * inv_b};
  }

  GanOptions o_;
  TabularCodec codec_;
  ConditionSampler sampler_;
  Eigen::MatrixXd encoded_;
  nn::Mlp gen_;
  nn::Mlp disc_;
  nn::Adam gen_opt_;
  nn::Adam disc_opt_;
};

void check_options(const Dataset& d, const GanOptions& o) {
  if (o.batch < 32) throw ArgumentError("batch must be at least 32");
  if (o.pac < 1 || o.batch % o.pac != 0)
    throw ArgumentError("batch " + std::to_string(o.batch) + " is not a multiple of pac " + std::to_string(o.pac));
  if (!(o.tau > 0.0)) throw ArgumentError("tau must be positive");
  if (o.epochs < 1) throw ArgumentError("epochs must be at least 1");
  if (d.rows() == 0) throw DataError("cannot train on an empty dataset");
  if (d.column(d.target()).kind != ColumnKind::Binary) throw DataError("target column must be binary");
}

}  // namespace

GanResult ctgan_fit_sample(const Dataset& d, const GanOptions& options) {
  check_options(d, options);
  Gan gan(d, options);
  auto trace = gan.train(d.rows());
  const Index n = options.rows > 0 ? options.rows : d.rows();
  return {d.with_values(gan.sample(n, d.target())), std::move(trace)};
}

GanResult copulagan_fit_sample(const Dataset& d, const GanOptions& options) {
  check_options(d, options);
  const auto copula = CopulaTransform::fit(d);
  auto result = ctgan_fit_sample(copula.forward(d), options);
  result.data = copula.inverse(result.data, d);
  return result;
}

}  // namespace synthbench
