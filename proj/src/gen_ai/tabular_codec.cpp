#include "synthbench/gen_ai/tabular_codec.hpp"

#include <algorithm>
#include <cmath>

#include "synthbench/nn/mlp.hpp"
#include "synthbench/util/error.hpp"

namespace synthbench {

TabularCodec TabularCodec::fit(const Dataset& d, const ModeOptions& options) {
  TabularCodec c;
  c.columns_ = d.cols();
  for (Index j = 0; j < d.cols(); ++j) {
    const auto& col = d.column(j);
    switch (col.kind) {
      case ColumnKind::Categorical:
        throw DataError("column '" + col.name + "' is categorical; encode categoricals first");
      case ColumnKind::Binary:
        c.discrete_.push_back({j, c.width_});
        c.spans_.push_back({c.width_, 2, OutputSpan::Kind::Softmax});
        c.width_ += 2;
        break;
      case ColumnKind::Numeric: {
        ModeOptions o = options;
        o.seed = Rng::derive(options.seed, static_cast<std::uint64_t>(j));
        auto modes = ModeNormalizer::fit(d.col(j), o);
        const Index k = modes.size();
        c.numeric_.push_back({j, c.width_, std::move(modes), d.col(j).minCoeff(), d.col(j).maxCoeff()});
        c.spans_.push_back({c.width_, 1, OutputSpan::Kind::Scalar});
        c.spans_.push_back({c.width_ + 1, k, OutputSpan::Kind::Softmax});
        c.width_ += 1 + k;
        break;
      }
    }
  }
  return c;
}

const ModeNormalizer& TabularCodec::normalizer(Index column) const {
  for (const auto& n : numeric_)
    if (n.column == column) return n.modes;
  throw ArgumentError("column " + std::to_string(column) + " has no mode normalizer");
}

Eigen::MatrixXd TabularCodec::encode(const Dataset& d) const {
  if (d.cols() != columns_) throw DataError("dataset width does not match the fitted codec");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d.rows(), width_);
  for (const auto& n : numeric_) {
    for (Index i = 0; i < d.rows(); ++i) {
      const auto code = n.modes.encode(d.values()(i, n.column));
      out(i, n.offset) = code.alpha;
      out(i, n.offset + 1 + code.mode) = 1.0;
    }
  }
  for (const auto& b : discrete_) {
    for (Index i = 0; i < d.rows(); ++i) out(i, b.offset + (d.values()(i, b.column) > 0.5 ? 1 : 0)) = 1.0;
  }
  return out;
}

Eigen::MatrixXd TabularCodec::activate(const Eigen::MatrixXd& logits) const {
  Eigen::MatrixXd out = logits;
  for (const auto& s : spans_)
    if (s.kind == OutputSpan::Kind::Softmax)
      out.middleCols(s.start, s.width) = nn::softmax_rows(logits.middleCols(s.start, s.width));
  return out;
}

Eigen::MatrixXd TabularCodec::activate_gumbel(const Eigen::MatrixXd& logits, double tau, Rng& rng) const {
  Eigen::MatrixXd out = logits;
  for (const auto& s : spans_) {
    if (s.kind != OutputSpan::Kind::Softmax) continue;
    Eigen::MatrixXd z = logits.middleCols(s.start, s.width);
    for (Index j = 0; j < z.cols(); ++j)
      for (Index i = 0; i < z.rows(); ++i) {
        double u = rng.uniform();
        while (u <= 0.0) u = rng.uniform();
        z(i, j) = (z(i, j) - std::log(-std::log(u))) / tau;
      }
    out.middleCols(s.start, s.width) = nn::softmax_rows(z);
  }
  return out;
}

Eigen::MatrixXd TabularCodec::activate_backward(const Eigen::MatrixXd& activated, const Eigen::MatrixXd& grad,
                                                double tau) const {
  Eigen::MatrixXd out = grad;
  for (const auto& s : spans_)
    if (s.kind == OutputSpan::Kind::Softmax)
      out.middleCols(s.start, s.width) = nn::activate_backward(nn::Activation::Softmax, activated.middleCols(s.start, s.width),
                                                               grad.middleCols(s.start, s.width)) / tau;
  return out;
}

Eigen::MatrixXd TabularCodec::decode(const Eigen::MatrixXd& activated, bool clamp) const {
  Eigen::MatrixXd out(activated.rows(), columns_);
  for (const auto& n : numeric_) {
    for (Index i = 0; i < activated.rows(); ++i) {
      Index mode = 0;
      activated.row(i).segment(n.offset + 1, n.modes.size()).maxCoeff(&mode);
      double v = n.modes.decode(activated(i, n.offset), mode);
      if (clamp) v = std::clamp(v, n.min, n.max);
      out(i, n.column) = v;
    }
  }
  for (const auto& b : discrete_)
    for (Index i = 0; i < activated.rows(); ++i)
      out(i, b.column) = activated(i, b.offset + 1) > activated(i, b.offset) ? 1.0 : 0.0;
  return out;
}

}  // namespace synthbench
