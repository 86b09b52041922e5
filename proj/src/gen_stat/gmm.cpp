#include "synthbench/gen_stat/gmm.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>
#include <numbers>

#include "synthbench/gen_stat/kmeans.hpp"
#include "synthbench/util/error.hpp"
#include "synthbench/util/log.hpp"

namespace synthbench {
namespace {

using Eigen::Index;

/// Per-row log N(x | mu, L L^T) for every component, rows x components.
Eigen::MatrixXd component_log_densities(const Eigen::MatrixXd& x, const GmmModel& m,
                                        const std::vector<Eigen::LLT<Eigen::MatrixXd>>& chol) {
  const Index n = x.rows();
  const Index d = x.cols();
  Eigen::MatrixXd out(n, m.components());
  const double log2pi = std::log(2.0 * std::numbers::pi);
  for (Index c = 0; c < m.components(); ++c) {
    const Eigen::MatrixXd L = chol[static_cast<std::size_t>(c)].matrixL();
    const double log_det = 2.0 * L.diagonal().array().log().sum();
    Eigen::MatrixXd centered = (x.rowwise() - m.means[static_cast<std::size_t>(c)].transpose()).transpose();
    L.triangularView<Eigen::Lower>().solveInPlace(centered);
    out.col(c) = (-0.5 * (centered.colwise().squaredNorm().array() + d * log2pi + log_det)).matrix().transpose();
  }
  return out;
}

std::vector<Eigen::LLT<Eigen::MatrixXd>> factorize(GmmModel& m, const GmmOptions& options) {
  for (double reg = std::max(m.regularization, options.regularization);; reg *= 10.0) {
    std::vector<Eigen::LLT<Eigen::MatrixXd>> chol;
    bool ok = true;
    for (const auto& cov : m.covariances) {
      Eigen::MatrixXd r = cov;
      r.diagonal().array() += reg;
      chol.emplace_back(r);
      if (chol.back().info() != Eigen::Success) {
        ok = false;
        break;
      }
    }
    if (ok) {
      if (reg != m.regularization) {
        for (auto& cov : m.covariances) cov.diagonal().array() += reg - m.regularization;
        m.regularization = reg;
      }
      return chol;
    }
    if (reg * 10.0 > options.max_regularization * (1 + 1e-9))
      throw TrainingError("covariance stays singular with regularization " + std::to_string(reg));
  }
}

/// Row-wise log-sum-exp; fills `resp` with normalized responsibilities.
Eigen::VectorXd normalize_rows(const Eigen::MatrixXd& weighted, Eigen::MatrixXd& resp) {
  const Eigen::VectorXd mx = weighted.rowwise().maxCoeff();
  resp = (weighted.colwise() - mx).array().exp().matrix();
  const Eigen::VectorXd s = resp.rowwise().sum();
  resp.array().colwise() /= s.array();
  return mx.array() + s.array().log();
}

}  // namespace

double GmmModel::parameter_count() const {
  const auto k = static_cast<double>(components());
  const auto d = static_cast<double>(dimension());
  return (k - 1.0) + k * d + k * d * (d + 1.0) / 2.0;
}

double gmm_log_likelihood(const GmmModel& model, const Eigen::MatrixXd& x) {
  GmmModel m = model;
  std::vector<Eigen::LLT<Eigen::MatrixXd>> chol;
  for (const auto& cov : m.covariances) chol.emplace_back(cov);
  Eigen::MatrixXd lp = component_log_densities(x, m, chol);
  lp.rowwise() += m.weights.array().log().matrix().transpose();
  Eigen::MatrixXd resp;
  return normalize_rows(lp, resp).sum();
}

GmmFit fit_gmm(const Eigen::MatrixXd& x, Index components, const GmmOptions& options) {
  const Index n = x.rows();
  const Index d = x.cols();
  if (components < 1 || components > n)
    throw ArgumentError("cannot fit " + std::to_string(components) + " components to " + std::to_string(n) + " rows");
  GmmFit fit;
  GmmModel& m = fit.model;

  // k-means initial responsibilities
  const auto km = kmeans(x, components, {100, 1e-4, options.seed});
  Eigen::MatrixXd resp = Eigen::MatrixXd::Zero(n, components);
  for (Index i = 0; i < n; ++i) resp(i, km.labels[static_cast<std::size_t>(i)]) = 1.0;

  auto m_step = [&] {
    const Eigen::VectorXd nk = resp.colwise().sum().transpose().array() + 10 * std::numeric_limits<double>::epsilon();
    m.weights = nk / static_cast<double>(n);
    m.means.assign(static_cast<std::size_t>(components), Eigen::VectorXd());
    m.covariances.assign(static_cast<std::size_t>(components), Eigen::MatrixXd());
    for (Index c = 0; c < components; ++c) {
      const Eigen::VectorXd mu = (x.transpose() * resp.col(c)) / nk[c];
      const Eigen::MatrixXd centered = x.rowwise() - mu.transpose();
      Eigen::MatrixXd cov = (centered.array().colwise() * resp.col(c).array()).matrix().transpose() * centered / nk[c];
      cov.diagonal().array() += m.regularization;
      m.means[static_cast<std::size_t>(c)] = mu;
      m.covariances[static_cast<std::size_t>(c)] = std::move(cov);
    }
  };

  m.regularization = options.regularization;
  m_step();
  double prev = -std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const auto chol = factorize(m, options);
    Eigen::MatrixXd lp = component_log_densities(x, m, chol);
    lp.rowwise() += m.weights.array().log().matrix().transpose();
    const double ll = normalize_rows(lp, resp).mean();
    fit.log_likelihood.push_back(ll);
    if (std::abs(ll - prev) < options.tolerance) {
      fit.converged = true;
      break;
    }
    prev = ll;
    m_step();
  }
  if (!fit.converged)
    log_warn("EM did not converge in " + std::to_string(options.max_iterations) + " iterations (" +
             std::to_string(components) + " components); keeping the last iterate");
  factorize(m, options);
  const double total_ll = fit.log_likelihood.back() * static_cast<double>(n);
  fit.bic = -2.0 * total_ll + m.parameter_count() * std::log(static_cast<double>(n));
  (void)d;
  return fit;
}

GmmFit fit_gmm_bic(const Eigen::MatrixXd& x, Index max_components, const GmmOptions& options,
                   std::vector<double>* bic_trace) {
  if (max_components < 1) throw ArgumentError("max_components must be at least 1");
  const Index top = std::min(max_components, x.rows());
  GmmFit best;
  bool have = false;
  for (Index k = 1; k <= top; ++k) {
    auto fit = fit_gmm(x, k, options);
    if (bic_trace) bic_trace->push_back(fit.bic);
    if (!have || fit.bic < best.bic) {
      best = std::move(fit);
      have = true;
    }
  }
  return best;
}

Eigen::MatrixXd sample_gmm(const GmmModel& model, Index n, Rng& rng) {
  const Index d = model.dimension();
  std::vector<Eigen::MatrixXd> factors;
  for (const auto& cov : model.covariances) factors.push_back(Eigen::LLT<Eigen::MatrixXd>(cov).matrixL());
  Eigen::MatrixXd out(n, d);
  Eigen::VectorXd z(d);
  for (Index i = 0; i < n; ++i) {
    double u = rng.uniform();
    Index c = 0;
    while (c + 1 < model.components() && u >= model.weights[c]) {
      u -= model.weights[c];
      ++c;
    }
    for (Index j = 0; j < d; ++j) z[j] = rng.normal();
    out.row(i) = (model.means[static_cast<std::size_t>(c)] + factors[static_cast<std::size_t>(c)] * z).transpose();
  }
  return out;
}

}  // namespace synthbench
