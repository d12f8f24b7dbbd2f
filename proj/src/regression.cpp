#include "argstrength/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "argstrength/distributions.hpp"
#include "argstrength/errors.hpp"

namespace argstrength {

namespace {

constexpr double kRankTolerance = 1e-10;

std::vector<std::string> default_names(std::vector<std::string> names, Eigen::Index p) {
  if (names.empty()) {
    for (Eigen::Index j = 0; j < p; ++j) names.push_back("x" + std::to_string(j));
  }
  if (static_cast<Eigen::Index>(names.size()) != p) {
    throw InputError("regression: " + std::to_string(names.size()) + " names for " +
                     std::to_string(p) + " columns");
  }
  return names;
}

bool has_constant_column(const Eigen::MatrixXd& x) {
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double v = x(0, j);
    if (v != 0.0 && (x.col(j).array() == v).all()) return true;
  }
  return false;
}

void check_shape(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  if (x.rows() != y.size()) {
    throw InputError("regression: X has " + std::to_string(x.rows()) + " rows but y has " +
                     std::to_string(y.size()));
  }
  if (x.cols() == 0) throw InputError("regression: design matrix has no columns");
  if (x.rows() <= x.cols()) {
    throw RankDeficiencyError("regression: need n > p (n=" + std::to_string(x.rows()) +
                              ", p=" + std::to_string(x.cols()) + ")");
  }
  if (!x.allFinite() || !y.allFinite()) throw InputError("regression: non-finite input");
}

// Inverse of RᵀR for the leading p×p block of a Householder QR.
Eigen::MatrixXd inverse_gram(const Eigen::HouseholderQR<Eigen::MatrixXd>& qr, Eigen::Index p) {
  const Eigen::MatrixXd r = qr.matrixQR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  return r_inv * r_inv.transpose();
}

void fill_inference(RegressionResult& r, bool normal_reference) {
  const Eigen::Index p = r.coefficients.size();
  r.std_errors = r.cov.diagonal().cwiseMax(0.0).cwiseSqrt();
  r.test_stats.resize(p);
  r.p_values.resize(p);
  const double df = r.residual_df();
  for (Eigen::Index j = 0; j < p; ++j) {
    const double b = r.coefficients(j);
    const double se = r.std_errors(j);
    double stat;
    if (se > 0.0) {
      stat = b / se;
    } else {
      stat = b == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), b);
    }
    r.test_stats(j) = stat;
    r.p_values(j) = normal_reference ? dist::two_sided_normal(stat) : dist::two_sided_t(stat, df);
  }
}

double softplus(double eta) {
  return eta > 0.0 ? eta + std::log1p(std::exp(-eta)) : std::log1p(std::exp(eta));
}

double sigmoid(double eta) {
  if (eta >= 0.0) return 1.0 / (1.0 + std::exp(-eta));
  const double e = std::exp(eta);
  return e / (1.0 + e);
}

}  // namespace

std::string to_string(Family f) { return f == Family::linear ? "linear" : "logistic"; }

double RegressionResult::fit_metric() const {
  if (linear) return linear->adjusted_r2;
  if (logistic) return logistic->pseudo_r2;
  return 0.0;
}

std::optional<std::size_t> RegressionResult::index_of(std::string_view name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names.begin());
}

void check_full_rank(const Eigen::MatrixXd& x, const std::vector<std::string>& names) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double largest = s.size() ? s(0) : 0.0;
  std::set<std::size_t> involved;
  bool deficient = largest == 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) < kRankTolerance * largest || largest == 0.0) {
      deficient = true;
      const auto v = svd.matrixV().col(k);
      const double vmax = v.cwiseAbs().maxCoeff();
      for (Eigen::Index j = 0; j < v.size(); ++j) {
        if (std::fabs(v(j)) > 1e-6 * vmax) involved.insert(static_cast<std::size_t>(j));
      }
    }
  }
  if (!deficient) return;
  std::string list;
  for (auto j : involved) {
    list += (list.empty() ? "" : ", ") + (j < names.size() ? names[j] : "x" + std::to_string(j));
  }
  throw RankDeficiencyError("rank-deficient design; collinear columns: " + list);
}

RegressionResult fit_linear(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                            std::vector<std::string> names) {
  check_shape(x, y);
  names = default_names(std::move(names), x.cols());
  check_full_rank(x, names);

  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);

  RegressionResult r;
  r.family = Family::linear;
  r.names = std::move(names);
  r.n = static_cast<std::size_t>(n);
  r.coefficients = qr.solve(y);
  const Eigen::VectorXd resid = y - x * r.coefficients;
  const bool centered = has_constant_column(x);

  LinearFit fit;
  fit.rss = resid.squaredNorm();
  const double tss = centered ? (y.array() - y.mean()).square().sum() : y.squaredNorm();
  const double dn = static_cast<double>(n);
  const double dp = static_cast<double>(p);
  const double model_df = dp - (centered ? 1.0 : 0.0);
  fit.r2 = tss > 0.0 && model_df > 0.0 ? 1.0 - fit.rss / tss : 0.0;
  // Written as a penalty on r² so that adjusted_r2 <= r2 survives rounding.
  fit.adjusted_r2 = fit.r2 - (1.0 - fit.r2) * model_df / (dn - dp);
  fit.sigma2 = fit.rss / (dn - dp);
  r.cov = fit.sigma2 * inverse_gram(qr, p);
  r.aic = dn * std::log(fit.rss / dn) + 2.0 * dp + dn * (1.0 + std::log(2.0 * std::numbers::pi));
  r.linear = fit;
  fill_inference(r, false);
  return r;
}

double log_likelihood_logistic(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                               const Eigen::VectorXd& beta) {
  const Eigen::VectorXd eta = x * beta;
  double ll = 0.0;
  for (Eigen::Index i = 0; i < eta.size(); ++i) ll += y(i) * eta(i) - softplus(eta(i));
  return ll;
}

RegressionResult fit_logistic(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                              std::vector<std::string> names, const LogisticOptions& options) {
  check_shape(x, y);
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y(i) != 0.0 && y(i) != 1.0) throw InputError("logistic regression: y must be 0/1");
  }
  const double ybar = y.mean();
  if (ybar == 0.0 || ybar == 1.0) {
    throw InputError("logistic regression: y contains a single class");
  }
  names = default_names(std::move(names), x.cols());
  check_full_rank(x, names);

  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  double ll = log_likelihood_logistic(x, y, beta);
  bool converged = false;
  int iter = 0;
  Eigen::MatrixXd xw(n, p);
  Eigen::VectorXd mu(n), w(n);

  auto weighted_qr = [&](const Eigen::VectorXd& b) {
    const Eigen::VectorXd eta = x * b;
    for (Eigen::Index i = 0; i < n; ++i) {
      mu(i) = sigmoid(eta(i));
      w(i) = mu(i) * (1.0 - mu(i));
    }
    xw = w.cwiseSqrt().asDiagonal() * x;
    return Eigen::HouseholderQR<Eigen::MatrixXd>(xw);
  };

  for (iter = 1; iter <= options.max_iterations; ++iter) {
    auto qr = weighted_qr(beta);
    // Newton step: (XᵀWX) Δ = Xᵀ(y − μ), with XᵀWX = RᵀR.
    const Eigen::VectorXd score = x.transpose() * (y - mu);
    const Eigen::MatrixXd r = qr.matrixQR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
    if ((r.diagonal().array().abs() == 0.0).any()) {
      throw SeparationError("logistic regression: fitted probabilities reached 0/1 (perfect separation)");
    }
    Eigen::VectorXd step = r.triangularView<Eigen::Upper>().transpose().solve(score);
    step = r.triangularView<Eigen::Upper>().solve(step);

    Eigen::VectorXd next = beta + step;
    double ll_next = log_likelihood_logistic(x, y, next);
    for (int halving = 0; halving < 30 && ll_next < ll - 1e-12 * std::fabs(ll); ++halving) {
      step *= 0.5;
      next = beta + step;
      ll_next = log_likelihood_logistic(x, y, next);
    }
    const double dbeta = step.cwiseAbs().maxCoeff();
    const double dll = std::fabs(ll_next - ll);
    beta = next;
    ll = ll_next;
    if (beta.norm() > options.divergence_norm) {
      throw SeparationError("logistic regression: coefficients diverge (|beta| > " +
                            std::to_string(options.divergence_norm) + "); perfect separation");
    }
    if (dbeta < options.beta_tolerance || dll < options.ll_tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw SeparationError("logistic regression: log-likelihood did not converge in " +
                          std::to_string(options.max_iterations) +
                          " iterations; likely separation");
  }
  auto qr = weighted_qr(beta);
  const double extreme = std::min(mu.minCoeff(), 1.0 - mu.maxCoeff());
  if (ll > -1e-6 || extreme < 1e-12) {
    throw SeparationError("logistic regression: perfect or quasi-perfect separation "
                          "(fitted probabilities at 0/1)");
  }

  RegressionResult res;
  res.family = Family::logistic;
  res.names = std::move(names);
  res.n = static_cast<std::size_t>(n);
  res.coefficients = beta;
  res.cov = inverse_gram(qr, p);
  res.converged = true;
  LogisticFit fit;
  fit.log_likelihood = ll;
  const double dn = static_cast<double>(n);
  fit.null_log_likelihood = dn * (ybar * std::log(ybar) + (1.0 - ybar) * std::log1p(-ybar));
  fit.pseudo_r2 = 1.0 - fit.log_likelihood / fit.null_log_likelihood;
  fit.iterations = iter;
  res.logistic = fit;
  res.aic = 2.0 * static_cast<double>(p) - 2.0 * ll;
  res.odds = beta.unaryExpr([](double b) { return std::exp(b); });
  fill_inference(res, true);
  return res;
}

RegressionResult fit(Family family, const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                     std::vector<std::string> names) {
  return family == Family::linear ? fit_linear(x, y, std::move(names))
                                  : fit_logistic(x, y, std::move(names));
}

GateKind default_gate(Family f) {
  return f == Family::linear ? GateKind::partial_f : GateKind::likelihood_ratio;
}

GateKind parse_gate_kind(std::string_view text) {
  if (text == "f" || text == "partial_f" || text == "anova") return GateKind::partial_f;
  if (text == "lr" || text == "likelihood_ratio") return GateKind::likelihood_ratio;
  if (text == "wald_f" || text == "wald") return GateKind::wald_f;
  throw InputError("unknown gate '" + std::string(text) + "' (partial_f|lr|wald_f)");
}

GateResult nested_gate(const RegressionResult& small, const RegressionResult& large, Family family,
                       std::optional<GateKind> kind) {
  if (small.family != family || large.family != family) {
    throw InputError("nested_gate: family mismatch");
  }
  if (small.n != large.n) throw InputError("nested_gate: models fitted on different data");
  for (const auto& name : small.names) {
    if (!large.index_of(name)) {
      throw InputError("nested_gate: models are not nested ('" + name + "' missing from larger model)");
    }
  }
  if (large.p() <= small.p()) {
    throw InputError("nested_gate: larger model adds no terms (degenerate nesting)");
  }
  const GateKind gate = kind.value_or(default_gate(family));
  const double q = static_cast<double>(large.p() - small.p());
  const double df2 = large.residual_df();
  GateResult g;
  g.df1 = q;
  switch (gate) {
    case GateKind::partial_f: {
      if (family != Family::linear) throw InputError("nested_gate: partial F needs linear fits");
      const double rss_s = small.linear->rss;
      const double rss_l = large.linear->rss;
      const double num = std::max(0.0, rss_s - rss_l) / q;
      const double den = rss_l / df2;
      g.statistic = den > 0.0 ? num / den : (num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
      g.df2 = df2;
      g.p_value = dist::f_sf(g.statistic, q, df2);
      break;
    }
    case GateKind::likelihood_ratio: {
      if (family != Family::logistic) throw InputError("nested_gate: LR gate needs logistic fits");
      g.statistic = std::max(0.0, 2.0 * (large.logistic->log_likelihood - small.logistic->log_likelihood));
      g.p_value = dist::chi2_sf(g.statistic, q);
      break;
    }
    case GateKind::wald_f: {
      std::vector<Eigen::Index> added;
      for (std::size_t j = 0; j < large.names.size(); ++j) {
        if (!small.index_of(large.names[j])) added.push_back(static_cast<Eigen::Index>(j));
      }
      const auto m = static_cast<Eigen::Index>(added.size());
      Eigen::VectorXd b(m);
      Eigen::MatrixXd v(m, m);
      for (Eigen::Index a = 0; a < m; ++a) {
        b(a) = large.coefficients(added[a]);
        for (Eigen::Index c = 0; c < m; ++c) v(a, c) = large.cov(added[a], added[c]);
      }
      const double wald = b.dot(v.ldlt().solve(b));
      g.statistic = wald / q;
      g.df2 = df2;
      g.p_value = dist::f_sf(g.statistic, q, df2);
      break;
    }
  }
  return g;
}

std::vector<Prediction> predict_with_ci(const RegressionResult& result, const Eigen::MatrixXd& grid,
                                        double level) {
  if (grid.cols() != static_cast<Eigen::Index>(result.p())) {
    throw InputError("predict_with_ci: grid has " + std::to_string(grid.cols()) +
                     " columns, model has " + std::to_string(result.p()) + " terms");
  }
  if (!(level >= 0.0 && level < 1.0)) throw InputError("predict_with_ci: level must be in [0,1)");
  const double upper_p = 0.5 + level / 2.0;
  const double q = result.family == Family::linear
                       ? dist::student_t_quantile(upper_p, result.residual_df())
                       : dist::normal_quantile(upper_p);
  std::vector<Prediction> out;
  out.reserve(static_cast<std::size_t>(grid.rows()));
  for (Eigen::Index i = 0; i < grid.rows(); ++i) {
    const Eigen::RowVectorXd row = grid.row(i);
    const double eta = row.dot(result.coefficients);
    const double se = std::sqrt(std::max(0.0, (row * result.cov * row.transpose())(0, 0)));
    const double half = q * se;
    if (result.family == Family::linear) {
      out.push_back({eta, eta - half, eta + half});
    } else {
      out.push_back({sigmoid(eta), sigmoid(eta - half), sigmoid(eta + half)});
    }
  }
  return out;
}

std::string significance_stars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

}  // namespace argstrength
