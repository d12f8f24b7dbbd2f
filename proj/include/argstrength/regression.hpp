#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace argstrength {

enum class Family { linear, logistic };

std::string to_string(Family f);

struct LinearFit {
  double r2 = 0.0;
  double adjusted_r2 = 0.0;
  double rss = 0.0;
  double sigma2 = 0.0;
};

struct LogisticFit {
  double log_likelihood = 0.0;
  double null_log_likelihood = 0.0;
  double pseudo_r2 = 0.0;  // McFadden
  int iterations = 0;
};

struct RegressionResult {
  Family family = Family::linear;
  std::vector<std::string> names;  // one per coefficient
  Eigen::VectorXd coefficients;
  Eigen::VectorXd std_errors;
  Eigen::VectorXd test_stats;      // t (linear) or Wald z (logistic)
  Eigen::VectorXd p_values;
  Eigen::VectorXd odds;            // exp(beta); logistic only, else empty
  Eigen::MatrixXd cov;
  std::optional<LinearFit> linear;
  std::optional<LogisticFit> logistic;
  double aic = 0.0;
  std::size_t n = 0;
  bool converged = true;

  std::size_t p() const { return static_cast<std::size_t>(coefficients.size()); }
  double residual_df() const { return static_cast<double>(n) - static_cast<double>(p()); }
  /// adjusted r² (linear) or pseudo-r² (logistic).
  double fit_metric() const;
  std::optional<std::size_t> index_of(std::string_view name) const;
};

/// Column names default to x0, x1, ... when not given.
RegressionResult fit_linear(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                            std::vector<std::string> names = {});

struct LogisticOptions {
  int max_iterations = 100;
  double beta_tolerance = 1e-8;
  double ll_tolerance = 1e-10;
  double divergence_norm = 1e4;
};

RegressionResult fit_logistic(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                              std::vector<std::string> names = {},
                              const LogisticOptions& options = {});

RegressionResult fit(Family family, const Eigen::MatrixXd& x,
                     const Eigen::VectorXd& y, std::vector<std::string> names = {});

/// Throws RankDeficiencyError naming the columns involved when the
/// smallest singular value is below 1e-10 times the largest.
void check_full_rank(const Eigen::MatrixXd& x, const std::vector<std::string>& names);

enum class GateKind {
  partial_f,        // linear default
  likelihood_ratio, // logistic default
  wald_f,           // logistic alternative
};

GateKind default_gate(Family f);
GateKind parse_gate_kind(std::string_view text);

struct GateResult {
  double statistic = 0.0;
  double p_value = 1.0;
  double df1 = 0.0;
  double df2 = 0.0;  // 0 for chi-squared gates
};

/// Compares nested fits on the same data; small's coefficient names must be
/// a strict subset of large's.
GateResult nested_gate(const RegressionResult& small, const RegressionResult& large,
                       Family family, std::optional<GateKind> kind = std::nullopt);

struct Prediction {
  double fitted = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Pointwise confidence band for the mean response. Rows of `grid` are
/// design rows (same columns as the fit). Logistic bands are computed on the
/// linear predictor and mapped through the inverse logit.
std::vector<Prediction> predict_with_ci(const RegressionResult& result,
                                        const Eigen::MatrixXd& grid,
                                        double level = 0.95);

/// "***" p<0.001, "**" p<0.01, "*" p<0.05, "" otherwise.
std::string significance_stars(double p);

double log_likelihood_logistic(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                               const Eigen::VectorXd& beta);

}  // namespace argstrength
