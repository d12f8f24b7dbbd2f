#include <doctest/doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "argstrength/errors.hpp"
#include "argstrength/regression.hpp"
#include "oracles.hpp"

using namespace argstrength;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

double max_abs(const VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

MatrixXd with_intercept(const VectorXd& x) {
  MatrixXd m(x.size(), 2);
  m.col(0).setOnes();
  m.col(1) = x;
  return m;
}

}  // namespace

TEST_CASE("exact linear fit") {
  MatrixXd x(3, 2);
  x << 1, 1, 1, 2, 1, 3;
  const auto r = fit_linear(x, Eigen::Vector3d(1, 2, 3), {"(intercept)", "x"});
  CHECK(r.coefficients(1) == doctest::Approx(1.0));
  CHECK(std::abs(r.coefficients(0)) < 1e-12);
  CHECK(r.linear->r2 == doctest::Approx(1.0));
}

TEST_CASE("constant response") {
  MatrixXd x(4, 2);
  x << 1, 1, 1, 2, 1, 3, 1, 5;
  const auto r = fit_linear(x, VectorXd::Constant(4, 0.7));
  CHECK(std::abs(r.coefficients(1)) < 1e-12);
  CHECK(r.linear->r2 == 0.0);
}

TEST_CASE("rank problems") {
  MatrixXd x(5, 3);
  x << 1, 1, 2, 1, 2, 4, 1, 3, 6, 1, 4, 8, 1, 5, 10;
  try {
    fit_linear(x, VectorXd::LinSpaced(5, 0, 1), {"(intercept)", "fear", "sadness"});
    FAIL("expected rank error");
  } catch (const RankDeficiencyError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("fear") != std::string::npos);
    CHECK(msg.find("sadness") != std::string::npos);
  }
  CHECK_THROWS_AS(fit_linear(MatrixXd::Ones(2, 2), VectorXd::Ones(2)), RankDeficiencyError);
  CHECK_THROWS_AS(fit_linear(MatrixXd::Random(3, 3), VectorXd::Ones(3)), RankDeficiencyError);
}

TEST_CASE("OLS oracle: normal equations, orthogonality, statistics") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const int p = 1 + trial % 5;
    const auto prob = oracle::random_linear(rng, 50, p);
    const auto r = fit_linear(prob.x, prob.y);
    const VectorXd beta = oracle::normal_equations(prob.x, prob.y);
    CHECK(max_abs(r.coefficients - beta) < 1e-10);
    const VectorXd resid = prob.y - prob.x * r.coefficients;
    CHECK(max_abs(prob.x.transpose() * resid) < 1e-8);
    CHECK(std::abs(resid.sum()) < 1e-8);

    const double n = 50.0;
    const double rss = oracle::rss(prob.x, prob.y, beta);
    const double tss = (prob.y.array() - prob.y.mean()).square().sum();
    const double sigma2 = rss / (n - p);
    const double r2 = p == 1 ? 0.0 : 1.0 - rss / tss;
    CHECK(std::abs(r.linear->rss - rss) < 1e-8);
    CHECK(std::abs(r.linear->sigma2 - sigma2) < 1e-10);
    CHECK(std::abs(r.linear->r2 - r2) < 1e-10);
    CHECK(std::abs(r.linear->adjusted_r2 - (1.0 - (1.0 - r2) * (n - 1) / (n - p))) < 1e-10);
    CHECK(r.linear->adjusted_r2 <= r.linear->r2);
    CHECK(std::abs(r.aic - (n * std::log(rss / n) + 2.0 * p + n * (1.0 + std::log(2.0 * std::numbers::pi)))) <
          1e-8);
    const MatrixXd cov = sigma2 * oracle::invert(prob.x.transpose() * prob.x);
    CHECK((r.cov - cov).cwiseAbs().maxCoeff() < 1e-10);
    for (int j = 0; j < p; ++j) {
      const double se = std::sqrt(cov(j, j));
      const double t = beta(j) / se;
      CHECK(std::abs(r.std_errors(j) - se) < 1e-10);
      CHECK(std::abs(r.test_stats(j) - t) < 1e-6 * std::max(1.0, std::abs(t)));
      CHECK(std::abs(r.p_values(j) - oracle::t_two_sided_ibeta(t, n - p)) < 1e-9);
      CHECK(r.p_values(j) >= 0.0);
      CHECK(r.p_values(j) <= 1.0);
    }
  }
}

TEST_CASE("logistic oracle: likelihood maximum and score equation") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto prob = oracle::random_logistic(rng, 30, 2);
    const auto r = fit_logistic(prob.x, prob.y);
    REQUIRE(r.converged);
    const VectorXd mle = oracle::pattern_search_mle(prob.x, prob.y);
    CHECK(max_abs(r.coefficients - mle) < 1e-4);
    CHECK(max_abs(oracle::logistic_score(prob.x, prob.y, r.coefficients)) < 1e-6);

    const double ll = oracle::logistic_ll(prob.x, prob.y, r.coefficients);
    const double ybar = prob.y.mean();
    const double ll0 = 30.0 * (ybar * std::log(ybar) + (1 - ybar) * std::log(1 - ybar));
    CHECK(std::abs(r.logistic->log_likelihood - ll) < 1e-9);
    CHECK(std::abs(r.logistic->null_log_likelihood - ll0) < 1e-9);
    CHECK(std::abs(r.logistic->pseudo_r2 - (1.0 - ll / ll0)) < 1e-9);
    CHECK(std::abs(r.aic - (2.0 * 2 - 2.0 * ll)) < 1e-9);
    for (int j = 0; j < 2; ++j) {
      CHECK(r.odds(j) == std::exp(r.coefficients(j)));
      CHECK(std::abs(r.p_values(j) - oracle::normal_two_sided(r.test_stats(j))) < 1e-10);
    }

    // Central differences of the hand-written likelihood vanish at the optimum.
    for (int j = 0; j < 2; ++j) {
      const double h = 1e-5;
      VectorXd up = r.coefficients, down = r.coefficients;
      up(j) += h;
      down(j) -= h;
      const double g = (oracle::logistic_ll(prob.x, prob.y, up) - oracle::logistic_ll(prob.x, prob.y, down)) / (2 * h);
      CHECK(std::abs(g) < 1e-5);
    }

    // Covariance is the inverse observed information.
    MatrixXd info = MatrixXd::Zero(2, 2);
    for (int i = 0; i < 30; ++i) {
      const double pr = 1.0 / (1.0 + std::exp(-prob.x.row(i).dot(r.coefficients)));
      info += pr * (1 - pr) * prob.x.row(i).transpose() * prob.x.row(i);
    }
    CHECK((r.cov - oracle::invert(info)).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("logistic edge cases") {
  VectorXd y(6);
  y << 0, 1, 0, 1, 1, 0;
  const auto null = fit_logistic(MatrixXd::Ones(6, 1), y, {"(intercept)"});
  CHECK(std::abs(null.coefficients(0)) < 1e-12);
  CHECK(std::abs(null.logistic->pseudo_r2) < 1e-12);

  const VectorXd sep = (VectorXd(6) << 0, 0, 0, 1, 1, 1).finished();
  CHECK_THROWS_AS(fit_logistic(with_intercept(sep), sep), SeparationError);
  const VectorXd quasi = (VectorXd(6) << 0, 1, 1, 2, 3, 3).finished();
  const VectorXd yq = (VectorXd(6) << 0, 0, 1, 1, 1, 1).finished();
  CHECK_THROWS_AS(fit_logistic(with_intercept(quasi), yq), SeparationError);

  CHECK_THROWS_AS(fit_logistic(with_intercept(sep), VectorXd::Ones(6)), InputError);
  CHECK_THROWS_AS(fit_logistic(with_intercept(sep), VectorXd::Constant(6, 0.5)), InputError);
}

TEST_CASE("rescaling a column leaves inference unchanged") {
  std::mt19937_64 rng(3);
  const auto lin = oracle::random_linear(rng, 40, 3);
  const auto logi = oracle::random_logistic(rng, 60, 3);
  for (Family family : {Family::linear, Family::logistic}) {
    const auto& prob = family == Family::linear ? lin : logi;
    MatrixXd scaled = prob.x;
    scaled.col(2) *= 37.5;
    const auto a = fit(family, prob.x, prob.y);
    const auto b = fit(family, scaled, prob.y);
    CHECK(max_abs(a.test_stats - b.test_stats) < 1e-7);
    CHECK(max_abs(a.p_values - b.p_values) < 1e-9);
    CHECK(std::abs(a.aic - b.aic) < 1e-8);
    CHECK(std::abs(a.fit_metric() - b.fit_metric()) < 1e-10);
    CHECK(std::abs(a.coefficients(2) - 37.5 * b.coefficients(2)) < 1e-7);
    CHECK(max_abs(prob.x * a.coefficients - scaled * b.coefficients) < 1e-8);
  }
}

TEST_CASE("partial F on a hand-built ten-point case") {
  MatrixXd big(10, 3);
  VectorXd y(10);
  for (int i = 0; i < 10; ++i) {
    big(i, 0) = 1.0;
    big(i, 1) = i;
    big(i, 2) = (i * 7 % 10) - 4.5;
    y(i) = 0.5 * i + 0.3 * big(i, 2) + ((i % 3) - 1) * 0.4;
  }
  const auto small = fit_linear(big.leftCols(2), y, {"(intercept)", "a"});
  const auto large = fit_linear(big, y, {"(intercept)", "a", "b"});
  const double rss_s = oracle::rss(big.leftCols(2), y, oracle::normal_equations(big.leftCols(2), y));
  const double rss_l = oracle::rss(big, y, oracle::normal_equations(big, y));
  const double f = (rss_s - rss_l) / (rss_l / 7.0);
  const auto g = nested_gate(small, large, Family::linear);
  CHECK(g.statistic == doctest::Approx(f).epsilon(1e-10));
  CHECK(g.df1 == 1.0);
  CHECK(g.df2 == 7.0);
  CHECK(std::abs(g.p_value - oracle::f_sf_ibeta(f, 1.0, 7.0)) < 1e-10);

  CHECK_THROWS_AS(nested_gate(large, large, Family::linear), InputError);
  const auto other = fit_linear(big.leftCols(1), y, {"(intercept)"});
  const auto swapped = fit_linear((MatrixXd(10, 2) << big.col(0), big.col(2)).finished(), y, {"(intercept)", "b"});
  CHECK_THROWS_AS(nested_gate(small, swapped, Family::linear), InputError);
  CHECK(nested_gate(other, large, Family::linear).df1 == 2.0);
}

TEST_CASE("gate p is tiny when the added column explains the residual") {
  std::mt19937_64 rng(8);
  auto prob = oracle::random_linear(rng, 30, 2);
  const auto small = fit_linear(prob.x, prob.y, {"(intercept)", "a"});
  const VectorXd resid = prob.y - prob.x * small.coefficients;
  MatrixXd big(30, 3);
  big << prob.x, resid + 1e-6 * VectorXd::LinSpaced(30, -1, 1);
  const auto large = fit_linear(big, prob.y, {"(intercept)", "a", "r"});
  CHECK(nested_gate(small, large, Family::linear).p_value < 1e-12);
}

TEST_CASE("likelihood-ratio and Wald gates for logistic fits") {
  std::mt19937_64 rng(9);
  const auto prob = oracle::random_logistic(rng, 80, 3);
  const auto small = fit_logistic(prob.x.leftCols(1), prob.y, {"(intercept)"});
  const auto mid = fit_logistic(prob.x.leftCols(2), prob.y, {"(intercept)", "a"});
  const auto large = fit_logistic(prob.x, prob.y, {"(intercept)", "a", "b"});
  const double lr1 = 2.0 * (large.logistic->log_likelihood - mid.logistic->log_likelihood);
  const auto g1 = nested_gate(mid, large, Family::logistic);
  CHECK(g1.statistic == doctest::Approx(lr1).epsilon(1e-10));
  CHECK(std::abs(g1.p_value - oracle::chi2_sf_df1(lr1)) < 1e-10);
  const double lr2 = 2.0 * (large.logistic->log_likelihood - small.logistic->log_likelihood);
  const auto g2 = nested_gate(small, large, Family::logistic, GateKind::likelihood_ratio);
  CHECK(std::abs(g2.p_value - oracle::chi2_sf_df2(lr2)) < 1e-10);

  const auto w = nested_gate(mid, large, Family::logistic, GateKind::wald_f);
  const double z = large.test_stats(2);
  CHECK(w.statistic == doctest::Approx(z * z).epsilon(1e-8));
  CHECK(default_gate(Family::logistic) == GateKind::likelihood_ratio);
  CHECK(parse_gate_kind("partial_f") == GateKind::partial_f);
  CHECK(parse_gate_kind("anova") == GateKind::partial_f);
  CHECK_THROWS_AS(parse_gate_kind("bogus"), InputError);
}

TEST_CASE("significance stars follow the legend") {
  CHECK(significance_stars(0.0) == "***");
  CHECK(significance_stars(0.000999) == "***");
  CHECK(significance_stars(0.001) == "**");
  CHECK(significance_stars(0.00999) == "**");
  CHECK(significance_stars(0.01) == "*");
  CHECK(significance_stars(0.0499) == "*");
  CHECK(significance_stars(0.05) == "");
  CHECK(significance_stars(0.7) == "");
}

TEST_CASE("confidence bands") {
  std::mt19937_64 rng(10);
  const auto prob = oracle::random_linear(rng, 40, 3);
  const auto r = fit_linear(prob.x, prob.y);
  const MatrixXd mean_row = prob.x.colwise().mean();
  const auto at_mean = predict_with_ci(r, mean_row);
  CHECK(at_mean[0].fitted == doctest::Approx(prob.y.mean()).epsilon(1e-12));
  const auto degenerate = predict_with_ci(r, prob.x.topRows(3), 0.0);
  for (const auto& p : degenerate) {
    CHECK(p.lower == p.fitted);
    CHECK(p.upper == p.fitted);
  }
  const auto band = predict_with_ci(r, prob.x.topRows(5), 0.95);
  for (int i = 0; i < 5; ++i) {
    const VectorXd row = prob.x.row(i).transpose();
    const double half = 2.026192463029109 * std::sqrt(row.dot(r.cov * row));  // t_{0.975, 37}
    CHECK(band[i].upper - band[i].fitted == doctest::Approx(half).epsilon(1e-9));
    CHECK(band[i].fitted - band[i].lower == doctest::Approx(half).epsilon(1e-9));
  }
  CHECK_THROWS_AS(predict_with_ci(r, MatrixXd::Ones(1, 2)), InputError);
  CHECK_THROWS_AS(predict_with_ci(r, mean_row, 1.0), InputError);

  const auto lp = oracle::random_logistic(rng, 60, 2);
  const auto lr = fit_logistic(lp.x, lp.y);
  const auto lb = predict_with_ci(lr, lp.x.topRows(4));
  for (int i = 0; i < 4; ++i) {
    const double eta = lp.x.row(i).dot(lr.coefficients);
    const double se = std::sqrt(lp.x.row(i) * lr.cov * lp.x.row(i).transpose());
    auto inv = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
    CHECK(lb[i].fitted == doctest::Approx(inv(eta)).epsilon(1e-12));
    CHECK(lb[i].lower == doctest::Approx(inv(eta - 1.959963984540054 * se)).epsilon(1e-10));
    CHECK(lb[i].upper == doctest::Approx(inv(eta + 1.959963984540054 * se)).epsilon(1e-10));
    CHECK(lb[i].lower > 0.0);
    CHECK(lb[i].upper < 1.0);
  }
}
