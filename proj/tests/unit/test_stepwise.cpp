#include <doctest/doctest.h>

#include <algorithm>
#include <random>

#include "argstrength/errors.hpp"
#include "argstrength/stepwise.hpp"
#include "oracles.hpp"

using namespace argstrength;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

FeatureTable table_of(const MatrixXd& x, const VectorXd& y, CorpusKind kind = CorpusKind::quality) {
  std::vector<std::string> ids, names;
  for (Eigen::Index i = 0; i < x.rows(); ++i) ids.push_back("r" + std::to_string(i));
  for (Eigen::Index j = 0; j < x.cols(); ++j) names.push_back("c" + std::to_string(j));
  return FeatureTable(ids, names, x, y, kind);
}

std::vector<TermSpec> mains(const FeatureTable& t) { return candidate_pool(t, false); }

}  // namespace

TEST_CASE("pool layout") {
  const auto t = table_of(MatrixXd::Random(5, 3), VectorXd::Random(5));
  const auto pool = candidate_pool(t);
  REQUIRE(pool.size() == 6);
  CHECK(pool[0].label() == "c0");
  CHECK(pool[2].label() == "c2");
  CHECK(pool[3].label() == "c0:c1");
  CHECK(pool[4].label() == "c0:c2");
  CHECK(pool[5].label() == "c1:c2");
  CHECK(mains(t).size() == 3);
}

TEST_CASE("trace equals the forward-exhaustive oracle on small pools") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> z;
  std::uniform_real_distribution<double> effect(-0.6, 0.6);
  for (int trial = 0; trial < 60; ++trial) {
    const int k = 1 + trial % 4;
    const int n = 40;
    MatrixXd x(n, k);
    for (auto& v : x.reshaped()) v = z(rng);
    VectorXd y = VectorXd::NullaryExpr(n, [&] { return z(rng); });
    for (int j = 0; j < k; ++j) y += effect(rng) * x.col(j);
    const auto t = table_of(x, y);

    std::vector<VectorXd> cols;
    for (int j = 0; j < k; ++j) cols.push_back(x.col(j));
    const auto expected = oracle::forward_exhaustive(cols, y, 0.05);
    const auto trace = stepwise(t, mains(t), Family::linear, {});
    REQUIRE(trace.steps.size() == expected.size());
    for (std::size_t s = 0; s < expected.size(); ++s) {
      CHECK(trace.steps[s].term.label() == "c" + std::to_string(expected[s].column));
      CHECK(trace.steps[s].accepted == expected[s].accepted);
    }
    // Final model's AIC matches an independent refit of the chosen set.
    std::vector<VectorXd> chosen;
    for (const auto& term : trace.final_terms) chosen.push_back(t.column(term.names[0]));
    CHECK(trace.final_model.aic == doctest::Approx(oracle::ols_with_intercept(chosen, y).aic).epsilon(1e-10));
  }
}

TEST_CASE("planted feature first, noise rejected") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> z;
  const int n = 200;
  MatrixXd x(n, 2);
  for (auto& v : x.reshaped()) v = z(rng);
  VectorXd y = 2.0 * x.col(0) + VectorXd::NullaryExpr(n, [&] { return 0.1 * z(rng); });
  const auto trace = stepwise(table_of(x, y), mains(table_of(x, y)), Family::linear, {});
  REQUIRE(!trace.steps.empty());
  CHECK(trace.steps[0].term.label() == "c0");
  CHECK(trace.steps[0].accepted);
  CHECK(trace.accepted_count() == 1);
  if (trace.steps.size() > 1) CHECK_FALSE(trace.steps[1].accepted);
}

TEST_CASE("noise acceptance stays near alpha") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> z;
  int accepted_noise = 0;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    MatrixXd x(100, 2);
    for (auto& v : x.reshaped()) v = z(rng);
    VectorXd y = 2.0 * x.col(0) + VectorXd::NullaryExpr(100, [&] { return z(rng); });
    const auto t = table_of(x, y);
    const auto trace = stepwise(t, mains(t), Family::linear, {});
    for (const auto& s : trace.steps) {
      if (s.accepted && s.term.label() == "c1") ++accepted_noise;
    }
  }
  CHECK(accepted_noise <= trials / 10);
}

TEST_CASE("accepted steps strictly lower AIC and pass the gate") {
  std::mt19937_64 rng(14);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 20; ++trial) {
    MatrixXd x(80, 4);
    for (auto& v : x.reshaped()) v = z(rng);
    VectorXd y = 0.4 * x.col(1) - 0.3 * x.col(2) + x.col(0).cwiseProduct(x.col(3)) * 0.5 +
                 VectorXd::NullaryExpr(80, [&] { return z(rng); });
    const auto t = table_of(x, y);
    const auto trace = stepwise(t, candidate_pool(t), Family::linear, {});
    double prev = trace.null_aic;
    for (const auto& s : trace.steps) {
      if (!s.accepted) continue;
      CHECK(s.aic < prev);
      if (s.gated) CHECK(s.gate_p < 0.05);
      prev = s.aic;
    }
    CHECK(prev == doctest::Approx(trace.final_model.aic));
  }
}

TEST_CASE("interactions may enter without their main effects") {
  std::mt19937_64 rng(15);
  std::normal_distribution<double> z;
  MatrixXd x(300, 2);
  for (auto& v : x.reshaped()) v = z(rng);
  VectorXd y = 3.0 * x.col(0).cwiseProduct(x.col(1)) + VectorXd::NullaryExpr(300, [&] { return 0.2 * z(rng); });
  const auto t = table_of(x, y);
  const auto trace = stepwise(t, candidate_pool(t), Family::linear, {});
  REQUIRE(!trace.steps.empty());
  CHECK(trace.steps[0].term.label() == "c0:c1");
  CHECK_FALSE(trace.steps[0].gated);
}

TEST_CASE("limiting cases") {
  std::mt19937_64 rng(16);
  std::normal_distribution<double> z;
  MatrixXd x(60, 3);
  for (auto& v : x.reshaped()) v = z(rng);
  VectorXd y = x.col(0) + x.col(1) + x.col(2) + VectorXd::NullaryExpr(60, [&] { return 0.1 * z(rng); });
  const auto t = table_of(x, y);

  StepwiseOptions zero;
  zero.alpha = 0.0;
  const auto only_seed = stepwise(t, mains(t), Family::linear, zero);
  CHECK(only_seed.accepted_count() == 1);
  CHECK(only_seed.final_terms.size() == 1);

  const auto one = stepwise(t, {TermSpec::main_effect("c2")}, Family::linear, {});
  CHECK(one.steps.size() == 1);
  CHECK(one.steps[0].accepted);

  const auto full = stepwise(t, mains(t), Family::linear, {});
  CHECK(full.accepted_count() == 3);
  CHECK(full.steps.size() == 3);

  CHECK_THROWS_AS(stepwise(t, {TermSpec::main_effect("c0"), TermSpec::main_effect("c0")}, Family::linear, {}),
                  InputError);
  CHECK_THROWS_AS(stepwise(t, mains(t), Family::logistic, {}), InputError);
}

TEST_CASE("rank-deficient candidates are skipped with a warning") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> z;
  MatrixXd x(50, 3);
  for (auto& v : x.reshaped()) v = z(rng);
  x.col(2) = 2.0 * x.col(0);
  VectorXd y = x.col(0) + VectorXd::NullaryExpr(50, [&] { return 0.5 * z(rng); });
  const auto t = table_of(x, y);
  const auto trace = stepwise(t, mains(t), Family::linear, {});
  CHECK_FALSE(trace.warnings.empty());
  auto has = [&](const char* label) {
    return std::any_of(trace.final_terms.begin(), trace.final_terms.end(),
                       [&](const TermSpec& s) { return s.label() == label; });
  };
  CHECK_FALSE((has("c0") && has("c2")));
}

TEST_CASE("logistic stepwise uses the likelihood-ratio gate") {
  std::mt19937_64 rng(18);
  std::normal_distribution<double> z;
  std::uniform_real_distribution<double> u;
  const int n = 400;
  MatrixXd x(n, 3);
  for (auto& v : x.reshaped()) v = z(rng);
  VectorXd y(n);
  for (int i = 0; i < n; ++i) y(i) = u(rng) < 1.0 / (1.0 + std::exp(-(1.5 * x(i, 1)))) ? 1.0 : 0.0;
  const auto t = table_of(x, y, CorpusKind::persuasion);
  const auto trace = stepwise(t, mains(t), Family::logistic, {});
  REQUIRE(!trace.steps.empty());
  CHECK(trace.steps[0].term.label() == "c1");
  CHECK(trace.final_model.family == Family::logistic);
  for (const auto& s : trace.steps) {
    if (s.accepted && s.gated) CHECK(s.gate_p < 0.05);
  }
}

TEST_CASE("candidate fits report failures per candidate") {
  MatrixXd x(10, 2);
  x.col(0) = VectorXd::LinSpaced(10, 0, 1);
  x.col(1) = x.col(0);
  const auto t = table_of(x, VectorXd::LinSpaced(10, 1, 3));
  const auto fits = fit_candidates(t, Family::linear, {TermSpec::main_effect("c0")},
                                   {TermSpec::main_effect("c1")}, true, Execution::serial);
  REQUIRE(fits.size() == 1);
  CHECK_FALSE(fits[0].result);
  CHECK_FALSE(fits[0].failure.empty());
}
