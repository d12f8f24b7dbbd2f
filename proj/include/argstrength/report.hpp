#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "argstrength/ensemble.hpp"
#include "argstrength/features.hpp"
#include "argstrength/regression.hpp"
#include "argstrength/stepwise.hpp"

namespace argstrength {

/// One single-IV regression (IV + intercept). On numerical failure the row
/// carries the error text and no result.
struct SingleRegressionRow {
  std::string iv;
  std::optional<RegressionResult> result;
  std::string error;
};

std::vector<SingleRegressionRow> single_regressions(
    const FeatureTable& table, const std::vector<std::string>& ivs, Family family);

nlohmann::json to_json(const RegressionResult& r);
nlohmann::json to_json(const StepwiseTrace& trace);
nlohmann::json to_json(const std::vector<SingleRegressionRow>& rows, Family family);
nlohmann::json to_json(const std::vector<DistributionRow>& rows);

/// Layout of the individual-regression table: IV, adjusted r2|pseudo-r2, p, stars,
/// coef|odds.
void write_single_tsv(std::ostream& out, const std::vector<SingleRegressionRow>& rows,
                      Family family);
/// Hedge-variant table: score, sent, adjusted r2|pseudo-r2, coef|odds, p, stars.
void write_hedge_variant_tsv(std::ostream& out,
                             const std::vector<SingleRegressionRow>& rows, Family family);
/// Stepwise trace: IVs, metric (adjusted r² in percent for linear,
/// pseudo-r² for logistic), stars ("x" for the seed).
void write_stepwise_tsv(std::ostream& out, const StepwiseTrace& trace);
/// Distribution table: feature, #, %, mean probability.
void write_distribution_tsv(std::ostream& out, const std::vector<DistributionRow>& rows);

/// Fixed-point with `digits` decimals; "-0.000" is printed as "0.000".
std::string format_fixed(double value, int digits);

}  // namespace argstrength
