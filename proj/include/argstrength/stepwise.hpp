#pragma once

#include <string>
#include <vector>

#include "argstrength/execution.hpp"
#include "argstrength/features.hpp"
#include "argstrength/regression.hpp"

namespace argstrength {

/// Main effects in table column order, then every two-way interaction in
/// lexicographic order of (column index, column index).
std::vector<TermSpec> candidate_pool(const FeatureTable& table,
                                     bool include_interactions = true);

struct StepwiseOptions {
  double alpha = 0.05;
  std::optional<GateKind> gate;
  bool intercept = true;
  Execution exec = Execution::parallel;
};

struct StepwiseStep {
  TermSpec term;
  double aic = 0.0;
  double metric = 0.0;         // adjusted r² or pseudo-r² after adding `term`
  double gate_statistic = 0.0;
  double gate_p = 1.0;
  bool gated = true;           // false for the seed term
  bool accepted = false;
};

struct StepwiseTrace {
  Family family = Family::linear;
  /// Accepted steps in order, followed by at most one rejected attempt.
  std::vector<StepwiseStep> steps;
  std::vector<TermSpec> final_terms;
  RegressionResult final_model;
  double null_aic = 0.0;
  std::vector<std::string> warnings;

  std::size_t accepted_count() const;
};

/// Fits of one round: current terms + each candidate. Entries stay empty for
/// candidates that are rank deficient or fail numerically.
struct CandidateFit {
  std::size_t candidate = 0;
  std::optional<RegressionResult> result;
  std::string failure;
};

std::vector<CandidateFit> fit_candidates(const FeatureTable& table, Family family,
                                         const std::vector<TermSpec>& current,
                                         const std::vector<TermSpec>& candidates,
                                         bool intercept, Execution exec);

/// Greedy forward selection: each round adds the lowest-AIC candidate if it
/// lowers AIC and (except for the seed term) passes the nested-model gate
/// at `alpha`. Ties go to the earlier pool entry.
StepwiseTrace stepwise(const FeatureTable& table, const std::vector<TermSpec>& pool,
                       Family family, const StepwiseOptions& options = {});

}  // namespace argstrength
