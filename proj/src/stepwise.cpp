#include "argstrength/stepwise.hpp"

#include <exception>
#include <limits>
#include <unordered_set>

#include "argstrength/errors.hpp"

namespace argstrength {

std::vector<TermSpec> candidate_pool(const FeatureTable& table, bool include_interactions) {
  std::vector<TermSpec> pool;
  const auto& names = table.names();
  for (const auto& n : names) pool.push_back(TermSpec::main_effect(n));
  if (include_interactions) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      for (std::size_t j = i + 1; j < names.size(); ++j) {
        pool.push_back(TermSpec::interaction(names[i], names[j]));
      }
    }
  }
  return pool;
}

std::size_t StepwiseTrace::accepted_count() const {
  std::size_t n = 0;
  for (const auto& s : steps) n += s.accepted ? 1 : 0;
  return n;
}

namespace {

RegressionResult fit_terms(const FeatureTable& table, Family family,
                           const std::vector<TermSpec>& terms, bool intercept) {
  const auto dm = materialize_terms(table, terms, intercept);
  return fit(family, dm.x, table.dv(), dm.column_names);
}

CandidateFit fit_one(const FeatureTable& table, Family family, std::vector<TermSpec> terms,
                     std::size_t index, bool intercept) {
  CandidateFit cf;
  cf.candidate = index;
  try {
    cf.result = fit_terms(table, family, terms, intercept);
  } catch (const NumericalError& e) {
    cf.failure = e.what();
  }
  return cf;
}

}  // namespace

std::vector<CandidateFit> fit_candidates(const FeatureTable& table, Family family,
                                         const std::vector<TermSpec>& current,
                                         const std::vector<TermSpec>& candidates, bool intercept,
                                         Execution exec) {
  const auto n = static_cast<std::ptrdiff_t>(candidates.size());
  std::vector<CandidateFit> out(candidates.size());
  auto terms_for = [&](std::ptrdiff_t i) {
    auto terms = current;
    terms.push_back(candidates[static_cast<std::size_t>(i)]);
    return terms;
  };
  if (exec == Execution::serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      out[i] = fit_one(table, family, terms_for(i), static_cast<std::size_t>(i), intercept);
    }
    return out;
  }
  std::vector<std::exception_ptr> errors(candidates.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = fit_one(table, family, terms_for(i), static_cast<std::size_t>(i), intercept);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

StepwiseTrace stepwise(const FeatureTable& table, const std::vector<TermSpec>& pool, Family family,
                       const StepwiseOptions& options) {
  if (pool.empty()) throw InputError("stepwise: candidate pool is empty");
  if ((family == Family::linear) != (table.dv_kind() == CorpusKind::quality)) {
    throw InputError("stepwise: " + to_string(family) + " family does not match a " +
                     to_string(table.dv_kind()) + " dependent variable");
  }
  {
    std::unordered_set<std::string> keys;
    for (const auto& t : pool) {
      if (!keys.insert(t.key()).second) throw InputError("stepwise: duplicate candidate '" + t.label() + "'");
    }
  }

  StepwiseTrace trace;
  trace.family = family;
  std::optional<RegressionResult> current_fit;
  double current_aic = std::numeric_limits<double>::infinity();
  if (options.intercept) {
    current_fit = fit_terms(table, family, {}, true);
    current_aic = current_fit->aic;
  }
  trace.null_aic = current_aic;

  std::vector<TermSpec> current;
  std::vector<bool> used(pool.size(), false);
  while (true) {
    std::vector<TermSpec> remaining;
    std::vector<std::size_t> remaining_index;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (!used[i]) {
        remaining.push_back(pool[i]);
        remaining_index.push_back(i);
      }
    }
    if (remaining.empty()) break;

    auto fits = fit_candidates(table, family, current, remaining, options.intercept, options.exec);
    // Deterministic reduction: lowest AIC, ties to the earlier pool entry.
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < fits.size(); ++i) {
      if (!fits[i].result) {
        trace.warnings.push_back("skipped " + remaining[i].label() + ": " + fits[i].failure);
        continue;
      }
      if (!best || fits[i].result->aic < fits[*best].result->aic) best = i;
    }
    if (!best) break;

    auto& candidate = *fits[*best].result;
    StepwiseStep step;
    step.term = remaining[*best];
    step.aic = candidate.aic;
    step.metric = candidate.fit_metric();
    const bool seed = current.empty();
    if (current_fit) {
      const auto gate = nested_gate(*current_fit, candidate, family, options.gate);
      step.gate_statistic = gate.statistic;
      step.gate_p = gate.p_value;
    }
    step.gated = !seed;
    const bool improves = candidate.aic < current_aic;
    step.accepted = improves && (seed || step.gate_p < options.alpha);
    trace.steps.push_back(step);
    if (!step.accepted) break;

    current.push_back(step.term);
    used[remaining_index[*best]] = true;
    current_aic = candidate.aic;
    current_fit = std::move(candidate);
  }

  trace.final_terms = current;
  if (current_fit) {
    trace.final_model = *current_fit;
  }
  return trace;
}

}  // namespace argstrength
