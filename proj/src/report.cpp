#include "argstrength/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "argstrength/errors.hpp"

namespace argstrength {

using nlohmann::json;

std::vector<SingleRegressionRow> single_regressions(const FeatureTable& table,
                                                    const std::vector<std::string>& ivs,
                                                    Family family) {
  std::vector<SingleRegressionRow> rows;
  for (const auto& iv : ivs) {
    SingleRegressionRow row;
    row.iv = iv;
    const auto dm = materialize_terms(table, {TermSpec::main_effect(iv)}, true);
    try {
      row.result = fit(family, dm.x, table.dv(), dm.column_names);
    } catch (const NumericalError& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_fixed(double value, int digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  std::string s(buf);
  // Normalize negative zero after rounding.
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

namespace {

json vec(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

std::string term_display(const TermSpec& t) {
  if (t.kind == TermSpec::Kind::main) return display_name(t.names[0]);
  return display_name(t.names[0]) + "×" + display_name(t.names[1]);
}

// Coefficient row of an IV in a single-IV model.
struct IvStats {
  double metric, p, effect;
};

IvStats iv_stats(const RegressionResult& r, Family family) {
  const std::size_t j = r.p() - 1;
  const double effect = family == Family::logistic ? r.odds(static_cast<Eigen::Index>(j))
                                                   : r.coefficients(static_cast<Eigen::Index>(j));
  return {r.fit_metric(), r.p_values(static_cast<Eigen::Index>(j)), effect};
}

}  // namespace

json to_json(const RegressionResult& r) {
  json j{{"family", to_string(r.family)},
         {"n", r.n},
         {"names", r.names},
         {"coefficients", vec(r.coefficients)},
         {"std_errors", vec(r.std_errors)},
         {"test_stats", vec(r.test_stats)},
         {"p_values", vec(r.p_values)},
         {"aic", r.aic},
         {"converged", r.converged}};
  if (r.family == Family::logistic) j["odds"] = vec(r.odds);
  json cov = json::array();
  for (Eigen::Index i = 0; i < r.cov.rows(); ++i) cov.push_back(vec(r.cov.row(i).transpose()));
  j["cov"] = cov;
  if (r.linear) {
    j["fit"] = {{"r2", r.linear->r2},
                {"adjusted_r2", r.linear->adjusted_r2},
                {"rss", r.linear->rss},
                {"sigma2", r.linear->sigma2}};
  }
  if (r.logistic) {
    j["fit"] = {{"log_likelihood", r.logistic->log_likelihood},
                {"null_log_likelihood", r.logistic->null_log_likelihood},
                {"pseudo_r2", r.logistic->pseudo_r2},
                {"iterations", r.logistic->iterations}};
  }
  return j;
}

json to_json(const StepwiseTrace& trace) {
  json steps = json::array();
  for (const auto& s : trace.steps) {
    steps.push_back({{"term", s.term.label()},
                     {"aic", s.aic},
                     {"metric", s.metric},
                     {"gate_statistic", s.gate_statistic},
                     {"gate_p", s.gate_p},
                     {"gated", s.gated},
                     {"accepted", s.accepted}});
  }
  json terms = json::array();
  for (const auto& t : trace.final_terms) terms.push_back(t.label());
  json j{{"family", to_string(trace.family)},
         {"null_aic", trace.null_aic},
         {"steps", steps},
         {"final_terms", terms},
         {"warnings", trace.warnings}};
  if (trace.final_model.p() > 0) j["final_model"] = to_json(trace.final_model);
  return j;
}

json to_json(const std::vector<SingleRegressionRow>& rows, Family family) {
  json out = json::array();
  for (const auto& row : rows) {
    json j{{"iv", row.iv}};
    if (row.result) {
      const auto s = iv_stats(*row.result, family);
      j[family == Family::linear ? "adjusted_r2" : "pseudo_r2"] = s.metric;
      j["p"] = s.p;
      j["stars"] = significance_stars(s.p);
      j[family == Family::linear ? "coef" : "odds"] = s.effect;
      j["model"] = to_json(*row.result);
    } else {
      j["error"] = row.error;
    }
    out.push_back(j);
  }
  return out;
}

json to_json(const std::vector<DistributionRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"feature", r.feature},
                   {"count", r.positives},
                   {"percent", r.percent},
                   {"mean_probability", r.mean_probability}});
  }
  return out;
}

void write_single_tsv(std::ostream& out, const std::vector<SingleRegressionRow>& rows, Family family) {
  const bool lin = family == Family::linear;
  out << "IV\t" << (lin ? "adj_r2" : "pseudo_r2") << "\tp\tsign\t" << (lin ? "coef" : "odds") << '\n';
  for (const auto& row : rows) {
    out << display_name(row.iv) << '\t';
    if (!row.result) {
      out << "error\t\t\t" << row.error << '\n';
      continue;
    }
    const auto s = iv_stats(*row.result, family);
    out << format_fixed(s.metric, 4) << '\t' << format_fixed(s.p, 3) << '\t'
        << significance_stars(s.p) << '\t' << format_fixed(s.effect, 3) << '\n';
  }
}

void write_hedge_variant_tsv(std::ostream& out, const std::vector<SingleRegressionRow>& rows,
                             Family family) {
  const bool lin = family == Family::linear;
  out << "score\tsent\t" << (lin ? "adj_r2" : "pseudo_r2") << '\t' << (lin ? "coef" : "odds")
      << "\tp\tsign\n";
  for (const auto& row : rows) {
    if (!is_hedge_column(row.iv)) continue;
    const bool absolute = row.iv.starts_with("hedge_abs_");
    const auto sent = row.iv.substr(row.iv.rfind('_') + 1);
    out << (absolute ? "absolute" : "ratio") << '\t' << sent << '\t';
    if (!row.result) {
      out << "error\t\t\t" << row.error << '\n';
      continue;
    }
    const auto s = iv_stats(*row.result, family);
    out << format_fixed(s.metric, lin ? 4 : 5) << '\t' << format_fixed(s.effect, 3) << '\t'
        << format_fixed(s.p, 3) << '\t' << significance_stars(s.p) << '\n';
  }
}

void write_stepwise_tsv(std::ostream& out, const StepwiseTrace& trace) {
  const bool lin = trace.family == Family::linear;
  out << "IVs\t" << (lin ? "adjusted_r2_pct" : "pseudo_r2") << "\tsign\n";
  for (const auto& s : trace.steps) {
    if (!s.accepted) continue;
    out << (s.gated ? "+ " : "") << term_display(s.term) << '\t'
        << (lin ? format_fixed(100.0 * s.metric, 3) : format_fixed(s.metric, 4)) << '\t'
        << (s.gated ? significance_stars(s.gate_p) : "x") << '\n';
  }
  const auto& m = trace.final_model;
  if (m.p() == 0) return;
  out << "\n# final model (n=" << m.n << ", aic=" << format_fixed(m.aic, 3) << ", "
      << (lin ? "adjusted_r2=" : "pseudo_r2=") << format_fixed(m.fit_metric(), 5) << ")\n";
  out << "term\t" << (lin ? "coef" : "odds") << "\tse\t" << (lin ? "t" : "z") << "\tp\tsign\n";
  for (std::size_t j = 0; j < m.p(); ++j) {
    const auto i = static_cast<Eigen::Index>(j);
    std::string name = m.names[j];
    if (name != "(intercept)") name = term_display(TermSpec::parse(name));
    out << name << '\t' << format_fixed(lin ? m.coefficients(i) : m.odds(i), 3) << '\t'
        << format_fixed(m.std_errors(i), 4) << '\t' << format_fixed(m.test_stats(i), 3) << '\t'
        << format_fixed(m.p_values(i), 3) << '\t' << significance_stars(m.p_values(i)) << '\n';
  }
}

void write_distribution_tsv(std::ostream& out, const std::vector<DistributionRow>& rows) {
  out << "feature\t#\t%\tmean_p\n";
  for (const auto& r : rows) {
    out << display_name(r.feature) << '\t' << r.positives << '\t' << format_fixed(r.percent, 1)
        << '\t' << format_fixed(r.mean_probability, 2) << '\n';
  }
}

}  // namespace argstrength
