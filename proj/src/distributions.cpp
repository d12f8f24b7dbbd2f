#include "argstrength/distributions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "argstrength/errors.hpp"

namespace argstrength::dist {

namespace bm = boost::math;

namespace {

void require_df(double df, const char* what) {
  if (!(df > 0.0) || !std::isfinite(df)) {
    throw InputError(std::string(what) + ": degrees of freedom must be positive, got " +
                     std::to_string(df));
  }
}

void require_not_nan(double x, const char* what) {
  if (std::isnan(x)) throw InputError(std::string(what) + ": argument is NaN");
}

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError(std::string(what) + ": probability outside [0,1]");
}

}  // namespace

double normal_cdf(double x) {
  require_not_nan(x, "normal_cdf");
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  return bm::cdf(bm::normal_distribution<double>(), x);
}

double student_t_cdf(double x, double df) {
  require_df(df, "student_t_cdf");
  require_not_nan(x, "student_t_cdf");
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  return bm::cdf(bm::students_t_distribution<double>(df), x);
}

double f_cdf(double x, double df1, double df2) {
  require_df(df1, "f_cdf");
  require_df(df2, "f_cdf");
  require_not_nan(x, "f_cdf");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return bm::cdf(bm::fisher_f_distribution<double>(df1, df2), x);
}

double chi2_cdf(double x, double df) {
  require_df(df, "chi2_cdf");
  require_not_nan(x, "chi2_cdf");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return bm::cdf(bm::chi_squared_distribution<double>(df), x);
}

double normal_quantile(double p) {
  require_probability(p, "normal_quantile");
  if (p == 0.0) return -std::numeric_limits<double>::infinity();
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  return bm::quantile(bm::normal_distribution<double>(), p);
}

double student_t_quantile(double p, double df) {
  require_df(df, "student_t_quantile");
  require_probability(p, "student_t_quantile");
  if (p == 0.0) return -std::numeric_limits<double>::infinity();
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  return bm::quantile(bm::students_t_distribution<double>(df), p);
}

double two_sided_t(double t, double df) {
  require_df(df, "two_sided_t");
  require_not_nan(t, "two_sided_t");
  if (std::isinf(t)) return 0.0;
  // Upper tail via complement keeps precision for large |t|.
  const double tail = bm::cdf(bm::complement(bm::students_t_distribution<double>(df), std::fabs(t)));
  return std::min(1.0, 2.0 * tail);
}

double two_sided_normal(double z) {
  require_not_nan(z, "two_sided_normal");
  if (std::isinf(z)) return 0.0;
  const double tail = bm::cdf(bm::complement(bm::normal_distribution<double>(), std::fabs(z)));
  return std::min(1.0, 2.0 * tail);
}

double f_sf(double x, double df1, double df2) {
  require_df(df1, "f_sf");
  require_df(df2, "f_sf");
  require_not_nan(x, "f_sf");
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return bm::cdf(bm::complement(bm::fisher_f_distribution<double>(df1, df2), x));
}

double chi2_sf(double x, double df) {
  require_df(df, "chi2_sf");
  require_not_nan(x, "chi2_sf");
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return bm::cdf(bm::complement(bm::chi_squared_distribution<double>(df), x));
}

}  // namespace argstrength::dist
