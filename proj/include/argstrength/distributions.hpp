#pragma once

namespace argstrength::dist {

// CDFs and quantiles used for p-values and intervals. Invalid parameters
// (df <= 0, non-finite x where not meaningful) throw InputError.

double normal_cdf(double x);
double student_t_cdf(double x, double df);
double f_cdf(double x, double df1, double df2);
double chi2_cdf(double x, double df);

double normal_quantile(double p);
double student_t_quantile(double p, double df);

/// Two-sided tail probability P(|T| >= |t|).
double two_sided_t(double t, double df);
double two_sided_normal(double z);
/// Upper tail P(X >= x).
double f_sf(double x, double df1, double df2);
double chi2_sf(double x, double df);

}  // namespace argstrength::dist
