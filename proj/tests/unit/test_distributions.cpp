#include <doctest/doctest.h>

#include <cmath>
#include <numbers>

#include "argstrength/distributions.hpp"
#include "argstrength/errors.hpp"
#include "oracles.hpp"

using namespace argstrength;
using namespace argstrength::dist;

namespace {
constexpr double kTol = 1e-10;
}

TEST_CASE("symmetry points") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(kTol));
  CHECK(student_t_cdf(0.0, 7.0) == doctest::Approx(0.5).epsilon(kTol));
  CHECK(two_sided_t(0.0, 3.0) == doctest::Approx(1.0));
}

TEST_CASE("chi-squared with two degrees of freedom") {
  CHECK(std::abs(chi2_cdf(2.0, 2.0) - (1.0 - std::exp(-1.0))) < kTol);
  CHECK(std::abs(chi2_cdf(2.0, 2.0) - 0.6321206) < 1e-7);
  for (double x : {0.01, 0.5, 1.0, 3.7, 10.0, 25.0, 60.0}) {
    CAPTURE(x);
    CHECK(std::abs(chi2_sf(x, 2.0) - oracle::chi2_sf_df2(x)) < kTol);
    CHECK(std::abs(chi2_sf(x, 1.0) - oracle::chi2_sf_df1(x)) < kTol);
  }
}

TEST_CASE("closed forms across the tested range") {
  for (double v : {0.0, 0.1, 0.7, 1.0, 1.96, 2.5, 4.0, 8.0}) {
    CAPTURE(v);
    CHECK(std::abs(two_sided_normal(v) - oracle::normal_two_sided(v)) < kTol);
    CHECK(std::abs(normal_cdf(-v) - 0.5 * std::erfc(v / std::numbers::sqrt2)) < kTol);
    CHECK(std::abs(two_sided_t(v, 1.0) - oracle::t_two_sided_df1(v)) < kTol);
    CHECK(std::abs(two_sided_t(v, 2.0) - oracle::t_two_sided_df2(v)) < kTol);
    CHECK(std::abs(student_t_cdf(v, 1.0) - (0.5 + std::atan(v) / std::numbers::pi)) < kTol);
    for (double d2 : {1.0, 4.0, 30.0, 500.0}) {
      CHECK(std::abs(f_sf(v, 2.0, d2) - oracle::f_sf_df2(v, d2)) < kTol);
    }
    // F(1, d) is the square of t(d).
    CHECK(std::abs(f_sf(v * v, 1.0, 12.0) - two_sided_t(v, 12.0)) < kTol);
    CHECK(std::abs(f_cdf(v, 3.0, 9.0) + f_sf(v, 3.0, 9.0) - 1.0) < kTol);
  }
}

TEST_CASE("quantiles invert the cdfs") {
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(std::abs(student_t_cdf(student_t_quantile(0.975, 10.0), 10.0) - 0.975) < kTol);
  CHECK(std::abs(student_t_quantile(0.75, 1.0) - 1.0) < kTol);
}

TEST_CASE("extreme tails stay positive") {
  CHECK(two_sided_normal(30.0) > 0.0);
  CHECK(two_sided_normal(30.0) < 1e-190);
  CHECK(two_sided_t(50.0, 100.0) > 0.0);
  CHECK(chi2_sf(0.0, 3.0) == 1.0);
  CHECK(two_sided_normal(INFINITY) == 0.0);
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(student_t_cdf(1.0, 0.0), InputError);
  CHECK_THROWS_AS(chi2_cdf(1.0, -1.0), InputError);
  CHECK_THROWS_AS(f_cdf(1.0, 1.0, 0.0), InputError);
  CHECK_THROWS_AS(normal_quantile(1.5), InputError);
  CHECK_THROWS_AS(normal_cdf(NAN), InputError);
}
