// Stationarity testing, differencing, VAR lag selection, and
// Granger-causality F-tests.
//
// Unit-root regressions use a constant and no trend. ADF lag depth defaults
// to the Schwert rule floor(12 * (T/100)^(1/4)) and is selected by AIC; the
// Phillips-Perron correction uses a Newey-West long-run variance with
// Bartlett weights and bandwidth floor(4 * (T/100)^(2/9)). Unit-root
// p-values come from the MacKinnon response-surface approximation for the
// constant-only case.
#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace tdac {

struct RegressionFit {
  Eigen::VectorXd coefficients;
  Eigen::VectorXd std_errors;
  Eigen::VectorXd residuals;
  double rss = 0.0;
  std::size_t n_obs = 0;
  std::size_t n_params = 0;
};

/// Least squares via column-pivoted QR; exact rss and coefficient standard
/// errors. Throws SingularDesignError on rank deficiency and
/// InsufficientDataError when rows <= columns.
RegressionFit ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& X);

/// d-fold first differences; output length shrinks by d.
std::vector<double> difference(std::span<const double> s, int order);

enum class UnitRootTest { adf, pp };

struct UnitRootResult {
  double statistic = 0.0;
  double p_value = 1.0;
  UnitRootTest test = UnitRootTest::adf;
  int lags_or_bandwidth = 0;
};

/// Augmented Dickey-Fuller t-test, constant-only, AIC lag selection over
/// 0..max_lag. max_lag < 0 selects the Schwert default.
UnitRootResult adf_test(std::span<const double> s, int max_lag = -1);

/// Phillips-Perron Z-tau test, constant-only. bandwidth < 0 selects the
/// default rule.
UnitRootResult pp_test(std::span<const double> s, int bandwidth = -1);

struct StationarySeries {
  std::vector<double> values;  // differenced to the common order
  int differencing_order = 0;
  bool stationary = false;  // passed both tests at the configured level
};

/// Smallest common differencing order d <= d_max at which every series
/// passes both ADF and PP at level alpha. Series still failing at d_max are
/// returned flagged rather than raising.
std::pair<std::vector<StationarySeries>, int> ensure_stationary(
    const std::vector<std::vector<double>>& series, double alpha, int d_max);

/// Lag order in [1, max_lag] minimizing the bivariate-VAR final prediction
/// error ((T + 2m + 1) / (T - 2m - 1))^2 * det(residual covariance).
int fpe_select(std::span<const double> y, std::span<const double> x, int max_lag);

struct GrangerResult {
  std::string cause;
  std::string effect;
  int lag = 0;
  double f_statistic = 0.0;
  double p_value = 1.0;
  int df_num = 0;
  int df_den = 0;
  bool perfect_fit = false;  // unrestricted model fit the data exactly
};

/// F-test of "cause does not help predict effect": own-lags-only model
/// against the model adding q lags of cause.
GrangerResult granger_test(std::span<const double> effect,
                           std::span<const double> cause, int q);

// Distribution helpers, exposed for reuse and direct testing.

double normal_cdf(double x);

/// Regularized incomplete beta I_x(a, b).
double reg_incomplete_beta(double a, double b, double x);

/// Survival function of the F distribution with (d1, d2) degrees of freedom.
double f_sf(double f, double d1, double d2);

/// MacKinnon approximate p-value for the constant-only Dickey-Fuller tau.
double mackinnon_p(double tau);

/// Schwert lag rule floor(12 * (T/100)^(1/4)).
int schwert_max_lag(std::size_t n);

/// Newey-West bandwidth rule floor(4 * (T/100)^(2/9)).
int newey_west_bandwidth(std::size_t n);

}  // namespace tdac
