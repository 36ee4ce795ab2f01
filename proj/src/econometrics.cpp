#include "tdac/econometrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tdac/errors.hpp"

namespace tdac {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

// Dickey-Fuller design for a given lag depth k on the trailing sample of
// n_rows observations: columns [y_{t-1}, dy_{t-1}, ..., dy_{t-k}, 1],
// response dy_t. statsmodels-compatible sample alignment.
void df_design(std::span<const double> y, const std::vector<double>& dy, int k,
               std::size_t n_rows, Eigen::VectorXd& resp, Eigen::MatrixXd& X) {
  const std::size_t n_dy = dy.size();
  resp.resize(n_rows);
  X.resize(n_rows, k + 2);
  for (std::size_t r = 0; r < n_rows; ++r) {
    const std::size_t t = n_dy - n_rows + r;  // index into dy
    resp(r) = dy[t];
    X(r, 0) = y[t];  // level lagged once: y index t == dy index t - 1 + 1
    for (int j = 1; j <= k; ++j) X(r, j) = dy[t - j];
    X(r, k + 1) = 1.0;
  }
}

double aic_of(const RegressionFit& fit) {
  const double n = static_cast<double>(fit.n_obs);
  return n * std::log(fit.rss / n) + 2.0 * static_cast<double>(fit.n_params);
}

void check_unit_root_input(std::span<const double> s) {
  if (s.size() < 20) {
    throw InsufficientDataError("unit-root test: need at least 20 observations, got " +
                                std::to_string(s.size()));
  }
  const double first = s.front();
  bool constant = true;
  for (double v : s) {
    if (v != first) {
      constant = false;
      break;
    }
  }
  if (constant) {
    throw SingularDesignError("unit-root test: constant series gives a degenerate regression");
  }
}

// Lagged design shared by fpe_select and granger_test: response y_t on
// [1, y_{t-1..t-m}, x_{t-1..t-m}] over the trailing n_rows sample.
void var_design(std::span<const double> y, std::span<const double> x, int m,
                std::size_t n_rows, Eigen::VectorXd& resp, Eigen::MatrixXd& X) {
  const std::size_t n = y.size();
  resp.resize(n_rows);
  X.resize(n_rows, 2 * m + 1);
  for (std::size_t r = 0; r < n_rows; ++r) {
    const std::size_t t = n - n_rows + r;
    resp(r) = y[t];
    X(r, 0) = 1.0;
    for (int j = 1; j <= m; ++j) {
      X(r, j) = y[t - j];
      X(r, m + j) = x[t - j];
    }
  }
}

}  // namespace

int schwert_max_lag(std::size_t n) {
  return static_cast<int>(std::floor(12.0 * std::pow(n / 100.0, 0.25)));
}

int newey_west_bandwidth(std::size_t n) {
  return static_cast<int>(std::floor(4.0 * std::pow(n / 100.0, 2.0 / 9.0)));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double reg_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(a, b, x) / a;
  }
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double f_sf(double f, double d1, double d2) {
  if (f <= 0.0) return 1.0;
  const double x = d2 / (d2 + d1 * f);
  return reg_incomplete_beta(d2 / 2.0, d1 / 2.0, x);
}

// Response-surface coefficients for the constant-only Dickey-Fuller tau
// distribution (MacKinnon 1994 as used by common statistics packages).
double mackinnon_p(double tau) {
  constexpr double tau_max = 2.74;
  constexpr double tau_min = -18.83;
  constexpr double tau_star = -1.61;
  static constexpr double small_p[3] = {2.1659, 1.4412, 3.8269e-2};
  static constexpr double large_p[4] = {1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2};

  if (tau > tau_max) return 1.0;
  if (tau < tau_min) return 0.0;
  double z = 0.0;
  if (tau <= tau_star) {
    z = small_p[0] + tau * (small_p[1] + tau * small_p[2]);
  } else {
    z = large_p[0] + tau * (large_p[1] + tau * (large_p[2] + tau * large_p[3]));
  }
  return normal_cdf(z);
}

RegressionFit ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& X) {
  const auto n = X.rows();
  const auto k = X.cols();
  if (y.size() != n) throw ValidationError("ols: y and X row counts differ");
  if (n <= k) {
    throw InsufficientDataError("ols: need more observations than parameters");
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < k) throw SingularDesignError("ols: design matrix is rank deficient");

  RegressionFit fit;
  fit.coefficients = qr.solve(y);
  fit.residuals = y - X * fit.coefficients;
  fit.rss = fit.residuals.squaredNorm();
  fit.n_obs = static_cast<std::size_t>(n);
  fit.n_params = static_cast<std::size_t>(k);

  // (X'X)^{-1} from the pivoted factor: X P = Q R.
  const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  Eigen::MatrixXd xtx_inv = r_inv * r_inv.transpose();
  xtx_inv = qr.colsPermutation() * xtx_inv * qr.colsPermutation().transpose();

  const double sigma2 = fit.rss / static_cast<double>(n - k);
  fit.std_errors = (sigma2 * xtx_inv.diagonal().array()).sqrt();
  return fit;
}

std::vector<double> difference(std::span<const double> s, int order) {
  if (order < 0) throw ValidationError("difference: order must be >= 0");
  if (static_cast<std::size_t>(order) >= s.size() && order > 0) {
    throw InsufficientDataError("difference: series of length " +
                                std::to_string(s.size()) +
                                " cannot be differenced " + std::to_string(order) +
                                " times");
  }
  std::vector<double> out(s.begin(), s.end());
  for (int d = 0; d < order; ++d) {
    for (std::size_t i = 0; i + 1 < out.size(); ++i) out[i] = out[i + 1] - out[i];
    out.pop_back();
  }
  return out;
}

UnitRootResult adf_test(std::span<const double> s, int max_lag) {
  check_unit_root_input(s);
  const std::size_t n = s.size();
  const std::vector<double> dy = difference(s, 1);

  int k_max = max_lag >= 0 ? max_lag : schwert_max_lag(n);
  // Keep the selection regression overdetermined.
  const int hard_cap = static_cast<int>(n) / 2 - 3;
  k_max = std::clamp(k_max, 0, std::max(0, hard_cap));

  // Lag depth by AIC on a common trailing sample, then refit with the chosen
  // depth on its own full sample.
  const std::size_t sel_rows = dy.size() - static_cast<std::size_t>(k_max);
  int best_k = 0;
  double best_aic = kInf;
  for (int k = 0; k <= k_max; ++k) {
    Eigen::VectorXd resp;
    Eigen::MatrixXd X;
    df_design(s, dy, k, sel_rows, resp, X);
    const double aic = aic_of(ols(resp, X));
    if (aic < best_aic) {
      best_aic = aic;
      best_k = k;
    }
  }

  Eigen::VectorXd resp;
  Eigen::MatrixXd X;
  df_design(s, dy, best_k, dy.size() - static_cast<std::size_t>(best_k), resp, X);
  const RegressionFit fit = ols(resp, X);
  const double tau = fit.coefficients(0) / fit.std_errors(0);

  UnitRootResult res;
  res.statistic = tau;
  res.p_value = mackinnon_p(tau);
  res.test = UnitRootTest::adf;
  res.lags_or_bandwidth = best_k;
  return res;
}

UnitRootResult pp_test(std::span<const double> s, int bandwidth) {
  check_unit_root_input(s);
  const std::size_t n_rows = s.size() - 1;
  const int q = bandwidth >= 0 ? bandwidth : newey_west_bandwidth(s.size());

  // Plain Dickey-Fuller regression in levels: y_t = c + rho * y_{t-1} + u_t.
  Eigen::VectorXd y(n_rows);
  Eigen::MatrixXd X(n_rows, 2);
  for (std::size_t t = 0; t < n_rows; ++t) {
    y(t) = s[t + 1];
    X(t, 0) = 1.0;
    X(t, 1) = s[t];
  }
  const RegressionFit fit = ols(y, X);
  const double n = static_cast<double>(n_rows);
  const double rho = fit.coefficients(1);
  const double se_rho = fit.std_errors(1);
  const double tau = (rho - 1.0) / se_rho;
  const double s2 = fit.rss / (n - 2.0);  // regression error variance
  const double gamma0 = fit.rss / n;

  // Bartlett-weighted long-run variance of the residuals.
  double lam2 = gamma0;
  for (int j = 1; j <= q; ++j) {
    double acov = 0.0;
    for (std::size_t t = static_cast<std::size_t>(j); t < n_rows; ++t) {
      acov += fit.residuals(t) * fit.residuals(t - j);
    }
    acov /= n;
    lam2 += 2.0 * (1.0 - static_cast<double>(j) / (q + 1.0)) * acov;
  }
  if (lam2 <= 0.0) lam2 = gamma0;  // guards pathological negative estimates

  const double z_tau = std::sqrt(gamma0 / lam2) * tau -
                       (lam2 - gamma0) * n * se_rho /
                           (2.0 * std::sqrt(lam2) * std::sqrt(s2));

  UnitRootResult res;
  res.statistic = z_tau;
  res.p_value = mackinnon_p(z_tau);
  res.test = UnitRootTest::pp;
  res.lags_or_bandwidth = q;
  return res;
}

std::pair<std::vector<StationarySeries>, int> ensure_stationary(
    const std::vector<std::vector<double>>& series, double alpha, int d_max) {
  if (series.empty()) throw ValidationError("ensure_stationary: no series given");
  if (d_max < 1) throw ValidationError("ensure_stationary: d_max must be >= 1");

  auto passes = [&](std::span<const double> v) {
    return adf_test(v).p_value < alpha && pp_test(v).p_value < alpha;
  };

  for (int d = 0; d <= d_max; ++d) {
    std::vector<StationarySeries> out;
    out.reserve(series.size());
    bool all_pass = true;
    for (const auto& s : series) {
      StationarySeries st;
      st.values = difference(s, d);
      st.differencing_order = d;
      st.stationary = passes(st.values);
      all_pass = all_pass && st.stationary;
      out.push_back(std::move(st));
    }
    if (all_pass || d == d_max) return {std::move(out), d};
  }
  return {{}, d_max};  // unreachable
}

int fpe_select(std::span<const double> y, std::span<const double> x, int max_lag) {
  if (y.size() != x.size()) throw ValidationError("fpe_select: series lengths differ");
  if (max_lag < 1) throw ValidationError("fpe_select: max_lag must be >= 1");
  const std::size_t n = y.size();
  if (n <= static_cast<std::size_t>(2 * max_lag + 2)) {
    throw InsufficientDataError("fpe_select: need T > 2*max_lag + 2");
  }

  // All candidate orders are compared on the common trailing sample so the
  // criterion differences come from fit, not sample size.
  const std::size_t n_rows = n - static_cast<std::size_t>(max_lag);
  const double t_eff = static_cast<double>(n_rows);
  int best_m = 1;
  double best_fpe = kInf;
  for (int m = 1; m <= max_lag; ++m) {
    // Both VAR equations share one regressor matrix: [1, y lags, x lags].
    Eigen::VectorXd resp_y(n_rows), resp_x(n_rows);
    Eigen::MatrixXd X(n_rows, 2 * m + 1);
    for (std::size_t r = 0; r < n_rows; ++r) {
      const std::size_t t = n - n_rows + r;
      resp_y(r) = y[t];
      resp_x(r) = x[t];
      X(r, 0) = 1.0;
      for (int j = 1; j <= m; ++j) {
        X(r, j) = y[t - j];
        X(r, m + j) = x[t - j];
      }
    }
    const RegressionFit fy = ols(resp_y, X);
    const RegressionFit fx = ols(resp_x, X);
    const double syy = fy.rss / t_eff;
    const double sxx = fx.rss / t_eff;
    const double syx = fy.residuals.dot(fx.residuals) / t_eff;
    const double det_sigma = syy * sxx - syx * syx;
    const double ratio = (t_eff + 2.0 * m + 1.0) / (t_eff - 2.0 * m - 1.0);
    const double fpe = ratio * ratio * det_sigma;
    if (fpe < best_fpe) {
      best_fpe = fpe;
      best_m = m;
    }
  }
  return best_m;
}

GrangerResult granger_test(std::span<const double> effect,
                           std::span<const double> cause, int q) {
  if (effect.size() != cause.size()) {
    throw ValidationError("granger_test: series lengths differ");
  }
  if (q < 1) throw ValidationError("granger_test: lag must be >= 1");
  const std::size_t n = effect.size();
  const std::size_t n_rows = n - static_cast<std::size_t>(q);
  const int df_den = static_cast<int>(n_rows) - 2 * q - 1;
  if (df_den <= 0) {
    throw InsufficientDataError("granger_test: need T - 2q - 1 > 0");
  }

  Eigen::VectorXd resp;
  Eigen::MatrixXd X_full;
  var_design(effect, cause, q, n_rows, resp, X_full);
  const Eigen::MatrixXd X_own = X_full.leftCols(q + 1);

  const RegressionFit restricted = ols(resp, X_own);
  const RegressionFit unrestricted = ols(resp, X_full);

  GrangerResult res;
  res.lag = q;
  res.df_num = q;
  res.df_den = df_den;
  // QR leaves rounding residue around 1e-16 * scale even when the model fits
  // exactly, so "zero" must be judged relative to the response magnitude.
  const double fit_scale = std::max(restricted.rss, resp.squaredNorm());
  if (unrestricted.rss <= 1e-12 * fit_scale) {
    res.perfect_fit = true;
    res.f_statistic = kInf;
    res.p_value = 0.0;
    return res;
  }
  res.f_statistic = ((restricted.rss - unrestricted.rss) / q) /
                    (unrestricted.rss / df_den);
  if (res.f_statistic < 0.0) res.f_statistic = 0.0;  // numerical guard
  res.p_value = f_sf(res.f_statistic, q, df_den);
  return res;
}

}  // namespace tdac
