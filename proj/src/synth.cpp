#include "tdac/synth.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "tdac/errors.hpp"

namespace tdac {
namespace {

constexpr int kBurnIn = 200;

Eigen::MatrixXd companion_matrix(const VarSpec& spec) {
  const int n = spec.n_vars;
  const int p = spec.lag_order;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n * p, n * p);
  for (int k = 0; k < p; ++k) {
    comp.block(0, k * n, n, n) = spec.coeffs[static_cast<std::size_t>(k)];
  }
  if (p > 1) {
    comp.block(n, 0, n * (p - 1), n * (p - 1)) =
        Eigen::MatrixXd::Identity(n * (p - 1), n * (p - 1));
  }
  return comp;
}

void validate(const VarSpec& spec) {
  if (spec.n_vars < 1) throw ValidationError("VAR spec needs at least one variable");
  if (spec.lag_order < 1) throw ValidationError("VAR spec needs lag order >= 1");
  if (spec.coeffs.size() != static_cast<std::size_t>(spec.lag_order)) {
    throw ValidationError("VAR spec: expected " + std::to_string(spec.lag_order) +
                          " coefficient matrices, got " +
                          std::to_string(spec.coeffs.size()));
  }
  for (const auto& a : spec.coeffs) {
    if (a.rows() != spec.n_vars || a.cols() != spec.n_vars) {
      throw ValidationError("VAR coefficient matrix has wrong shape");
    }
  }
  if (spec.noise_cov.rows() != spec.n_vars || spec.noise_cov.cols() != spec.n_vars) {
    throw ValidationError("VAR noise covariance has wrong shape");
  }
}

}  // namespace

double spectral_radius(const VarSpec& spec) {
  validate(spec);
  const Eigen::MatrixXd comp = companion_matrix(spec);
  return comp.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::MatrixXd simulate_var(const VarSpec& spec, int t_samples) {
  validate(spec);
  if (t_samples < 1) throw ValidationError("simulate_var: t_samples must be >= 1");
  const double rho = spectral_radius(spec);
  if (rho >= 1.0) {
    throw ValidationError("VAR spec is nonstationary (spectral radius " +
                          std::to_string(rho) + " >= 1)");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(spec.noise_cov);
  if (llt.info() != Eigen::Success) {
    throw ValidationError("VAR noise covariance is not positive definite");
  }
  const Eigen::MatrixXd chol = llt.matrixL();

  const int n = spec.n_vars;
  const int p = spec.lag_order;
  const int total = kBurnIn + t_samples;
  Rng rng(spec.seed);

  Eigen::MatrixXd path = Eigen::MatrixXd::Zero(total + p, n);
  Eigen::VectorXd shock(n);
  for (int t = p; t < total + p; ++t) {
    for (int i = 0; i < n; ++i) shock(i) = rng.normal();
    Eigen::VectorXd value = chol * shock;
    for (int k = 0; k < p; ++k) {
      value += spec.coeffs[static_cast<std::size_t>(k)] * path.row(t - k - 1).transpose();
    }
    path.row(t) = value.transpose();
  }
  return path.bottomRows(t_samples);
}

std::vector<double> simulate_random_walk(int t_samples, std::uint64_t seed) {
  if (t_samples < 1) throw ValidationError("simulate_random_walk: t_samples must be >= 1");
  Rng rng(seed);
  std::vector<double> out(static_cast<std::size_t>(t_samples));
  double level = 0.0;
  for (auto& v : out) {
    level += rng.normal();
    v = level;
  }
  return out;
}

ReturnMatrix baseline_returns(int n_days, int n_instruments, double sigma,
                              std::uint64_t seed, Date start_date) {
  if (n_days < 1 || n_instruments < 1) {
    throw ValidationError("baseline_returns: need at least one day and one instrument");
  }
  if (sigma <= 0.0) throw ValidationError("baseline_returns: sigma must be positive");
  Rng rng(seed);
  ReturnMatrix r;
  r.symbols.reserve(static_cast<std::size_t>(n_instruments));
  for (int i = 0; i < n_instruments; ++i) r.symbols.push_back("S" + std::to_string(i));
  r.dates.reserve(static_cast<std::size_t>(n_days));
  r.values.assign(static_cast<std::size_t>(n_days),
                  std::vector<double>(static_cast<std::size_t>(n_instruments)));
  for (int d = 0; d < n_days; ++d) {
    r.dates.push_back(start_date.plus_days(d));
    for (int i = 0; i < n_instruments; ++i) {
      r.values[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)] =
          sigma * rng.normal();
    }
  }
  return r;
}

ReturnMatrix inject_crash(const ReturnMatrix& returns, Date from, Date to,
                          double scale, std::uint64_t seed) {
  if (scale <= 0.0) throw ValidationError("inject_crash: scale must be positive");
  ReturnMatrix out = returns;
  Rng rng(seed);
  bool touched = false;
  for (std::size_t d = 0; d < out.dates.size(); ++d) {
    if (out.dates[d] < from || to < out.dates[d]) continue;
    touched = true;
    // Common shock: zero when scale == 1 so that case stays the identity.
    const double shock = (scale - 1.0) * 0.01 * rng.normal();
    for (auto& v : out.values[d]) v = scale * v + shock;
  }
  if (!touched) {
    throw ValidationError("inject_crash: window [" + from.iso() + ", " + to.iso() +
                          "] does not overlap the return dates");
  }
  return out;
}

PriceMatrix prices_from_returns(const ReturnMatrix& r, double base) {
  if (base <= 0.0) throw ValidationError("prices_from_returns: base price must be positive");
  PriceMatrix p;
  p.symbols = r.symbols;
  p.dates.reserve(r.dates.size() + 1);
  // Synthesize the day before the first return so log-return round-trips.
  p.dates.push_back(r.dates.empty() ? Date{2018, 1, 1} : r.dates.front().plus_days(-1));
  for (const auto& d : r.dates) p.dates.push_back(d);
  p.values.assign(p.dates.size(), std::vector<double>(p.symbols.size(), base));
  for (std::size_t d = 0; d < r.dates.size(); ++d) {
    for (std::size_t i = 0; i < p.symbols.size(); ++i) {
      p.values[d + 1][i] = p.values[d][i] * std::exp(r.values[d][i]);
    }
  }
  return p;
}

}  // namespace tdac
