// Seeded synthetic-data generators backing tests, power studies, and demo
// fixtures.
//
// Reproducibility contract: the generator is std::mt19937_64 (fully pinned
// by the C++ standard) and normal deviates come from a cached Box-Muller
// transform of 53-bit uniforms, so the same seed yields bit-identical output
// on every platform and thread count. Stream id: "mt19937_64/box-muller/v1".
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "tdac/market_data.hpp"

namespace tdac {

inline constexpr const char* kRngStreamId = "mt19937_64/box-muller/v1";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return (gen_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; consumes two uniforms per pair.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Stationary VAR generator specification. Coefficient matrix coeffs[k] maps
/// the values k+1 steps back onto the current step.
struct VarSpec {
  int n_vars = 0;
  int lag_order = 0;
  std::vector<Eigen::MatrixXd> coeffs;  // lag_order matrices, n_vars x n_vars
  Eigen::MatrixXd noise_cov;            // n_vars x n_vars, positive definite
  std::uint64_t seed = 0;
};

/// Largest eigenvalue modulus of the companion matrix; the generator is
/// stationary iff this is < 1.
double spectral_radius(const VarSpec& spec);

/// Simulates T rows (after a discarded 200-sample burn-in). Deterministic
/// given spec.seed. Throws ValidationError for nonstationary specs.
Eigen::MatrixXd simulate_var(const VarSpec& spec, int t_samples);

/// Cumulative sum of unit normals, length t_samples.
std::vector<double> simulate_random_walk(int t_samples, std::uint64_t seed);

/// I.i.d. normal return matrix: one column per instrument, sd sigma.
ReturnMatrix baseline_returns(int n_days, int n_instruments, double sigma,
                              std::uint64_t seed, Date start_date = {2018, 1, 1});

/// Scales every return inside [from, to] and adds one common per-day shock
/// across instruments, so window point clouds spread out and 0-dimensional
/// deaths grow. scale = 1 is the identity (zero shock). Throws
/// ValidationError when the window misses the date range entirely.
ReturnMatrix inject_crash(const ReturnMatrix& returns, Date from, Date to,
                          double scale, std::uint64_t seed = 7);

/// Turns returns back into a positive price matrix (cumulative exponential,
/// base price 100); useful for emitting synthetic CSV fixtures.
PriceMatrix prices_from_returns(const ReturnMatrix& r, double base = 100.0);

}  // namespace tdac
