#pragma once

// Shared instance builders and independent oracles for the test suites.
// Oracle code deliberately re-derives quantities from scratch (scalar loops,
// closed forms, bisection) so it exercises none of the library paths it
// checks.

#include <cmath>
#include <complex>
#include <vector>

#include "satmimo/channel.hpp"
#include "satmimo/numeric.hpp"
#include "satmimo/precoder_lmo.hpp"
#include "satmimo/precoding.hpp"
#include "satmimo/rng.hpp"
#include "satmimo/scenario.hpp"

namespace satmimo::test {

inline CVec random_unit(RngStream& rng, int n) {
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

inline CMat random_unit_columns(RngStream& rng, int m, int k) {
  CMat g(m, k);
  for (int c = 0; c < k; ++c) g.col(c) = random_unit(rng, m);
  return g;
}

// Per-UT stats with scalar receive side (N = 1): d0 = (1), Sigma = (1).
// Lets precoder tests pick arbitrary (beta, sigma2, g) directly.
inline std::vector<UtChannelStats> scalar_stats(const RVec& beta, const RVec& sigma2,
                                                const CMat& g_cols) {
  std::vector<UtChannelStats> stats;
  for (int k = 0; k < g_cols.cols(); ++k) {
    stats.push_back(make_ut_stats(beta(k), 1.0, g_cols.col(k), CVec::Ones(1),
                                  CMat::Identity(1, 1), sigma2(k)));
  }
  return stats;
}

inline std::vector<UtChannelStats> scalar_stats(double beta, double sigma2, const CMat& g_cols) {
  return scalar_stats(RVec::Constant(g_cols.cols(), beta),
                      RVec::Constant(g_cols.cols(), sigma2), g_cols);
}

inline Multipliers random_simplex(RngStream& rng, int k, double budget) {
  Multipliers lam;
  lam.budget = budget;
  lam.lambda.resize(k);
  for (int i = 0; i < k; ++i) lam.lambda(i) = -std::log(1.0 - rng.uniform());
  lam.lambda *= budget / lam.lambda.sum();
  return lam;
}

// Exactly orthonormal steering directions: the first `k` columns of the
// M-point DFT matrix.
inline CMat fourier_columns(int m, int k) {
  CMat g(m, k);
  const std::complex<double> j{0.0, 1.0};
  for (int c = 0; c < k; ++c) {
    for (int r = 0; r < m; ++r) {
      g(r, c) = std::exp(-j * (2.0 * std::numbers::pi * r * c / static_cast<double>(m))) /
                std::sqrt(static_cast<double>(m));
    }
  }
  return g;
}

// ----- independent oracles -----

// Virtual-uplink sum rate of a 2-UT, 2-antenna instance via closed-form 2x2
// determinants (Eq.-independent of the library's factorization paths).
inline double tiny_sum_rate_oracle(const CMat& g, const RVec& beta, const RVec& sigma2,
                                   const RVec& lambda) {
  const auto det2 = [](const CMat& a) {
    return std::real(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0));
  };
  const double rho0 = lambda(0) * beta(0) / sigma2(0);
  const double rho1 = lambda(1) * beta(1) / sigma2(1);
  const CMat b0 = CMat::Identity(2, 2) + rho0 * (g.col(0) * g.col(0).adjoint());
  const CMat b1 = CMat::Identity(2, 2) + rho1 * (g.col(1) * g.col(1).adjoint());
  const CMat full = b0 + rho1 * (g.col(1) * g.col(1).adjoint());
  return (std::log2(det2(full)) - std::log2(det2(b1))) +
         (std::log2(det2(full)) - std::log2(det2(b0)));
}

// Brute-force grid maximum of the virtual-uplink sum rate over the 2-UT
// simplex, `points` samples of lambda_1 in [0, P].
inline double grid_max_sum_rate(const CMat& g, const RVec& beta, const RVec& sigma2, double budget,
                                int points) {
  double best = 0.0;
  for (int i = 0; i < points; ++i) {
    const double l0 = budget * static_cast<double>(i) / static_cast<double>(points - 1);
    RVec lambda(2);
    lambda << l0, budget - l0;
    best = std::max(best, tiny_sum_rate_oracle(g, beta, sigma2, lambda));
  }
  return best;
}

// Water-filling by 1-D bisection on the water level (independent of the
// library's sort-based active-set construction).
inline RVec waterfilling_bisection_oracle(const RVec& beta, const RVec& sigma2, double budget) {
  const RVec floor_level = sigma2.cwiseQuotient(beta);
  double lo = floor_level.minCoeff();
  double hi = lo + budget;
  const auto total = [&](double level) {
    double acc = 0.0;
    for (int k = 0; k < beta.size(); ++k) acc += std::max(level - floor_level(k), 0.0);
    return acc;
  };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (total(mid) > budget) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  RVec lambda(beta.size());
  for (int k = 0; k < beta.size(); ++k) lambda(k) = std::max(0.5 * (lo + hi) - floor_level(k), 0.0);
  return lambda;
}

}  // namespace satmimo::test
