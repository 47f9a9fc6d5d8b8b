#pragma once

#include <vector>

#include "satmimo/channel.hpp"
#include "satmimo/precoding.hpp"

namespace satmimo {

// Virtual-uplink transmit powers: lambda >= 0 elementwise on the simplex
// {1^T lambda = budget}. One scalar per UT is the whole decision variable.
struct Multipliers {
  RVec lambda;
  double budget{0.0};

  double total() const { return lambda.sum(); }
};

// Minorizer data at the expansion point. `psi(k, i) = |g_i^H u_k|^2 / VMMSE_k`;
// `psi_colsum(k) = sum_i psi(i, k)` is what the multiplier update consumes,
// the full matrix and `delta` support the tangency identity.
struct LmoConstants {
  RMat psi;
  RVec psi_colsum;
  RVec chi;
  RVec delta;
  RVec rates;  // r_k at the expansion point, bits/s/Hz
};

struct LmoSolveResult {
  Multipliers multipliers;
  SolveTrace trace;
};

// Closed-form precoder recovery products. `w_bar` columns are unit-norm
// directions, `q` per-UT powers, `coupling` the K_active x K_active system
// whose solution against the all-ones vector yields q. UTs below the
// activity threshold are excluded (zero column in the final precoder).
struct RecoveredPrecoder {
  CMat w_bar;
  RVec gamma;
  RVec q;
  RMat coupling;
  std::vector<int> active;
};

struct RecoveryResult {
  RecoveredPrecoder details;
  PrecoderMatrix precoder;
};

struct RateBounds {
  RVec lower;
  double upper_sum{0.0};
};

// Virtual-uplink per-UT rates r_k = -log2(VMMSE_k); one shared Hermitian
// factorization across all K.
RVec virtual_rates(const Multipliers& lam, const std::vector<UtChannelStats>& stats);

// Same rates by the log-determinant difference identity. Retained as an
// independent algebraic route for cross-checking; costs K+1 factorizations.
RVec virtual_rates_logdet(const Multipliers& lam, const std::vector<UtChannelStats>& stats);

LmoConstants lmo_constants(const Multipliers& lam_n, const std::vector<UtChannelStats>& stats);

// lambda_k = chi_k^2 (beta_k/sigma_k^2) / (sum_i psi_{i,k} beta_k/sigma_k^2 + nu)^2
// with nu found by bisection so the simplex constraint holds exactly.
Multipliers lmo_update(const LmoConstants& consts, const std::vector<UtChannelStats>& stats,
                       double power_budget);

// MM ascent of sum_k r_k over the simplex.
LmoSolveResult solve_lmo(const std::vector<UtChannelStats>& stats, const Multipliers& init,
                         const SolveOptions& opts);

// Closed-form precoders from multipliers: directions from the regularized
// inverse, per-UT powers from the coupling system (zero duality gap makes
// sum q = budget).
RecoveryResult recover_precoders(const Multipliers& lam, const std::vector<UtChannelStats>& stats);

// lambda_k = [1/(nu ln 2) - sigma_k^2/beta_k]^+ with 1^T lambda = budget.
// Exact active-set solution; ties resolved by UT index.
Multipliers waterfilling(const std::vector<UtChannelStats>& stats, double power_budget);

// Per-UT lower bounds (log argument clamped at 1e-12 when the bracketed term
// goes nonpositive) and the Hadamard upper bound on the rate sum.
RateBounds rate_bounds(const Multipliers& lam, const std::vector<UtChannelStats>& stats);

// Uniform lambda = budget/K, the default solver initialization.
Multipliers uniform_multipliers(int num_uts, double power_budget);

}  // namespace satmimo
