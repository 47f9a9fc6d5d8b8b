#pragma once

#include <vector>

#include "satmimo/channel.hpp"
#include "satmimo/precoding.hpp"

namespace satmimo {

enum class RateMethod { kMonteCarlo, kUpperBound };

struct RateReport {
  RVec per_ut_rate;       // bits/s/Hz
  RVec estimator_stderr;  // zero for closed-form reports
  double sum_rate{0.0};
  double sum_stderr{0.0};
  RateMethod method{RateMethod::kMonteCarlo};
};

// Sample-average ergodic rates over the batch, with per-UT and sum-level
// standard errors. Deterministic given the batch.
RateReport ergodic_sum_rate(const PrecoderMatrix& w, const std::vector<UtChannelStats>& stats,
                            const ChannelBatch& batch);

// Jensen upper-bound rates: the ergodic-rate expression with ||d_k||^2
// replaced by beta_k. Exact closed form, no sampling.
RateReport upper_bound_rates(const PrecoderMatrix& w, const std::vector<UtChannelStats>& stats);

// Average signal-to-leakage-and-noise-ratio baseline with uniform per-UT
// power P/K.
PrecoderMatrix aslnr_precoders(const std::vector<UtChannelStats>& stats, double power_budget);

// Upper-bound design that sees only the LoS share of the channel power:
// beta_k replaced by kappa_k beta_k / (kappa_k + 1) during the solve. The
// returned precoders are meant to be evaluated on the full Rician channel.
PrecoderMatrix los_only_precoders(const std::vector<UtChannelStats>& stats, double power_budget,
                                  const SolveOptions& opts = {});

// Same design, with the solve trace (iteration count) exposed.
struct LosDesignResult {
  PrecoderMatrix precoder;
  SolveTrace trace;
};
LosDesignResult los_only_design(const std::vector<UtChannelStats>& stats, double power_budget,
                                const SolveOptions& opts = {});

}  // namespace satmimo
