#pragma once

#include <vector>

#include "satmimo/channel.hpp"
#include "satmimo/precoder_mm.hpp"
#include "satmimo/precoding.hpp"

namespace satmimo {

struct WmmseConstants {
  RVec a_tilde;
  CVec b_tilde;
};

struct WmmseSolveResult {
  PrecoderMatrix precoder;
  SolveTrace trace;
};

// Closed-form update constants of the upper-bound design:
//   a~_k = beta_k / (sigma_k^2 + sum_{i != k} |g_k^H w_i|^2 beta_k)
//        - beta_k / (sigma_k^2 + sum_i |g_k^H w_i|^2 beta_k)
//   b~_k = beta_k g_k^H w_k / (sigma_k^2 + sum_{i != k} |g_k^H w_i|^2 beta_k)
// The difference-of-inverses form is kept as written; it is numerically
// benign at these magnitudes and a~_k >= 0 by construction.
WmmseConstants wmmse_constants(const PrecoderMatrix& w_n,
                               const std::vector<UtChannelStats>& stats);

// Iteratively weighted MMSE ascent on the Jensen upper bound of the ergodic
// sum rate. Shares the regularized precoder update with the Monte-Carlo MM
// solver; the trace objective is sum_k R_k^ub.
WmmseSolveResult solve_wmmse(const std::vector<UtChannelStats>& stats, const PrecoderMatrix& init,
                             const SolveOptions& opts);

}  // namespace satmimo
