#pragma once

#include <vector>

#include "satmimo/channel.hpp"
#include "satmimo/precoding.hpp"
#include "satmimo/rng.hpp"

namespace satmimo {

// Sample-average minorizer constants. `c` is carried for the tangency
// identity a_k sum_i |w_i^H g_k|^2 - 2 Re{w_k^H g_k b_k} + c_k = 1 at the
// expansion point; the precoder update itself only consumes (a, b).
struct MmConstants {
  RVec a;
  CVec b;
  RVec c;
};

struct MmSolveResult {
  PrecoderMatrix precoder;
  SolveTrace trace;
};

// Minorizer constants at precoder `w_n`, averaged over the frozen batch.
MmConstants mm_constants(const PrecoderMatrix& w_n, const ChannelBatch& batch,
                         const std::vector<UtChannelStats>& stats);

// w_k = (sum_i a_i g_i g_i^H + mu I)^{-1} g_k b_k with mu >= 0 picked so the
// total power equals the budget (bisection), or the unconstrained mu = 0
// solution when it is already feasible. Throws DegenerateDirectionError when
// every b_k vanishes.
PrecoderMatrix regularized_update(const RVec& a, const CVec& b, const CMat& g_all,
                                  double power_budget);

// Matched-filter columns scaled to equal per-UT power. The default solver
// initialization.
PrecoderMatrix mrt_precoder(const CMat& g_all, double power_budget);

// Monte-Carlo MM ascent on the ergodic sum rate. The sample set is drawn
// once from `rng` and frozen for the whole solve, which is what makes the
// objective trace monotone.
MmSolveResult solve_mm(const std::vector<UtChannelStats>& stats, int num_samples,
                       const PrecoderMatrix& init, const SolveOptions& opts, RngStream rng);

}  // namespace satmimo
