#include "satmimo/precoder_wmmse.hpp"

#include <cmath>
#include <stdexcept>

#include "satmimo/rate_eval.hpp"

namespace satmimo {

WmmseConstants wmmse_constants(const PrecoderMatrix& w_n,
                               const std::vector<UtChannelStats>& stats) {
  const int num_uts = static_cast<int>(stats.size());
  WmmseConstants consts;
  consts.a_tilde.resize(num_uts);
  consts.b_tilde.resize(num_uts);

  const CMat gw = stack_responses(stats).adjoint() * w_n.columns;  // (k,i) = g_k^H w_i
  for (int k = 0; k < num_uts; ++k) {
    const double beta = stats[static_cast<std::size_t>(k)].beta;
    const double sigma2 = stats[static_cast<std::size_t>(k)].sigma2;
    const double p_total = gw.row(k).squaredNorm();
    const double p_self = std::norm(gw(k, k));
    const double with_all = sigma2 + p_total * beta;
    const double without_self = sigma2 + (p_total - p_self) * beta;
    consts.a_tilde(k) = beta / without_self - beta / with_all;
    consts.b_tilde(k) = beta * gw(k, k) / without_self;
  }
  return consts;
}

WmmseSolveResult solve_wmmse(const std::vector<UtChannelStats>& stats, const PrecoderMatrix& init,
                             const SolveOptions& opts) {
  if (init.total_power() > init.power_budget * (1.0 + 1e-9)) {
    throw std::invalid_argument("solve_wmmse: initial precoder exceeds the power budget");
  }
  const CMat g_all = stack_responses(stats);

  WmmseSolveResult result;
  result.precoder = init;
  result.trace.objective_per_iteration.push_back(
      upper_bound_rates(result.precoder, stats).sum_rate);

  for (int n = 0; n < opts.max_iter; ++n) {
    const WmmseConstants consts = wmmse_constants(result.precoder, stats);
    result.precoder =
        regularized_update(consts.a_tilde, consts.b_tilde, g_all, init.power_budget);
    const double objective = upper_bound_rates(result.precoder, stats).sum_rate;
    const double previous = result.trace.objective_per_iteration.back();
    result.trace.objective_per_iteration.push_back(objective);
    if (std::abs(objective - previous) < opts.eps) {
      result.trace.converged = true;
      break;
    }
  }
  result.trace.iterations =
      static_cast<int>(result.trace.objective_per_iteration.size()) - 1;
  return result;
}

}  // namespace satmimo
