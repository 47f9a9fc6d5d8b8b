#include "satmimo/rate_eval.hpp"

#include <cmath>
#include <stdexcept>

#include "satmimo/numeric.hpp"
#include "satmimo/precoder_wmmse.hpp"

namespace satmimo {

RateReport ergodic_sum_rate(const PrecoderMatrix& w, const std::vector<UtChannelStats>& stats,
                            const ChannelBatch& batch) {
  const int num_uts = static_cast<int>(stats.size());
  const int num_samples = batch.num_samples();
  if (batch.num_uts() != num_uts) {
    throw std::invalid_argument("ergodic_sum_rate: batch and stats disagree on UT count");
  }

  const CMat gw = stack_responses(stats).adjoint() * w.columns;  // (k,i) = g_k^H w_i

  RateReport report;
  report.method = RateMethod::kMonteCarlo;
  report.per_ut_rate.resize(num_uts);
  report.estimator_stderr.resize(num_uts);

  RMat per_sample(num_uts, num_samples);
  for (int k = 0; k < num_uts; ++k) {
    const double sigma2 = stats[static_cast<std::size_t>(k)].sigma2;
    const double p_self = std::norm(gw(k, k));
    const double p_interf = gw.row(k).squaredNorm() - p_self;
    for (int s = 0; s < num_samples; ++s) {
      const double x = batch.norm_sq(k, s);
      per_sample(k, s) = std::log2(1.0 + p_self * x / (p_interf * x + sigma2));
    }
  }

  std::vector<double> scratch(static_cast<std::size_t>(num_samples));
  const double scale = num_samples > 1 ? 1.0 / std::sqrt(static_cast<double>(num_samples)) : 0.0;
  for (int k = 0; k < num_uts; ++k) {
    for (int s = 0; s < num_samples; ++s) scratch[static_cast<std::size_t>(s)] = per_sample(k, s);
    const double mean = pairwise_mean<double>(scratch);
    report.per_ut_rate(k) = mean;
    for (int s = 0; s < num_samples; ++s) {
      const double d = per_sample(k, s) - mean;
      scratch[static_cast<std::size_t>(s)] = d * d;
    }
    const double var = num_samples > 1
                           ? pairwise_sum<double>(scratch) / static_cast<double>(num_samples - 1)
                           : 0.0;
    report.estimator_stderr(k) = std::sqrt(var) * scale;
  }

  for (int s = 0; s < num_samples; ++s) scratch[static_cast<std::size_t>(s)] = per_sample.col(s).sum();
  const double sum_mean = pairwise_mean<double>(scratch);
  report.sum_rate = sum_mean;
  for (int s = 0; s < num_samples; ++s) {
    const double d = per_sample.col(s).sum() - sum_mean;
    scratch[static_cast<std::size_t>(s)] = d * d;
  }
  const double sum_var = num_samples > 1
                             ? pairwise_sum<double>(scratch) / static_cast<double>(num_samples - 1)
                             : 0.0;
  report.sum_stderr = std::sqrt(sum_var) * scale;
  return report;
}

RateReport upper_bound_rates(const PrecoderMatrix& w, const std::vector<UtChannelStats>& stats) {
  const int num_uts = static_cast<int>(stats.size());
  const CMat gw = stack_responses(stats).adjoint() * w.columns;

  RateReport report;
  report.method = RateMethod::kUpperBound;
  report.per_ut_rate.resize(num_uts);
  report.estimator_stderr = RVec::Zero(num_uts);
  report.sum_rate = 0.0;
  for (int k = 0; k < num_uts; ++k) {
    const double beta = stats[static_cast<std::size_t>(k)].beta;
    const double sigma2 = stats[static_cast<std::size_t>(k)].sigma2;
    const double p_self = std::norm(gw(k, k));
    const double p_interf = gw.row(k).squaredNorm() - p_self;
    report.per_ut_rate(k) = std::log2(1.0 + p_self * beta / (p_interf * beta + sigma2));
    report.sum_rate += report.per_ut_rate(k);
  }
  return report;
}

PrecoderMatrix aslnr_precoders(const std::vector<UtChannelStats>& stats, double power_budget) {
  if (!(power_budget > 0.0)) throw std::invalid_argument("aslnr_precoders: power must be > 0");
  const CMat g_all = stack_responses(stats);
  const Eigen::Index m = g_all.rows();
  const Eigen::Index num_uts = g_all.cols();
  const double per_ut_power = power_budget / static_cast<double>(num_uts);

  RVec betas(num_uts);
  for (Eigen::Index k = 0; k < num_uts; ++k) betas(k) = stats[static_cast<std::size_t>(k)].beta;
  CMat leakage = CMat::Zero(m, m);
  leakage.selfadjointView<Eigen::Lower>().rankUpdate(g_all * betas.cwiseSqrt().asDiagonal());
  leakage = CMat(leakage.selfadjointView<Eigen::Lower>());

  PrecoderMatrix w;
  w.power_budget = power_budget;
  w.columns.resize(m, num_uts);
  for (Eigen::Index k = 0; k < num_uts; ++k) {
    const double sigma2 = stats[static_cast<std::size_t>(k)].sigma2;
    const CMat t_k = leakage + (sigma2 / per_ut_power) * CMat::Identity(m, m);
    const CVec v = Eigen::LLT<CMat>(t_k).solve(g_all.col(k));
    w.columns.col(k) = std::sqrt(per_ut_power) * v / v.norm();
  }
  return w;
}

LosDesignResult los_only_design(const std::vector<UtChannelStats>& stats, double power_budget,
                                const SolveOptions& opts) {
  std::vector<UtChannelStats> los_stats = stats;
  for (UtChannelStats& st : los_stats) {
    st.beta = st.kappa * st.beta / (st.kappa + 1.0);
  }
  const PrecoderMatrix init = mrt_precoder(stack_responses(los_stats), power_budget);
  WmmseSolveResult solved = solve_wmmse(los_stats, init, opts);
  return {std::move(solved.precoder), std::move(solved.trace)};
}

PrecoderMatrix los_only_precoders(const std::vector<UtChannelStats>& stats, double power_budget,
                                  const SolveOptions& opts) {
  return los_only_design(stats, power_budget, opts).precoder;
}

}  // namespace satmimo
