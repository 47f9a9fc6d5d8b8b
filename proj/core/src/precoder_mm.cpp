#include "satmimo/precoder_mm.hpp"

#include <cmath>
#include <stdexcept>

#include "satmimo/errors.hpp"
#include "satmimo/numeric.hpp"
#include "satmimo/rate_eval.hpp"

namespace satmimo {

namespace {

PrecoderMatrix solve_for_mu(const CMat& reg_matrix, const CMat& rhs, double power_budget) {
  Eigen::LLT<CMat> llt(reg_matrix);
  if (llt.info() != Eigen::Success) {
    throw NumericError("regularized_update: Cholesky factorization failed");
  }
  PrecoderMatrix w;
  w.columns = llt.solve(rhs);
  w.power_budget = power_budget;
  return w;
}

}  // namespace

PrecoderMatrix regularized_update(const RVec& a, const CVec& b, const CMat& g_all,
                                  double power_budget) {
  const Eigen::Index m = g_all.rows();
  const Eigen::Index k = g_all.cols();
  if (a.size() != k || b.size() != k) {
    throw std::invalid_argument("regularized_update: constants must have one entry per UT");
  }
  if (!(power_budget > 0.0)) {
    throw std::invalid_argument("regularized_update: power budget must be > 0");
  }
  if ((a.array() < 0.0).any()) {
    throw std::invalid_argument("regularized_update: a must be nonnegative");
  }
  if (b.lpNorm<Eigen::Infinity>() == 0.0) {
    throw DegenerateDirectionError("regularized_update: all b_k are zero");
  }

  CMat quad = CMat::Zero(m, m);
  quad.selfadjointView<Eigen::Lower>().rankUpdate(g_all * a.cwiseSqrt().asDiagonal());
  quad = CMat(quad.selfadjointView<Eigen::Lower>());
  const CMat rhs = g_all * b.asDiagonal();

  // Unconstrained stationary point. Valid only if the least-squares residual
  // vanishes (right-hand side in range of the quadratic term); a nonzero
  // residual means the subproblem is unbounded without the power constraint.
  {
    Eigen::CompleteOrthogonalDecomposition<CMat> cod(quad);
    CMat w0 = cod.solve(rhs);
    const double residual = (quad * w0 - rhs).norm();
    if (residual <= 1e-10 * rhs.norm() && w0.squaredNorm() <= power_budget * (1.0 + 1e-12)) {
      PrecoderMatrix w;
      w.columns = std::move(w0);
      w.power_budget = power_budget;
      return w;
    }
  }

  // Power is strictly decreasing in mu, so bracket and bisect.
  const CMat identity = CMat::Identity(m, m);
  double hi = quad.norm() + b.cwiseAbs().sum() / std::sqrt(power_budget);
  PrecoderMatrix w = solve_for_mu(quad + hi * identity, rhs, power_budget);
  while (w.total_power() >= power_budget) {
    hi *= 2.0;
    w = solve_for_mu(quad + hi * identity, rhs, power_budget);
  }
  // Invariant: power(hi) <= budget <= power(lo); the hi side stays feasible.
  double lo = 0.0;
  for (int iter = 0; iter < 300; ++iter) {
    const double mid = 0.5 * (lo + hi);
    w = solve_for_mu(quad + mid * identity, rhs, power_budget);
    const double power = w.total_power();
    if (power > power_budget) {
      lo = mid;
    } else {
      hi = mid;
      if (power_budget - power <= 1e-12 * power_budget) return w;
    }
    if (hi - lo <= 1e-18 * hi) break;
  }
  return solve_for_mu(quad + hi * identity, rhs, power_budget);
}

PrecoderMatrix mrt_precoder(const CMat& g_all, double power_budget) {
  PrecoderMatrix w;
  w.power_budget = power_budget;
  w.columns = g_all * std::sqrt(power_budget / static_cast<double>(g_all.cols()));
  return w;
}

MmConstants mm_constants(const PrecoderMatrix& w_n, const ChannelBatch& batch,
                         const std::vector<UtChannelStats>& stats) {
  const int num_uts = static_cast<int>(stats.size());
  const int num_samples = batch.num_samples();
  if (batch.num_uts() != num_uts) {
    throw std::invalid_argument("mm_constants: batch and stats disagree on UT count");
  }

  MmConstants consts;
  consts.a.resize(num_uts);
  consts.b.resize(num_uts);
  consts.c.resize(num_uts);

  const CMat gw = stack_responses(stats).adjoint() * w_n.columns;  // (k,i) = g_k^H w_i
  std::vector<double> acc_a(static_cast<std::size_t>(num_samples));
  std::vector<std::complex<double>> acc_b(static_cast<std::size_t>(num_samples));
  std::vector<double> acc_c(static_cast<std::size_t>(num_samples));

  for (int k = 0; k < num_uts; ++k) {
    const double sigma2 = stats[static_cast<std::size_t>(k)].sigma2;
    const std::complex<double> gw_kk = gw(k, k);  // g_k^H w_k
    const double p_kk = std::norm(gw_kk);
    const double p_total = gw.row(k).squaredNorm();
    for (int s = 0; s < num_samples; ++s) {
      const double x = batch.norm_sq(k, s);
      const double t = sigma2 + p_total * x;
      const double mmse = 1.0 - p_kk * x / t;
      if (!(mmse > 1e-15)) {
        throw NumericError("mm_constants: per-sample MMSE collapsed to zero");
      }
      acc_a[static_cast<std::size_t>(s)] = x * x * p_kk / (t * t * mmse);
      acc_b[static_cast<std::size_t>(s)] = x * gw_kk / (t * mmse);
      acc_c[static_cast<std::size_t>(s)] = (sigma2 * x * p_kk / (t * t) + 1.0) / mmse;
    }
    consts.a(k) = pairwise_mean<double>(acc_a);
    consts.b(k) = pairwise_mean<std::complex<double>>(acc_b);
    consts.c(k) = pairwise_mean<double>(acc_c);
  }
  return consts;
}

MmSolveResult solve_mm(const std::vector<UtChannelStats>& stats, int num_samples,
                       const PrecoderMatrix& init, const SolveOptions& opts, RngStream rng) {
  if (init.total_power() > init.power_budget * (1.0 + 1e-9)) {
    throw std::invalid_argument("solve_mm: initial precoder exceeds the power budget");
  }
  const ChannelBatch batch = sample_channel(stats, num_samples, rng);
  const CMat g_all = stack_responses(stats);

  MmSolveResult result;
  result.precoder = init;
  result.trace.objective_per_iteration.push_back(
      ergodic_sum_rate(result.precoder, stats, batch).sum_rate);

  for (int n = 0; n < opts.max_iter; ++n) {
    const MmConstants consts = mm_constants(result.precoder, batch, stats);
    result.precoder = regularized_update(consts.a, consts.b, g_all, init.power_budget);
    const double objective = ergodic_sum_rate(result.precoder, stats, batch).sum_rate;
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
