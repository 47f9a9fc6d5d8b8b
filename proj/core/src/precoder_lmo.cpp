#include "satmimo/precoder_lmo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "satmimo/errors.hpp"

namespace satmimo {

namespace {

constexpr double kActivityThresholdRel = 1e-12;

void check_simplex(const Multipliers& lam, const char* where) {
  if (!(lam.budget > 0.0)) throw std::invalid_argument(std::string(where) + ": budget must be > 0");
  if ((lam.lambda.array() < 0.0).any()) {
    throw std::invalid_argument(std::string(where) + ": lambda must be nonnegative");
  }
}

RVec snr_weights(const std::vector<UtChannelStats>& stats) {
  RVec w(static_cast<Eigen::Index>(stats.size()));
  for (std::size_t k = 0; k < stats.size(); ++k) {
    w(static_cast<Eigen::Index>(k)) = stats[k].beta / stats[k].sigma2;
  }
  return w;
}

// I + sum_k rho_k g_k g_k^H, built as a rank-K update to stay Hermitian.
CMat regularized_gram(const CMat& g_all, const RVec& rho) {
  CMat b = CMat::Identity(g_all.rows(), g_all.rows());
  b.selfadjointView<Eigen::Lower>().rankUpdate(g_all * rho.cwiseSqrt().asDiagonal());
  return CMat(b.selfadjointView<Eigen::Lower>());
}

double log2_det_hermitian(const CMat& a) {
  Eigen::LLT<CMat> llt(a);
  if (llt.info() != Eigen::Success) {
    throw NumericError("log2_det_hermitian: factorization failed");
  }
  double acc = 0.0;
  const auto& l = llt.matrixLLT();
  for (Eigen::Index i = 0; i < l.rows(); ++i) acc += std::log2(std::real(l(i, i)));
  return 2.0 * acc;
}

}  // namespace

Multipliers uniform_multipliers(int num_uts, double power_budget) {
  Multipliers lam;
  lam.budget = power_budget;
  lam.lambda = RVec::Constant(num_uts, power_budget / static_cast<double>(num_uts));
  return lam;
}

RVec virtual_rates(const Multipliers& lam, const std::vector<UtChannelStats>& stats) {
  check_simplex(lam, "virtual_rates");
  const CMat g_all = stack_responses(stats);
  const RVec rho = lam.lambda.cwiseProduct(snr_weights(stats));
  const CMat gram = regularized_gram(g_all, rho);
  Eigen::LLT<CMat> llt(gram);
  if (llt.info() != Eigen::Success) throw NumericError("virtual_rates: factorization failed");
  const CMat solved = llt.solve(g_all);  // column k = B^{-1} g_k
  RVec rates(g_all.cols());
  for (Eigen::Index k = 0; k < g_all.cols(); ++k) {
    const double quad = std::real(g_all.col(k).dot(solved.col(k)));  // g_k^H B^{-1} g_k
    const double vmmse = 1.0 - rho(k) * quad;
    if (!(vmmse > 0.0)) throw NumericError("virtual_rates: VMMSE must be positive");
    rates(k) = -std::log2(vmmse);
  }
  return rates;
}

RVec virtual_rates_logdet(const Multipliers& lam, const std::vector<UtChannelStats>& stats) {
  check_simplex(lam, "virtual_rates_logdet");
  const CMat g_all = stack_responses(stats);
  const RVec rho = lam.lambda.cwiseProduct(snr_weights(stats));
  const CMat gram = regularized_gram(g_all, rho);
  const double full = log2_det_hermitian(gram);
  RVec rates(g_all.cols());
  for (Eigen::Index k = 0; k < g_all.cols(); ++k) {
    const CMat without_k =
        gram - rho(k) * (g_all.col(k) * g_all.col(k).adjoint());
    rates(k) = full - log2_det_hermitian(without_k);
  }
  return rates;
}

LmoConstants lmo_constants(const Multipliers& lam_n, const std::vector<UtChannelStats>& stats) {
  check_simplex(lam_n, "lmo_constants");
  const CMat g_all = stack_responses(stats);
  const Eigen::Index num_uts = g_all.cols();
  const RVec rho = lam_n.lambda.cwiseProduct(snr_weights(stats));
  const RVec sqrt_rho = rho.cwiseSqrt();

  const CMat gram = regularized_gram(g_all, rho);
  Eigen::LLT<CMat> llt(gram);
  if (llt.info() != Eigen::Success) throw NumericError("lmo_constants: factorization failed");
  const CMat receivers = llt.solve(g_all * sqrt_rho.asDiagonal());  // column k = u_k
  const CMat gu = g_all.adjoint() * receivers;                      // (i,k) = g_i^H u_k

  LmoConstants consts;
  consts.psi.resize(num_uts, num_uts);
  consts.psi_colsum.resize(num_uts);
  consts.chi.resize(num_uts);
  consts.delta.resize(num_uts);
  consts.rates.resize(num_uts);

  RVec vmmse(num_uts);
  for (Eigen::Index k = 0; k < num_uts; ++k) {
    vmmse(k) = 1.0 - sqrt_rho(k) * std::real(gu(k, k));
    if (!(vmmse(k) > 0.0)) {
      throw NumericError("lmo_constants: VMMSE must stay in (0, 1]");
    }
    consts.rates(k) = -std::log2(vmmse(k));
    consts.chi(k) = std::real(gu(k, k)) / vmmse(k);
    consts.delta(k) = (receivers.col(k).squaredNorm() + 1.0) / vmmse(k);
    for (Eigen::Index i = 0; i < num_uts; ++i) {
      consts.psi(k, i) = std::norm(gu(i, k)) / vmmse(k);
    }
  }
  for (Eigen::Index k = 0; k < num_uts; ++k) {
    consts.psi_colsum(k) = consts.psi.col(k).sum();
  }
  return consts;
}

Multipliers lmo_update(const LmoConstants& consts, const std::vector<UtChannelStats>& stats,
                       double power_budget) {
  const Eigen::Index num_uts = consts.chi.size();
  if (!(power_budget > 0.0)) throw std::invalid_argument("lmo_update: budget must be > 0");
  if (!consts.chi.allFinite() || !consts.psi_colsum.allFinite()) {
    throw std::invalid_argument("lmo_update: constants must be finite");
  }
  const RVec weights = snr_weights(stats);
  const RVec denom_base = consts.psi_colsum.cwiseProduct(weights);
  const RVec numer = consts.chi.array().square().matrix().cwiseProduct(weights);

  if (consts.chi.lpNorm<Eigen::Infinity>() == 0.0) {
    throw DegenerateDirectionError("lmo_update: all chi_k are zero");
  }

  // UTs with chi = 0 get lambda = 0 regardless of nu; the bracket lower end
  // only needs the remaining ones, where the total is unbounded as nu
  // approaches it.
  double nu_min = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < num_uts; ++k) {
    if (consts.chi(k) > 0.0) nu_min = std::min(nu_min, -denom_base(k));
  }

  const auto lambda_of = [&](double nu) {
    RVec lam = RVec::Zero(num_uts);
    for (Eigen::Index k = 0; k < num_uts; ++k) {
      if (consts.chi(k) > 0.0) {
        const double d = denom_base(k) + nu;
        lam(k) = numer(k) / (d * d);
      }
    }
    return lam;
  };

  double lo = nu_min + std::max(std::abs(nu_min), 1.0) * 1e-12;
  double hi = std::max(1.0, std::sqrt(numer.sum() / power_budget));
  while (lambda_of(hi).sum() >= power_budget) hi *= 2.0;

  RVec lam = lambda_of(hi);
  for (int iter = 0; iter < 300; ++iter) {
    const double mid = 0.5 * (lo + hi);
    lam = lambda_of(mid);
    const double total = lam.sum();
    if (std::abs(total - power_budget) <= 1e-13 * power_budget) break;
    if (total > power_budget) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= std::abs(hi) * 1e-18) break;
  }

  Multipliers out;
  out.budget = power_budget;
  out.lambda = std::move(lam);
  return out;
}

LmoSolveResult solve_lmo(const std::vector<UtChannelStats>& stats, const Multipliers& init,
                         const SolveOptions& opts) {
  check_simplex(init, "solve_lmo");
  if (std::abs(init.total() - init.budget) > 1e-9 * init.budget) {
    throw std::invalid_argument("solve_lmo: init must lie on the simplex");
  }

  LmoSolveResult result;
  result.multipliers = init;
  result.trace.objective_per_iteration.push_back(virtual_rates(init, stats).sum());

  for (int n = 0; n < opts.max_iter; ++n) {
    const LmoConstants consts = lmo_constants(result.multipliers, stats);
    result.multipliers = lmo_update(consts, stats, init.budget);
    const double objective = virtual_rates(result.multipliers, stats).sum();
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

RecoveryResult recover_precoders(const Multipliers& lam, const std::vector<UtChannelStats>& stats) {
  check_simplex(lam, "recover_precoders");
  const CMat g_all = stack_responses(stats);
  const Eigen::Index num_uts = g_all.cols();
  const RVec weights = snr_weights(stats);
  const RVec rho = lam.lambda.cwiseProduct(weights);

  const CMat gram = regularized_gram(g_all, rho);
  Eigen::LLT<CMat> llt(gram);
  if (llt.info() != Eigen::Success) throw NumericError("recover_precoders: factorization failed");
  const CMat directions = llt.solve(g_all);  // column k = B^{-1} g_k

  RecoveryResult out;
  out.details.w_bar.resize(g_all.rows(), num_uts);
  out.details.gamma = RVec::Zero(num_uts);
  for (Eigen::Index k = 0; k < num_uts; ++k) {
    out.details.w_bar.col(k) = directions.col(k) / directions.col(k).norm();
    const double vmmse = 1.0 - rho(k) * std::real(g_all.col(k).dot(directions.col(k)));
    if (!(vmmse > 0.0)) throw NumericError("recover_precoders: VMMSE must be positive");
    out.details.gamma(k) = 1.0 / vmmse - 1.0;
  }

  // Zero-power UTs are unserved: their gamma is zero and the coupling row of
  // the SINR-equality system would divide by zero, so they are excluded.
  const double threshold = kActivityThresholdRel * lam.budget;
  for (Eigen::Index k = 0; k < num_uts; ++k) {
    if (lam.lambda(k) >= threshold) out.details.active.push_back(static_cast<int>(k));
  }
  const Eigen::Index na = static_cast<Eigen::Index>(out.details.active.size());

  const RMat cross = (g_all.adjoint() * out.details.w_bar).cwiseAbs2();  // (k,i) = |g_k^H wbar_i|^2
  out.details.coupling.resize(na, na);
  for (Eigen::Index r = 0; r < na; ++r) {
    const int k = out.details.active[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < na; ++c) {
      const int i = out.details.active[static_cast<std::size_t>(c)];
      if (k == i) {
        out.details.coupling(r, c) = weights(k) / out.details.gamma(k) * cross(k, k);
      } else {
        out.details.coupling(r, c) = -weights(k) * cross(k, i);
      }
    }
  }

  RVec q_active(na);
  if (na > 0) {
    Eigen::FullPivLU<RMat> lu(out.details.coupling);
    if (!lu.isInvertible()) {
      throw RecoveryError("recover_precoders: coupling matrix is singular");
    }
    q_active = lu.solve(RVec::Ones(na));
    if ((q_active.array() < -1e-12 * lam.budget).any()) {
      throw RecoveryError("recover_precoders: coupling system produced negative power");
    }
  }

  out.details.q = RVec::Zero(num_uts);
  out.precoder.power_budget = lam.budget;
  out.precoder.columns = CMat::Zero(g_all.rows(), num_uts);
  for (Eigen::Index r = 0; r < na; ++r) {
    const int k = out.details.active[static_cast<std::size_t>(r)];
    const double q = std::max(q_active(r), 0.0);
    out.details.q(k) = q;
    out.precoder.columns.col(k) = out.details.w_bar.col(k) * std::sqrt(q);
  }
  return out;
}

Multipliers waterfilling(const std::vector<UtChannelStats>& stats, double power_budget) {
  if (!(power_budget > 0.0)) throw std::invalid_argument("waterfilling: budget must be > 0");
  const Eigen::Index num_uts = static_cast<Eigen::Index>(stats.size());
  RVec floor_level(num_uts);  // sigma_k^2 / beta_k
  for (Eigen::Index k = 0; k < num_uts; ++k) {
    floor_level(k) = stats[static_cast<std::size_t>(k)].sigma2 / stats[static_cast<std::size_t>(k)].beta;
  }
  std::vector<int> order(static_cast<std::size_t>(num_uts));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return floor_level(a) < floor_level(b); });

  Multipliers lam;
  lam.budget = power_budget;
  lam.lambda = RVec::Zero(num_uts);
  double prefix = 0.0;
  double level = 0.0;
  Eigen::Index active = 0;
  for (Eigen::Index n = 0; n < num_uts; ++n) {
    prefix += floor_level(order[static_cast<std::size_t>(n)]);
    const double candidate = (power_budget + prefix) / static_cast<double>(n + 1);
    // The largest prefix whose water level stays above every included floor.
    if (candidate > floor_level(order[static_cast<std::size_t>(n)])) {
      level = candidate;
      active = n + 1;
    }
  }
  for (Eigen::Index n = 0; n < active; ++n) {
    const int k = order[static_cast<std::size_t>(n)];
    lam.lambda(k) = level - floor_level(k);
  }
  return lam;
}

RateBounds rate_bounds(const Multipliers& lam, const std::vector<UtChannelStats>& stats) {
  check_simplex(lam, "rate_bounds");
  const CMat g_all = stack_responses(stats);
  const Eigen::Index num_uts = g_all.cols();
  const RVec rho = lam.lambda.cwiseProduct(snr_weights(stats));
  const RMat overlap = (g_all.adjoint() * g_all).cwiseAbs2();  // (i,k) = |g_i^H g_k|^2

  RateBounds bounds;
  bounds.lower.resize(num_uts);
  bounds.upper_sum = 0.0;
  for (Eigen::Index k = 0; k < num_uts; ++k) {
    double cross = 0.0;
    for (Eigen::Index i = 0; i < num_uts; ++i) {
      if (i != k) cross += rho(i) * overlap(i, k);
    }
    const double argument = 1.0 + rho(k) - rho(k) * cross;
    bounds.lower(k) = std::log2(std::max(argument, 1e-12));
    bounds.upper_sum += std::log2(1.0 + rho(k));
  }
  return bounds;
}

}  // namespace satmimo
