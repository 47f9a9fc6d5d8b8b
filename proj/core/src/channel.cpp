#include "satmimo/channel.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "satmimo/errors.hpp"

namespace satmimo {

namespace {
constexpr std::complex<double> kJ{0.0, 1.0};
}

CVec ula_response(int n, double spacing_wl, double phase_arg) {
  if (n < 1) throw std::invalid_argument("ula_response: n must be >= 1");
  CVec a(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) {
    const double phase = -2.0 * std::numbers::pi * spacing_wl * static_cast<double>(i) * phase_arg;
    a(i) = scale * std::exp(kJ * phase);
  }
  return a;
}

CVec upa_response(const UpaGeometry& geom, const SpaceAnglePair& p) {
  const double s = p.theta_x * p.theta_x + p.theta_y * p.theta_y;
  if (s > 1.0) throw std::domain_error("upa_response: space angle pair is not physical");
  const CVec ax = ula_response(geom.nx, geom.spacing_x_wl, p.theta_x);
  const CVec ay = ula_response(geom.ny, geom.spacing_y_wl, p.theta_y);
  CVec out(geom.nx * geom.ny);
  for (int i = 0; i < geom.nx; ++i) {
    out.segment(static_cast<Eigen::Index>(i) * geom.ny, geom.ny) = ax(i) * ay;
  }
  return out;
}

CMat build_sigma(SigmaModel model, int n, double rho) {
  if (n < 1) throw std::invalid_argument("build_sigma: n must be >= 1");
  if (model == SigmaModel::kUniform) {
    return CMat::Identity(n, n) / static_cast<double>(n);
  }
  if (!(rho >= 0.0) || rho >= 1.0) {
    throw std::invalid_argument("build_sigma: exp_corr requires 0 <= rho < 1");
  }
  CMat sigma(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      sigma(i, j) = std::pow(rho, std::abs(i - j));
    }
  }
  return sigma / static_cast<double>(n);  // trace of the Toeplitz core is n
}

CMat hermitian_sqrt_psd(const CMat& a, double psd_tol) {
  Eigen::SelfAdjointEigenSolver<CMat> eig(a);
  if (eig.info() != Eigen::Success) {
    throw NumericError("hermitian_sqrt_psd: eigendecomposition failed");
  }
  RVec ev = eig.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -psd_tol) {
      throw DataError("hermitian_sqrt_psd: matrix is not PSD (min eigenvalue " +
                      std::to_string(ev(i)) + ")");
    }
    ev(i) = std::sqrt(std::max(ev(i), 0.0));
  }
  return eig.eigenvectors() * ev.asDiagonal() * eig.eigenvectors().adjoint();
}

UtChannelStats make_ut_stats(double beta, double kappa, CVec g, CVec d0, CMat sigma_cov,
                             double sigma2) {
  if (!(beta > 0.0)) throw std::invalid_argument("make_ut_stats: beta must be > 0");
  if (!(kappa >= 0.0)) throw std::invalid_argument("make_ut_stats: kappa must be >= 0");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("make_ut_stats: sigma2 must be > 0");
  if (std::abs(g.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("make_ut_stats: g must have unit norm");
  }
  if (std::abs(d0.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("make_ut_stats: d0 must have unit norm");
  }
  if (sigma_cov.rows() != d0.size() || sigma_cov.cols() != d0.size()) {
    throw std::invalid_argument("make_ut_stats: sigma_cov must be N x N");
  }
  if (std::abs(sigma_cov.trace().real() - 1.0) > 1e-9 ||
      std::abs(sigma_cov.trace().imag()) > 1e-12) {
    throw std::invalid_argument("make_ut_stats: trace(sigma_cov) must equal 1");
  }
  UtChannelStats st;
  st.beta = beta;
  st.kappa = kappa;
  st.g = std::move(g);
  st.d0 = std::move(d0);
  st.sigma_cov = std::move(sigma_cov);
  st.sigma2 = sigma2;
  st.sigma_sqrt = hermitian_sqrt_psd(st.sigma_cov);
  return st;
}

ChannelBatch sample_channel(const std::vector<UtChannelStats>& stats, int num_samples,
                            RngStream rng) {
  if (num_samples < 1) throw std::invalid_argument("sample_channel: need at least one sample");
  const int num_uts = static_cast<int>(stats.size());
  ChannelBatch batch;
  batch.seed = rng.key();
  batch.draws.resize(static_cast<std::size_t>(num_uts));
  batch.norm_sq.resize(num_uts, num_samples);

  for (int k = 0; k < num_uts; ++k) {
    const UtChannelStats& st = stats[k];
    const int n = static_cast<int>(st.d0.size());
    const CMat sqrt_cov =
        st.sigma_sqrt.size() > 0 ? st.sigma_sqrt : hermitian_sqrt_psd(st.sigma_cov);
    const double los_amp = std::sqrt(st.kappa * st.beta / (st.kappa + 1.0));
    const double scatter_amp = std::sqrt(st.beta / (st.kappa + 1.0));
    CMat& d = batch.draws[static_cast<std::size_t>(k)];
    d.resize(n, num_samples);
    CVec w(n);
    for (int s = 0; s < num_samples; ++s) {
      RngStream sub = rng.substream(static_cast<std::uint64_t>(k) + 1,
                                    static_cast<std::uint64_t>(s) + 1);
      for (int i = 0; i < n; ++i) w(i) = sub.complex_normal();
      d.col(s) = los_amp * st.d0 + scatter_amp * (sqrt_cov * w);
      batch.norm_sq(k, s) = d.col(s).squaredNorm();
    }
  }
  return batch;
}

CVec mf_receiver(const CVec& d) { return d; }

CVec mmse_receiver(const PrecoderMatrix& w_all, int k, const CVec& g_k, const CVec& d_k,
                   double sigma2) {
  const CVec wh_g = w_all.columns.adjoint() * g_k;  // element i = w_i^H g_k
  const double interference = wh_g.squaredNorm() * d_k.squaredNorm();
  const std::complex<double> scale = std::conj(wh_g(k)) / (sigma2 + interference);
  return scale * d_k;
}

double instantaneous_sinr(const PrecoderMatrix& w_all, int k, const CVec& g_k, const CVec& d_k,
                          const CVec& c_k, double sigma2) {
  if (c_k.norm() == 0.0) throw std::invalid_argument("instantaneous_sinr: receiver must be nonzero");
  const CVec wh_g = w_all.columns.adjoint() * g_k;
  const double cd = std::norm(c_k.dot(d_k));  // |c_k^H d_k|^2
  const double sig = std::norm(wh_g(k)) * cd;
  double intf = 0.0;
  for (int i = 0; i < w_all.num_uts(); ++i) {
    if (i != k) intf += std::norm(wh_g(i)) * cd;
  }
  return sig / (intf + sigma2 * c_k.squaredNorm());
}

CMat stack_responses(const std::vector<UtChannelStats>& stats) {
  if (stats.empty()) throw std::invalid_argument("stack_responses: empty stats");
  const Eigen::Index m = stats.front().g.size();
  CMat g_all(m, static_cast<Eigen::Index>(stats.size()));
  for (std::size_t k = 0; k < stats.size(); ++k) {
    g_all.col(static_cast<Eigen::Index>(k)) = stats[k].g;
  }
  return g_all;
}

}  // namespace satmimo
